#include "gfusion/frames.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace gfusion {

FrameFamily::FrameFamily(Index ambient_dim, std::vector<FrameItem> items)
    : ambient_dim_(ambient_dim), items_(std::move(items)) {
  if (ambient_dim_ <= 0) throw Error(ErrorKind::InvalidValue, "family ambient dimension must be positive");
  if (items_.empty()) throw Error(ErrorKind::InvalidValue, "family must have at least one item");
  for (std::size_t j = 0; j < items_.size(); ++j) {
    const FrameItem& it = items_[j];
    const std::string at = " (item " + std::to_string(j) + ")";
    if (it.subspace.ambient_dim() != ambient_dim_) {
      throw Error(ErrorKind::DimensionMismatch, "subspace ambient dimension differs from family" + at, j);
    }
    if (it.lambda.cols() != ambient_dim_ || it.lambda.rows() <= 0) {
      throw Error(ErrorKind::DimensionMismatch, "lambda operator must map the ambient space" + at, j);
    }
    if (!all_finite(it.lambda)) throw Error(ErrorKind::InvalidValue, "non-finite lambda entries" + at, j);
    if (!(it.weight > 0.0) || !std::isfinite(it.weight)) {
      throw Error(ErrorKind::InvalidValue, "weights must be positive and finite" + at, j);
    }
  }
}

FrameFamily FrameFamily::scaled_weights(double c) const {
  std::vector<FrameItem> out = items_;
  for (FrameItem& it : out) it.weight *= c;
  return FrameFamily(ambient_dim_, std::move(out));
}

ControlPair::ControlPair(Operator t, Operator u, const Tolerances& tol)
    : t_(std::move(t)), u_(std::move(u)) {
  if (t_.rows() != t_.cols() || u_.rows() != u_.cols() || t_.rows() != u_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "control operators must be square and of equal size");
  }
  if (!all_finite(t_) || !all_finite(u_)) {
    throw Error(ErrorKind::InvalidValue, "control operators have non-finite entries");
  }
  if (!is_invertible(t_, tol) || !is_invertible(u_, tol)) {
    throw Error(ErrorKind::NotInvertible, "control operators must be invertible");
  }
}

ControlPair ControlPair::identity(Index n) {
  return ControlPair(Operator::Identity(n, n), Operator::Identity(n, n));
}

ControlPair ControlPair::scalar(Index n, Scalar alpha, Scalar beta) {
  return ControlPair(alpha * Operator::Identity(n, n), beta * Operator::Identity(n, n));
}

double BlockVector::squared_norm() const {
  double s = 0.0;
  for (const Vector& b : blocks) s += b.squaredNorm();
  return s;
}

namespace {

void require_compatible(const FrameFamily& fam, const ControlPair& cp) {
  if (cp.dim() != fam.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "control pair dimension differs from family ambient dimension");
  }
}

void require_vector(const FrameFamily& fam, const Vector& f) {
  if (f.size() != fam.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector dimension differs from family ambient dimension");
  }
}

std::vector<Operator> item_roots(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol) {
  std::vector<Operator> roots;
  roots.reserve(fam.size());
  for (std::size_t j = 0; j < fam.size(); ++j) {
    try {
      roots.push_back(positive_sqrt(cross_operator(fam, cp, j), tol));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotHermitian && e.kind() != ErrorKind::NotPSD) throw;
      throw Error(ErrorKind::NotPositive,
                  "controlled cross operator of item " + std::to_string(j) + " has no positive square root",
                  j);
    }
  }
  return roots;
}

}  // namespace

Operator cross_operator(const FrameFamily& fam, const ControlPair& cp, std::size_t j) {
  require_compatible(fam, cp);
  const FrameItem& it = fam[j];
  const Operator p = projector(it.subspace);
  const Operator lp = it.lambda * p;
  return cp.t().adjoint() * lp.adjoint() * lp * cp.u();
}

Scalar frame_sum(const FrameFamily& fam, const ControlPair& cp, const Vector& f) {
  require_compatible(fam, cp);
  require_vector(fam, f);
  const Vector uf = cp.u() * f;
  const Vector tf = cp.t() * f;
  Scalar sum{0.0, 0.0};
  for (const FrameItem& it : fam.items()) {
    const Operator p = projector(it.subspace);
    const Vector x = it.lambda * (p * uf);
    const Vector y = it.lambda * (p * tf);
    sum += it.weight * it.weight * y.dot(x);
  }
  return sum;
}

Operator frame_operator(const FrameFamily& fam, const ControlPair& cp) {
  require_compatible(fam, cp);
  Operator s = Operator::Zero(fam.ambient_dim(), fam.ambient_dim());
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const double w = fam[j].weight;
    s += (w * w) * cross_operator(fam, cp, j);
  }
  return s;
}

BlockVector analysis(const FrameFamily& fam, const ControlPair& cp, const Vector& f, const Tolerances& tol) {
  require_compatible(fam, cp);
  require_vector(fam, f);
  const std::vector<Operator> roots = item_roots(fam, cp, tol);
  BlockVector out;
  out.blocks.reserve(fam.size());
  for (std::size_t j = 0; j < fam.size(); ++j) out.blocks.push_back(fam[j].weight * (roots[j] * f));
  return out;
}

SynthesisResult synthesis(const FrameFamily& fam, const ControlPair& cp, const BlockVector& g,
                          const std::optional<Vector>& f_hint, const Tolerances& tol) {
  require_compatible(fam, cp);
  if (g.blocks.size() != fam.size()) {
    throw Error(ErrorKind::DimensionMismatch, "block vector length differs from family size");
  }
  for (const Vector& b : g.blocks) {
    if (b.size() != fam.ambient_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "coefficient blocks must live in the ambient space");
    }
  }
  const std::vector<Operator> roots = item_roots(fam, cp, tol);
  SynthesisResult out;
  out.value = Vector::Zero(fam.ambient_dim());
  for (std::size_t j = 0; j < fam.size(); ++j) {
    out.value += fam[j].weight * (roots[j].adjoint() * g.blocks[j]);
  }
  if (f_hint) {
    require_vector(fam, *f_hint);
    double diff = 0.0;
    double scale = g.squared_norm();
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const Vector a = fam[j].weight * (roots[j] * *f_hint);
      diff += (a - g.blocks[j]).squaredNorm();
      scale = std::max(scale, a.squaredNorm());
    }
    out.range_certified = std::sqrt(diff) <= tol.factor * std::sqrt(scale);
  }
  return out;
}

Operator synthesis_matrix(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol) {
  require_compatible(fam, cp);
  const Index n = fam.ambient_dim();
  const std::vector<Operator> roots = item_roots(fam, cp, tol);
  Operator tc(n, n * static_cast<Index>(fam.size()));
  for (std::size_t j = 0; j < fam.size(); ++j) {
    tc.middleCols(static_cast<Index>(j) * n, n) = fam[j].weight * roots[j].adjoint();
  }
  return tc;
}

FrameReport controlled_frame_bounds(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol) {
  FrameReport rep;
  rep.s_c = frame_operator(fam, cp);
  rep.herm_residual = hermitian_residual(rep.s_c);
  rep.is_bessel = rep.herm_residual <= tol.bessel;
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(rep.s_c), Eigen::EigenvaluesOnly);
  rep.bounds = {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
  rep.is_frame = rep.is_bessel && rep.bounds.lambda_min > tol.psd * rep.bounds.lambda_max &&
                 rep.bounds.lambda_min > 0.0;
  return rep;
}

namespace {

KgfBounds kgf_from_report(const FrameReport& rep, const Operator& k, const Tolerances& tol) {
  if (rep.herm_residual > tol.bessel) {
    throw Error(ErrorKind::NotHermitian,
                "frame operator hermitian residual " + std::to_string(rep.herm_residual) + " too large");
  }
  if (k.rows() != rep.s_c.rows() || k.cols() != rep.s_c.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "K must be a square operator on the ambient space");
  }
  KgfBounds out;
  out.b = rep.bounds.lambda_max;
  if (op_norm(k) == 0.0) {
    out.a_opt = std::numeric_limits<double>::infinity();
    out.is_kgf = rep.is_bessel;
    return out;
  }
  out.a_opt = gen_rayleigh_min(hermitian_part(rep.s_c), k * k.adjoint(), tol);
  out.is_kgf = rep.is_bessel && out.a_opt > 0.0 && out.a_opt > tol.psd * out.b;
  return out;
}

}  // namespace

KgfBounds kgf_bounds(const FrameFamily& fam, const ControlPair& cp, const Operator& k, const Tolerances& tol) {
  return kgf_from_report(controlled_frame_bounds(fam, cp, tol), k, tol);
}

AtomicReport atomic_check(const FrameFamily& fam, const ControlPair& cp, const Operator& k,
                          const Tolerances& tol) {
  const FrameReport frame = controlled_frame_bounds(fam, cp, tol);
  AtomicReport rep;
  rep.kgf = kgf_from_report(frame, k, tol);
  rep.bessel_bound = rep.kgf.b;
  rep.lower_bound = rep.kgf.a_opt;
  rep.literal_residual = relative_difference(k, frame.s_c);

  std::optional<Operator> tc;
  try {
    tc = synthesis_matrix(fam, cp, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositive) throw;
    rep.square_root_form = false;
    try {
      tc = positive_sqrt(hermitian_part(frame.s_c), tol);
    } catch (const Error& inner) {
      if (inner.kind() != ErrorKind::NotPSD) throw;
    }
  }
  if (!tc) {
    rep.coefficient_map = Operator::Zero(k.rows(), k.cols());
    rep.coefficient_residual = 1.0;
    return rep;
  }

  // The rank of T_C is judged at the same relative level at which S_C = T_C T_C*
  // counts an eigenvalue as positive.
  Tolerances range_tol = tol;
  range_tol.rank = std::sqrt(tol.psd);
  try {
    const DouglasFactor d = douglas_factor(k, *tc, range_tol);
    rep.coefficient_map = d.w;
    rep.coefficient_residual = d.residual;
    rep.coefficient_norm_bound = d.lambda;
    rep.range_contained = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RangeNotContained) throw;
    rep.coefficient_map = pinv(*tc, range_tol) * k;
    rep.coefficient_residual = op_norm(*tc * rep.coefficient_map - k) / op_norm(k);
    rep.coefficient_norm_bound = op_norm(rep.coefficient_map);
    rep.range_contained = false;
  }
  rep.is_atomic = frame.is_bessel && rep.range_contained;
  return rep;
}

FrameOperatorAtomicity atomic_wrt_frame_operator(const FrameFamily& fam, const ControlPair& cp,
                                                 const Tolerances& tol) {
  FrameOperatorAtomicity out;
  const Operator s = frame_operator(fam, cp);
  out.report = atomic_check(fam, cp, s, tol);
  if (op_norm(s) > 0.0) {
    const Operator sh = hermitian_part(s);
    out.alpha_opt = gen_rayleigh_min(sh, sh * sh, tol);
  }
  return out;
}

CombinationAtomicity linear_combination_atomic(const FrameFamily& fam, const ControlPair& cp,
                                               const Operator& k1, const Operator& k2, Scalar alpha,
                                               Scalar beta, const Tolerances& tol) {
  CombinationAtomicity out;
  out.combination = atomic_check(fam, cp, alpha * k1 + beta * k2, tol);
  out.product = atomic_check(fam, cp, k1 * k2, tol);
  out.both_atomic = out.combination.is_atomic && out.product.is_atomic;
  return out;
}

}  // namespace gfusion
