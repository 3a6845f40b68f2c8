#include "gfusion/pair_resolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfusion/random_instance.hpp"

namespace gfusion {

namespace {

double herm_min(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double herm_max(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Operator square_control(const Operator& c, Index n, const char* what) {
  if (c.rows() != n || c.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square on the ambient space");
  }
  return c;
}

// (c, c)-controlled frame operator of a family.
Operator self_controlled(const FrameFamily& fam, const Operator& c) {
  return frame_operator(fam, ControlPair(c, c));
}

}  // namespace

ResolutionReport resolution_report(const std::vector<Operator>& terms, const Tolerances& tol) {
  ResolutionReport rep;
  rep.term_count = terms.size();
  if (terms.empty()) {
    rep.residual = 1.0;
    return rep;
  }
  const Index n = terms.front().rows();
  Operator sum = Operator::Zero(n, n);
  for (const Operator& t : terms) sum += t;
  rep.residual = (sum - Operator::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n));
  rep.converged = rep.residual <= tol.resolution;
  return rep;
}

PairOperator pair_frame_operator(const FrameFamily& fam_l, const Operator& t, const FrameFamily& fam_g,
                                 const Operator& u) {
  if (fam_l.size() != fam_g.size()) {
    throw Error(ErrorKind::ItemCountMismatch, "pair families have " + std::to_string(fam_l.size()) + " and " +
                                                  std::to_string(fam_g.size()) + " items");
  }
  const Index n = fam_l.ambient_dim();
  if (fam_g.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "pair families act on different spaces");
  square_control(t, n, "T");
  square_control(u, n, "U");
  Operator s = Operator::Zero(n, n);
  for (std::size_t j = 0; j < fam_l.size(); ++j) {
    if (fam_l[j].lambda.rows() != fam_g[j].lambda.rows()) {
      throw Error(ErrorKind::CodomainMismatch, "component spaces differ at item " + std::to_string(j), j);
    }
    const Operator left = fam_l[j].lambda * projector(fam_l[j].subspace) * t;
    const Operator right = fam_g[j].lambda * projector(fam_g[j].subspace) * u;
    s += (fam_l[j].weight * fam_g[j].weight) * (left.adjoint() * right);
  }
  return {s, fam_l, fam_g, t, u};
}

CanonicalResolutions canonical_resolutions(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol) {
  const Operator s = frame_operator(fam, cp);
  if (!is_invertible(s, tol)) throw Error(ErrorKind::NotAFrame, "frame operator is not invertible");
  const Operator s_inv = s.inverse();
  CanonicalResolutions out;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const double w2 = fam[j].weight * fam[j].weight;
    const Operator m = w2 * cross_operator(fam, cp, j);
    out.right_inverse_terms.push_back(m * s_inv);
    out.left_inverse_terms.push_back(s_inv * m);
  }
  out.right_inverse = resolution_report(out.right_inverse_terms, tol);
  out.left_inverse = resolution_report(out.left_inverse_terms, tol);
  return out;
}

InverseResolutionReport inverse_resolution_check(const FrameFamily& fam, const ControlPair& cp,
                                                 const Tolerances& tol) {
  const FrameReport frame = controlled_frame_bounds(fam, cp, tol);
  if (!is_invertible(frame.s_c, tol)) throw Error(ErrorKind::NotAFrame, "frame operator is not invertible");
  const Operator s_inv = frame.s_c.inverse();
  const Index n = fam.ambient_dim();

  InverseResolutionReport rep;
  const double scale = op_norm(s_inv);
  rep.commute_t_residual = op_norm(s_inv * cp.t() - cp.t() * s_inv) / (scale * op_norm(cp.t()));
  rep.commute_u_residual = op_norm(s_inv * cp.u() - cp.u() * s_inv) / (scale * op_norm(cp.u()));
  rep.certified = rep.commute_t_residual <= tol.commute && rep.commute_u_residual <= tol.commute;

  rep.modified_sum = Operator::Zero(n, n);
  std::vector<Operator> terms;
  for (const FrameItem& it : fam.items()) {
    const double w2 = it.weight * it.weight;
    const Operator lp = it.lambda * projector(it.subspace);
    const Operator tj = lp * s_inv;
    const Operator a = tj * cp.t();
    const Operator b = tj * cp.u();
    rep.modified_sum += w2 * (a.adjoint() * b);
    terms.push_back(w2 * (cp.t().adjoint() * lp.adjoint() * tj * cp.u()));
  }
  rep.resolution = resolution_report(terms, tol);

  rep.frame_lower = frame.bounds.lambda_min;
  rep.frame_upper = frame.bounds.lambda_max;
  rep.claimed_lower = rep.frame_lower / (rep.frame_upper * rep.frame_upper);
  rep.claimed_upper = rep.frame_upper / (rep.frame_lower * rep.frame_lower);
  rep.measured_lower = herm_min(rep.modified_sum);
  rep.measured_upper = herm_max(rep.modified_sum);
  const double mn = op_norm(rep.modified_sum);
  rep.imaginary_residual = mn == 0.0 ? 0.0 : op_norm(rep.modified_sum - hermitian_part(rep.modified_sum)) / mn;
  rep.sandwich_holds = rep.measured_lower >= rep.claimed_lower - tol.resolution &&
                       rep.measured_upper <= rep.claimed_upper + tol.resolution;
  return rep;
}

ResolutionFrameReport resolution_frame_check(const FrameFamily& fam, const Operator& t, const Operator& u,
                                             const Tolerances& tol) {
  const Index n = fam.ambient_dim();
  square_control(t, n, "T");
  square_control(u, n, "U");
  const Operator stt = self_controlled(fam, t);
  if (hermitian_residual(stt) > tol.bessel) {
    throw Error(ErrorKind::NotBessel, "(T, T) frame operator is not Hermitian");
  }
  ResolutionFrameReport rep;
  rep.bessel_bound = herm_max(stt);

  std::vector<Operator> terms;
  for (const FrameItem& it : fam.items()) {
    const Operator lp = it.lambda * projector(it.subspace);
    terms.push_back((it.weight * it.weight) * (t.adjoint() * lp.adjoint() * lp * u));
  }
  const ResolutionReport res = resolution_report(terms, tol);
  rep.resolution_residual = res.residual;
  if (!res.converged) {
    throw Error(ErrorKind::ResolutionFailed,
                "mixed terms do not resolve the identity (residual " + std::to_string(res.residual) + ")");
  }
  if (!(rep.bessel_bound > 0.0)) throw Error(ErrorKind::NotBessel, "(T, T) Bessel bound is zero");

  const Operator suu = self_controlled(fam, u);
  rep.measured_lower = herm_min(suu);
  rep.measured_upper = herm_max(suu);
  rep.predicted_lower = 1.0 / rep.bessel_bound;
  const double ti = op_norm(t.inverse());
  const double un = op_norm(u);
  rep.predicted_upper = rep.bessel_bound * ti * ti * un * un;
  rep.is_frame = rep.measured_lower > tol.psd * rep.measured_upper;
  rep.bounds_hold = rep.measured_lower >= rep.predicted_lower - tol.resolution &&
                    rep.measured_upper <= rep.predicted_upper + tol.resolution;
  return rep;
}

CoercivePairReport coercive_pair_check(const PairOperator& pair, std::optional<double> bessel_bound,
                                       const Tolerances& tol) {
  CoercivePairReport rep;
  rep.m = herm_min(pair.matrix.adjoint());
  if (!(rep.m > tol.psd * std::max(op_norm(pair.matrix), 1.0))) {
    throw Error(ErrorKind::NotPositive, "swapped pair operator is not coercive (m = " + std::to_string(rep.m) + ")");
  }
  rep.right_bessel_bound =
      bessel_bound ? *bessel_bound : herm_max(self_controlled(pair.right_family, pair.right_control));
  if (!(rep.right_bessel_bound > 0.0)) throw Error(ErrorKind::InvalidParameters, "Bessel bound must be positive");
  rep.predicted_lower = rep.m * rep.m / rep.right_bessel_bound;
  const Operator stt = self_controlled(pair.left_family, pair.left_control);
  rep.measured_lower = herm_min(stt);
  rep.is_frame = rep.measured_lower > tol.psd * herm_max(stt);
  rep.bound_holds = rep.measured_lower >= rep.predicted_lower - tol.resolution;
  return rep;
}

PerturbationReport perturbation_check(const PairOperator& pair, double lambda1, double lambda2, double d1,
                                      double d2, int trials, std::uint64_t seed, const Tolerances& tol) {
  if (!(lambda1 < 1.0) || !(lambda2 > -1.0) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
    throw Error(ErrorKind::InvalidParameters, "need lambda1 < 1 and lambda2 > -1");
  }
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error(ErrorKind::InvalidParameters, "Bessel bounds must be positive");
  if (trials < 1) throw Error(ErrorKind::InvalidParameters, "trials must be positive");

  const Operator& s = pair.matrix;
  const Index n = s.rows();
  const Operator defect = Operator::Identity(n, n) - s;
  Eigen::JacobiSVD<Operator> svd_s(s);
  const double smax = svd_s.singularValues()(0);
  const double smin = svd_s.singularValues()(n - 1);

  PerturbationReport rep;
  rep.spectral_lhs = op_norm(defect);
  rep.spectral_rhs = lambda1 + lambda2 * (lambda2 >= 0.0 ? smin : smax);
  rep.spectral_certified = rep.spectral_lhs <= rep.spectral_rhs + tol.resolution;

  Rng rng(seed);
  rep.samples = trials;
  rep.worst_sample_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const Vector f = rng.unit_vector(n);
    const double lhs = (defect * f).norm();
    const double rhs = lambda1 + lambda2 * (s * f).norm();
    rep.worst_sample_margin = std::min(rep.worst_sample_margin, rhs - lhs);
  }
  if (rep.worst_sample_margin < -tol.resolution) {
    throw Error(ErrorKind::HypothesisFailed,
                "sampled vector violates the perturbation inequality (margin " +
                    std::to_string(rep.worst_sample_margin) + ")");
  }

  const Operator sll = self_controlled(pair.left_family, pair.left_control);
  const Operator sgg = self_controlled(pair.right_family, pair.right_control);
  rep.bessel_bounds_valid = herm_max(sll) <= d1 * (1.0 + tol.resolution) && herm_max(sgg) <= d2 * (1.0 + tol.resolution);

  const double q = (1.0 - lambda1) / (1.0 + lambda2);
  rep.predicted_lower_right = q * q / d1;
  rep.measured_lower_right = herm_min(sgg);
  bool ok = rep.measured_lower_right >= rep.predicted_lower_right - tol.resolution;
  if (lambda2 == 0.0 && lambda1 >= 0.0) {
    rep.predicted_lower_left = (1.0 - lambda1) * (1.0 - lambda1) / d2;
    rep.measured_lower_left = herm_min(sll);
    ok = ok && *rep.measured_lower_left >= *rep.predicted_lower_left - tol.resolution;
  }
  rep.holds = rep.spectral_certified && rep.bessel_bounds_valid && ok;
  return rep;
}

}  // namespace gfusion
