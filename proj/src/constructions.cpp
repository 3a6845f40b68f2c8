#include "gfusion/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gfusion/random_instance.hpp"

namespace gfusion {

namespace {

constexpr std::uint64_t kSampleSeed = 0x5EEDC0DEULL;
constexpr int kSampleVectors = 20;

// ||ab - ba|| / (||a|| ||b||); zero if either factor vanishes.
double commutator_residual(const Operator& a, const Operator& b) {
  const double scale = op_norm(a) * op_norm(b);
  if (scale == 0.0) return 0.0;
  return op_norm(a * b - b * a) / scale;
}

Certificate certify(std::string name, double residual, double limit) {
  return {std::move(name), residual, residual <= limit};
}

bool all_pass(const std::vector<Certificate>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Certificate& c) { return c.passed; });
}

void require_same_layout(const FrameFamily& a, const FrameFamily& b, bool same_subspaces,
                         const Tolerances& tol) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ItemCountMismatch, "families have " + std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()) + " items");
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double wa = a[j].weight;
    const double wb = b[j].weight;
    if (std::abs(wa - wb) > 1e-12 * std::max(wa, wb)) {
      throw Error(ErrorKind::WeightMismatch, "weights differ at item " + std::to_string(j), j);
    }
    if (same_subspaces) {
      if (a[j].subspace.ambient_dim() != b[j].subspace.ambient_dim() ||
          relative_difference(projector(a[j].subspace), projector(b[j].subspace)) > 1e2 * tol.orth) {
        throw Error(ErrorKind::SubspaceMismatch, "subspaces differ at item " + std::to_string(j), j);
      }
    }
  }
}

// Fills the measured fields from kgf_bounds on the output; a non-Hermitian
// output frame operator leaves them undefined (NaN).
void measure(TransformReport& rep, const Tolerances& tol) {
  try {
    const KgfBounds kb = kgf_bounds(rep.family_out, rep.control_out, rep.k_out, tol);
    rep.measured_lower = kb.a_opt;
    rep.measured_upper = kb.b;
    rep.measured_is_kgf = kb.is_kgf;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotHermitian) throw;
    rep.measured_lower = std::numeric_limits<double>::quiet_NaN();
    rep.measured_upper = std::numeric_limits<double>::quiet_NaN();
    rep.measured_is_kgf = false;
  }
}

double inverse_norm(const Operator& a) { return op_norm(a.inverse()); }

double k_lower(const FrameFamily& fam, const ControlPair& cp, const Operator& k, const Tolerances& tol) {
  return kgf_bounds(fam, cp, k, tol).a_opt;
}

double bessel(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol) {
  return controlled_frame_bounds(fam, cp, tol).bounds.lambda_max;
}

// Largest relative size of the sesquilinear form f -> <b f, a f>, measured
// both as the operator a* b (exact for complex scalars) and on sampled f.
double cross_form_residual(const Operator& a, const Operator& b, Rng& rng) {
  const double scale = op_norm(a) * op_norm(b);
  if (scale == 0.0) return 0.0;
  double r = op_norm(a.adjoint() * b) / scale;
  for (int s = 0; s < kSampleVectors; ++s) {
    const Vector f = rng.unit_vector(a.cols());
    r = std::max(r, std::abs((a * f).dot(b * f)) / scale);
  }
  return r;
}

}  // namespace

TransformReport sum_transform(const FrameFamily& fam_l, const FrameFamily& fam_g, const Operator& v,
                              const Operator& w, const ControlPair& cp, const Operator& k,
                              const Tolerances& tol) {
  require_same_layout(fam_l, fam_g, true, tol);
  const Index n = fam_l.ambient_dim();
  if (fam_g.ambient_dim() != n || v.rows() != n || v.cols() != n || w.rows() != n || w.cols() != n ||
      k.rows() != n || k.cols() != n || cp.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "sum_transform: operands must act on the same space");
  }
  for (std::size_t j = 0; j < fam_l.size(); ++j) {
    if (fam_l[j].lambda.rows() != fam_g[j].lambda.rows()) {
      throw Error(ErrorKind::CodomainMismatch, "codomains differ at item " + std::to_string(j), j);
    }
  }
  const Operator r = v + w;
  if (!is_invertible(r, tol)) throw Error(ErrorKind::NotInvertible, "V + W is not invertible");
  const Operator rs = r.adjoint();

  std::vector<FrameItem> items;
  Rng rng(kSampleSeed);
  double cross_1 = 0.0;
  double cross_2 = 0.0;
  for (std::size_t j = 0; j < fam_l.size(); ++j) {
    const Operator p = projector(fam_l[j].subspace);
    const Operator lp = fam_l[j].lambda * p * rs;
    const Operator gp = fam_g[j].lambda * p * rs;
    // <Gamma P R* U f, Lambda P R* T f> and <Lambda P R* U f, Gamma P R* T f>
    cross_1 = std::max(cross_1, cross_form_residual(lp * cp.t(), gp * cp.u(), rng));
    cross_2 = std::max(cross_2, cross_form_residual(gp * cp.t(), lp * cp.u(), rng));
    items.push_back({subspace_image(r, fam_l[j].subspace, tol), (fam_l[j].lambda + fam_g[j].lambda) * p * rs,
                     fam_l[j].weight});
  }

  TransformReport rep{FrameFamily(n, std::move(items)), cp, k};
  rep.hypothesis_certificates = {
      certify("k_commutes_with_sum", commutator_residual(k, r), tol.commute),
      certify("sum_adjoint_commutes_with_t", commutator_residual(rs, cp.t()), tol.commute),
      certify("sum_adjoint_commutes_with_u", commutator_residual(rs, cp.u()), tol.commute),
      certify("cross_term_gamma_lambda", cross_1, tol.commute),
      certify("cross_term_lambda_gamma", cross_2, tol.commute),
  };
  rep.hypotheses_hold = all_pass(rep.hypothesis_certificates);

  const double a_l = k_lower(fam_l, cp, k, tol);
  const double inv = inverse_norm(r);
  rep.predicted_lower = std::isinf(a_l) ? a_l : a_l / (inv * inv);
  const double rn = op_norm(r);
  rep.predicted_upper = (bessel(fam_l, cp, tol) + bessel(fam_g, cp, tol)) * rn * rn;

  const Operator closed = r * (frame_operator(fam_l, cp) + frame_operator(fam_g, cp)) * rs;
  rep.operator_identity_residual = relative_difference(frame_operator(rep.family_out, cp), closed);
  measure(rep, tol);
  return rep;
}

namespace {

std::vector<FrameItem> direct_sum_items(const FrameFamily& fam_h, const FrameFamily& fam_x) {
  std::vector<FrameItem> items;
  for (std::size_t j = 0; j < fam_h.size(); ++j) {
    items.push_back({dsum_subspace(fam_h[j].subspace, fam_x[j].subspace), dsum_op(fam_h[j].lambda, fam_x[j].lambda),
                     fam_h[j].weight});
  }
  return items;
}

ControlPair direct_sum_control(const ControlPair& cp_h, const ControlPair& cp_x, const Tolerances& tol) {
  return ControlPair(dsum_op(cp_h.t(), cp_x.t()), dsum_op(cp_h.u(), cp_x.u()), tol);
}

void require_k(const Operator& k, Index n, const char* what) {
  if (k.rows() != n || k.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square on its space");
  }
}

}  // namespace

TransformReport direct_sum_frame(const FrameFamily& fam_h, const ControlPair& cp_h, const Operator& k_h,
                                 const FrameFamily& fam_x, const ControlPair& cp_x, const Operator& k_x,
                                 const Tolerances& tol) {
  require_same_layout(fam_h, fam_x, false, tol);
  require_k(k_h, fam_h.ambient_dim(), "K on H");
  require_k(k_x, fam_x.ambient_dim(), "K on X");
  const Index n = fam_h.ambient_dim() + fam_x.ambient_dim();
  TransformReport rep{FrameFamily(n, direct_sum_items(fam_h, fam_x)), direct_sum_control(cp_h, cp_x, tol),
                      dsum_op(k_h, k_x)};
  rep.hypotheses_hold = true;
  rep.predicted_lower = std::min(k_lower(fam_h, cp_h, k_h, tol), k_lower(fam_x, cp_x, k_x, tol));
  rep.predicted_upper = std::max(bessel(fam_h, cp_h, tol), bessel(fam_x, cp_x, tol));
  rep.operator_identity_residual = relative_difference(frame_operator(rep.family_out, rep.control_out),
                                                       dsum_op(frame_operator(fam_h, cp_h), frame_operator(fam_x, cp_x)));
  measure(rep, tol);
  return rep;
}

TransformReport conjugate_transform(const FrameFamily& fam_h, const ControlPair& cp_h, const Operator& k_h,
                                    const FrameFamily& fam_x, const ControlPair& cp_x, const Operator& k_x,
                                    const Operator& w, const Operator& v, const Tolerances& tol) {
  require_same_layout(fam_h, fam_x, false, tol);
  const Index nh = fam_h.ambient_dim();
  const Index nx = fam_x.ambient_dim();
  require_k(k_h, nh, "K on H");
  require_k(k_x, nx, "K on X");
  require_k(w, nh, "W");
  require_k(v, nx, "V");
  if (!is_invertible(w, tol)) throw Error(ErrorKind::NotInvertible, "W is not invertible");
  if (!is_invertible(v, tol)) throw Error(ErrorKind::NotInvertible, "V is not invertible");

  const Operator wv = dsum_op(w, v);
  const Operator wv_star = wv.adjoint();
  std::vector<FrameItem> items;
  for (FrameItem& it : direct_sum_items(fam_h, fam_x)) {
    const Operator p = projector(it.subspace);
    items.push_back({subspace_image(wv, it.subspace, tol), it.lambda * p * wv_star, it.weight});
  }
  TransformReport rep{FrameFamily(nh + nx, std::move(items)), direct_sum_control(cp_h, cp_x, tol),
                      dsum_op(k_h, k_x)};
  const Operator ws = w.adjoint();
  const Operator vs = v.adjoint();
  rep.hypothesis_certificates = {
      certify("w_adjoint_commutes_with_t", commutator_residual(ws, cp_h.t()), tol.commute),
      certify("w_adjoint_commutes_with_t1", commutator_residual(ws, cp_h.u()), tol.commute),
      certify("v_adjoint_commutes_with_u", commutator_residual(vs, cp_x.t()), tol.commute),
      certify("v_adjoint_commutes_with_u1", commutator_residual(vs, cp_x.u()), tol.commute),
      certify("k_h_commutes_with_w", commutator_residual(k_h, w), tol.commute),
      certify("k_x_commutes_with_v", commutator_residual(k_x, v), tol.commute),
  };
  rep.hypotheses_hold = all_pass(rep.hypothesis_certificates);

  const double wi = inverse_norm(w);
  const double vi = inverse_norm(v);
  const double a1 = k_lower(fam_h, cp_h, k_h, tol);
  const double a2 = k_lower(fam_x, cp_x, k_x, tol);
  rep.predicted_lower = std::min(std::isinf(a1) ? a1 : a1 / (wi * wi), std::isinf(a2) ? a2 : a2 / (vi * vi));
  const double wn = op_norm(w);
  const double vn = op_norm(v);
  rep.predicted_upper = std::max(bessel(fam_h, cp_h, tol) * wn * wn, bessel(fam_x, cp_x, tol) * vn * vn);

  const Operator closed = wv * dsum_op(frame_operator(fam_h, cp_h), frame_operator(fam_x, cp_x)) * wv_star;
  rep.operator_identity_residual = relative_difference(frame_operator(rep.family_out, rep.control_out), closed);
  measure(rep, tol);
  return rep;
}

}  // namespace gfusion
