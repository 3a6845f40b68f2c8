#include "gfusion/fourier.hpp"

#include <cmath>
#include <limits>

#include "gfusion/random_instance.hpp"

namespace gfusion {

void FourierParams::validate() const {
  if (n_max < 1) throw Error(ErrorKind::InvalidParameters, "n_max must be at least 1");
  if (m < 1 || m > n_max) throw Error(ErrorKind::InvalidParameters, "m must lie in [1, n_max]");
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidParameters, "alpha and beta must be positive");
  }
  if (alpha * beta > 1.0) throw Error(ErrorKind::InvalidParameters, "alpha * beta must not exceed 1");
}

Index fourier_index(const FourierParams& p, int n) { return static_cast<Index>(n + p.n_max); }

FourierInstance build_fourier_example(const FourierParams& p) {
  p.validate();
  const Index dim = 2 * static_cast<Index>(p.n_max) + 1;
  Operator partial = Operator::Zero(dim, dim);
  for (int k = 1; k <= p.m; ++k) partial(fourier_index(p, k), fourier_index(p, k)) = 1.0;

  std::vector<FrameItem> items;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    Operator e = Operator::Zero(dim, 1);
    e(fourier_index(p, n), 0) = 1.0;
    Operator lambda = n == 1 ? partial : Operator::Zero(dim, dim);
    items.push_back({Subspace(dim, e), std::move(lambda), 1.0});
  }
  Operator k = Operator::Zero(dim, dim);
  k(fourier_index(p, 1), fourier_index(p, 1)) = 1.0;
  k(fourier_index(p, 2), fourier_index(p, 2)) = 1.0;
  return {FrameFamily(dim, std::move(items)), ControlPair::scalar(dim, p.alpha, p.beta), k};
}

FourierReport verify_fourier(const FourierParams& p, int trials, std::uint64_t seed, const Tolerances& tol) {
  if (trials < 1) throw Error(ErrorKind::InvalidParameters, "trials must be positive");
  const FourierInstance inst = build_fourier_example(p);
  FourierReport rep;
  rep.frame = controlled_frame_bounds(inst.family, inst.control, tol);
  rep.kgf = kgf_bounds(inst.family, inst.control, inst.k, tol);
  rep.alpha_beta = p.alpha * p.beta;
  rep.lower_claim_holds = rep.kgf.a_opt >= rep.alpha_beta - 1e-9;
  rep.upper_claim_holds = rep.kgf.b <= 1.0 + 1e-9;

  Rng rng(seed);
  rep.trials = trials;
  rep.worst_lower_margin = std::numeric_limits<double>::infinity();
  rep.worst_upper_margin = std::numeric_limits<double>::infinity();
  const Index dim = inst.family.ambient_dim();
  for (int i = 0; i < trials; ++i) {
    const Vector x = rng.unit_vector(dim);
    const double sum = frame_sum(inst.family, inst.control, x).real();
    const double kx = (inst.k.adjoint() * x).squaredNorm();
    const double lower = sum - rep.alpha_beta * kx;
    const double upper = x.squaredNorm() - sum;
    rep.worst_lower_margin = std::min(rep.worst_lower_margin, lower);
    rep.worst_upper_margin = std::min(rep.worst_upper_margin, upper);
    if (lower < -1e-9 || upper < -1e-9) ++rep.sandwich_violations;
  }
  rep.holds = rep.kgf.is_kgf && rep.lower_claim_holds && rep.upper_claim_holds && rep.sandwich_violations == 0;
  return rep;
}

}  // namespace gfusion
