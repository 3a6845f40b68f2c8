#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gfusion/frames.hpp"

namespace gfusion {

/// sum_j v_j w_j T* P_{W_j} Lambda_j* Gamma_j P_{V_j} U for a left family
/// (W_j, Lambda_j, w_j) under T and a right family (V_j, Gamma_j, v_j) under U.
struct PairOperator {
  Operator matrix;
  FrameFamily left_family;
  FrameFamily right_family;
  Operator left_control;
  Operator right_control;
};

struct ResolutionReport {
  double residual = 0.0;  // ||sum - I||_F / sqrt(dim)
  std::size_t term_count = 0;
  bool converged = false;
};

ResolutionReport resolution_report(const std::vector<Operator>& terms, const Tolerances& tol = {});

PairOperator pair_frame_operator(const FrameFamily& fam_l, const Operator& t, const FrameFamily& fam_g,
                                 const Operator& u);

/// The two canonical resolutions v_j^2 M_j S_C^{-1} and v_j^2 S_C^{-1} M_j.
struct CanonicalResolutions {
  std::vector<Operator> right_inverse_terms;
  std::vector<Operator> left_inverse_terms;
  ResolutionReport right_inverse;
  ResolutionReport left_inverse;
};

/// Throws NotAFrame when S_C is not invertible.
CanonicalResolutions canonical_resolutions(const FrameFamily& fam, const ControlPair& cp,
                                           const Tolerances& tol = {});

/// Frame sum rebuilt through T_j = Lambda_j P_{W_j} S_C^{-1}, compared with the
/// sandwich [A/B^2, B/A^2]. `certified` records whether S_C^{-1} commutes with
/// T and U; without it no bound claim applies.
struct InverseResolutionReport {
  ResolutionReport resolution;
  Operator modified_sum;  // M with <M f, f> = sum_j v_j^2 <T_j U f, T_j T f>
  double frame_lower = 0.0;
  double frame_upper = 0.0;
  double claimed_lower = 0.0;
  double claimed_upper = 0.0;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
  double imaginary_residual = 0.0;
  double commute_t_residual = 0.0;
  double commute_u_residual = 0.0;
  bool certified = false;
  bool sandwich_holds = false;
};

InverseResolutionReport inverse_resolution_check(const FrameFamily& fam, const ControlPair& cp,
                                                 const Tolerances& tol = {});

/// Family whose mixed (t, u) terms resolve the identity, tested as a (u, u)
/// frame with lower bound 1/B, B the (t, t) Bessel bound.
struct ResolutionFrameReport {
  double bessel_bound = 0.0;
  double resolution_residual = 0.0;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
  double predicted_lower = 0.0;
  double predicted_upper = 0.0;
  bool is_frame = false;
  bool bounds_hold = false;
};

/// Throws NotBessel or ResolutionFailed when the hypotheses do not hold.
ResolutionFrameReport resolution_frame_check(const FrameFamily& fam, const Operator& t, const Operator& u,
                                             const Tolerances& tol = {});

/// Coercivity S_{U Gamma Lambda T} >= m forces the left family to be a (T, T)
/// frame with lower bound m^2 / D, D the right family's (U, U) Bessel bound.
struct CoercivePairReport {
  double m = 0.0;
  double right_bessel_bound = 0.0;
  double predicted_lower = 0.0;
  double measured_lower = 0.0;
  bool is_frame = false;
  bool bound_holds = false;
};

/// Throws NotPositive when m <= 0. Without `bessel_bound` the right family's
/// bound is measured.
CoercivePairReport coercive_pair_check(const PairOperator& pair, std::optional<double> bessel_bound = std::nullopt,
                                       const Tolerances& tol = {});

/// Perturbation hypothesis ||f - S f|| <= lambda1 ||f|| + lambda2 ||S f||.
struct PerturbationReport {
  double spectral_lhs = 0.0;  // sigma_max(I - S)
  double spectral_rhs = 0.0;
  bool spectral_certified = false;
  int samples = 0;
  double worst_sample_margin = 0.0;  // min over samples of rhs - lhs
  double predicted_lower_right = 0.0;
  double measured_lower_right = 0.0;
  std::optional<double> predicted_lower_left;
  std::optional<double> measured_lower_left;
  bool bessel_bounds_valid = false;  // d1, d2 dominate the measured Bessel bounds
  bool holds = false;
};

/// d1 bounds the left (T, T) family, d2 the right (U, U) family. Throws
/// InvalidParameters for lambda1 >= 1, lambda2 <= -1 or nonpositive bounds,
/// HypothesisFailed if a sampled vector violates the hypothesis.
PerturbationReport perturbation_check(const PairOperator& pair, double lambda1, double lambda2, double d1,
                                      double d2, int trials = 200, std::uint64_t seed = 1,
                                      const Tolerances& tol = {});

}  // namespace gfusion
