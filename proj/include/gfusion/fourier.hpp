#pragma once

#include <cstdint>

#include "gfusion/frames.hpp"

namespace gfusion {

/// Truncated Fourier-coefficient model: coordinates indexed by
/// n in [-n_max, n_max], u_n the coordinate basis.
struct FourierParams {
  int n_max = 8;
  int m = 3;  // Lambda_1 keeps coefficients 1..m
  double alpha = 1.0;
  double beta = 1.0;

  /// Throws InvalidParameters unless 1 <= m <= n_max, alpha, beta > 0 and
  /// alpha * beta <= 1.
  void validate() const;
};

struct FourierInstance {
  FrameFamily family;
  ControlPair control;
  Operator k;
};

/// Coordinate position of u_n.
Index fourier_index(const FourierParams& p, int n);

/// W_n = span{u_n}, v_n = 1, Lambda_1 the partial-sum projector onto
/// span{u_1..u_m}, Lambda_n = 0 otherwise, K the projector onto span{u_1, u_2},
/// T = alpha I, U = beta I.
FourierInstance build_fourier_example(const FourierParams& p);

struct FourierReport {
  FrameReport frame;
  KgfBounds kgf;
  double alpha_beta = 0.0;
  bool lower_claim_holds = false;  // a_opt >= alpha beta
  bool upper_claim_holds = false;  // b <= 1
  int trials = 0;
  int sandwich_violations = 0;  // sampled x breaking alpha beta ||K* x||^2 <= sum <= ||x||^2
  double worst_lower_margin = 0.0;
  double worst_upper_margin = 0.0;
  bool holds = false;
};

FourierReport verify_fourier(const FourierParams& p, int trials, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace gfusion
