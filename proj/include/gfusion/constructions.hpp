#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gfusion/frames.hpp"

namespace gfusion {

/// Residual of one hypothesis of a construction; `passed` compares it to the
/// tolerance in force when the report was built.
struct Certificate {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

/// Output family of a frame-building transform with its predicted bounds and
/// the bounds measured on the output. measured_lower is the optimal K-lower
/// bound of the output (+inf when K == 0), measured_upper its Bessel bound.
struct TransformReport {
  TransformReport(FrameFamily fam, ControlPair cp, Operator k)
      : family_out(std::move(fam)), control_out(std::move(cp)), k_out(std::move(k)) {}

  FrameFamily family_out;
  ControlPair control_out;
  Operator k_out;
  double predicted_lower = 0.0;
  double predicted_upper = 0.0;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
  bool measured_is_kgf = false;
  std::vector<Certificate> hypothesis_certificates;
  bool hypotheses_hold = false;
  /// Distance of the output frame operator from its closed form.
  double operator_identity_residual = 0.0;
};

/// Family {((V+W) W_j, (Lambda_j + Gamma_j) P_{W_j} (V+W)*, v_j)} for two
/// families sharing subspaces and weights. Throws NotInvertible when V + W is
/// singular; failed hypotheses are reported, not thrown.
TransformReport sum_transform(const FrameFamily& fam_l, const FrameFamily& fam_g, const Operator& v,
                              const Operator& w, const ControlPair& cp, const Operator& k,
                              const Tolerances& tol = {});

/// Family {(W_j (+) V_j, Lambda_j (+) Gamma_j, v_j)} on H (+) X.
TransformReport direct_sum_frame(const FrameFamily& fam_h, const ControlPair& cp_h, const Operator& k_h,
                                 const FrameFamily& fam_x, const ControlPair& cp_x, const Operator& k_x,
                                 const Tolerances& tol = {});

/// Direct-sum family conjugated by W (+) V.
TransformReport conjugate_transform(const FrameFamily& fam_h, const ControlPair& cp_h, const Operator& k_h,
                                    const FrameFamily& fam_x, const ControlPair& cp_x, const Operator& k_x,
                                    const Operator& w, const Operator& v, const Tolerances& tol = {});

}  // namespace gfusion
