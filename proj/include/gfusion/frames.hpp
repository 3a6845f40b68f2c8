#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gfusion/hilbert.hpp"

namespace gfusion {

/// One (W_j, Lambda_j, v_j) triple: a closed subspace, an operator from H
/// into the component space H_j, and a positive weight.
struct FrameItem {
  Subspace subspace;
  Operator lambda;
  double weight;
};

class FrameFamily {
 public:
  FrameFamily(Index ambient_dim, std::vector<FrameItem> items);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<FrameItem>& items() const noexcept { return items_; }
  const FrameItem& operator[](std::size_t j) const { return items_[j]; }

  /// Same family with every weight multiplied by `c`.
  FrameFamily scaled_weights(double c) const;

 private:
  Index ambient_dim_;
  std::vector<FrameItem> items_;
};

/// Control operators (T, U) on H; both must be invertible under the
/// condition-number ceiling.
class ControlPair {
 public:
  ControlPair(Operator t, Operator u, const Tolerances& tol = {});

  static ControlPair identity(Index n);
  static ControlPair scalar(Index n, Scalar alpha, Scalar beta);

  const Operator& t() const noexcept { return t_; }
  const Operator& u() const noexcept { return u_; }
  Index dim() const noexcept { return t_.rows(); }

 private:
  Operator t_;
  Operator u_;
};

/// Element of l^2 over the index set: one coefficient vector per item.
struct BlockVector {
  std::vector<Vector> blocks;

  double squared_norm() const;
};

struct FrameReport {
  bool is_bessel = false;
  bool is_frame = false;
  SpectralInterval bounds;
  Operator s_c;
  double herm_residual = 0.0;
};

struct KgfBounds {
  double a_opt = 0.0;  // +inf when K == 0
  double b = 0.0;
  bool is_kgf = false;
};

struct AtomicReport {
  bool is_atomic = false;
  double bessel_bound = 0.0;             // B
  double coefficient_norm_bound = 0.0;   // C = ||L||
  double lower_bound = 0.0;              // optimal K-lower bound, compared against 1/C^2
  Operator coefficient_map;              // L with T_C L = K (min-norm)
  double coefficient_residual = 0.0;     // ||T_C L - K|| / ||K||
  bool range_contained = false;          // range(K) inside range(T_C)
  bool square_root_form = true;          // T_C built from per-item square roots
  double literal_residual = 0.0;         // ||K - S_C|| / ||K||, literal decomposition reading
  KgfBounds kgf;
};

struct FrameOperatorAtomicity {
  AtomicReport report;
  double alpha_opt = 0.0;  // largest alpha with alpha S_C S_C* <= S_C
};

struct CombinationAtomicity {
  AtomicReport combination;  // w.r.t. alpha K1 + beta K2
  AtomicReport product;      // w.r.t. K1 K2
  bool both_atomic = false;
};

struct SynthesisResult {
  Vector value;
  bool range_certified = false;
};

/// T* P_{W_j} Lambda_j* Lambda_j P_{W_j} U, without the weight.
Operator cross_operator(const FrameFamily& fam, const ControlPair& cp, std::size_t j);

/// sum_j v_j^2 <Lambda_j P_{W_j} U f, Lambda_j P_{W_j} T f>.
Scalar frame_sum(const FrameFamily& fam, const ControlPair& cp, const Vector& f);

Operator frame_operator(const FrameFamily& fam, const ControlPair& cp);

/// Analysis coefficients v_j (cross_operator_j)^{1/2} f. Throws NotPositive(j)
/// when a cross operator has no positive square root.
BlockVector analysis(const FrameFamily& fam, const ControlPair& cp, const Vector& f,
                     const Tolerances& tol = {});

/// sum_j v_j (cross_operator_j)^{1/2} g_j. With `f_hint`, certifies that
/// g equals analysis(f_hint), i.e. lies in the coefficient range.
SynthesisResult synthesis(const FrameFamily& fam, const ControlPair& cp, const BlockVector& g,
                          const std::optional<Vector>& f_hint = std::nullopt,
                          const Tolerances& tol = {});

/// Stacked synthesis matrix [v_1 R_1, ..., v_J R_J], R_j the square roots.
Operator synthesis_matrix(const FrameFamily& fam, const ControlPair& cp, const Tolerances& tol = {});

FrameReport controlled_frame_bounds(const FrameFamily& fam, const ControlPair& cp,
                                    const Tolerances& tol = {});

KgfBounds kgf_bounds(const FrameFamily& fam, const ControlPair& cp, const Operator& k,
                     const Tolerances& tol = {});

AtomicReport atomic_check(const FrameFamily& fam, const ControlPair& cp, const Operator& k,
                          const Tolerances& tol = {});

FrameOperatorAtomicity atomic_wrt_frame_operator(const FrameFamily& fam, const ControlPair& cp,
                                                 const Tolerances& tol = {});

CombinationAtomicity linear_combination_atomic(const FrameFamily& fam, const ControlPair& cp,
                                               const Operator& k1, const Operator& k2, Scalar alpha,
                                               Scalar beta, const Tolerances& tol = {});

}  // namespace gfusion
