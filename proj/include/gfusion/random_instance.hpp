#pragma once

#include <cstdint>
#include <string_view>

#include "gfusion/frames.hpp"

namespace gfusion {

/// splitmix64 stream. Gaussian draws use Box-Muller on this stream only, so
/// output is identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  Scalar complex_normal();

  Operator gaussian(Index rows, Index cols);
  Vector gaussian_vector(Index n);
  Vector unit_vector(Index n);
  /// Haar-ish unitary from QR of a Gaussian matrix with phase correction.
  Operator unitary(Index n);

 private:
  std::uint64_t state_;
};

enum class Structure { Generic, ScalarControls, Parseval, NearIdentityPair };

Structure parse_structure(std::string_view name);
std::string_view to_string(Structure s);

struct RandomInstance {
  FrameFamily family;
  ControlPair control;
  /// Second family for the near-identity-pair structure (same subspaces).
  std::optional<FrameFamily> partner;
};

/// Deterministic instance for (seed, dim, items, structure); dim <= 64 and
/// items <= 32. Generic draws T invertible with U == T so the cross
/// operators stay positive.
RandomInstance random_instance(std::uint64_t seed, Index dim, Index items, Structure s);

}  // namespace gfusion
