#pragma once

#include <string_view>

namespace gfusion {

// All thresholds are relative to the norm of the operator under test unless
// noted. Defaults are sized for dense double-precision work at n <= 64.
struct Tolerances {
  double herm = 1e-9;         // ||a - a*|| <= herm * ||a||
  double psd = 1e-9;          // eigenvalue floor, -psd * ||a||
  double factor = 1e-8;       // Douglas factorization residual
  double rank = 1e-12;        // singular value cutoff, relative to sigma_max
  double orth = 1e-10;        // Gram matrix deviation for orthonormal bases (absolute)
  double cond = 1e12;         // sigma_max / sigma_min ceiling for invertibility
  double bessel = 1e-8;       // frame-operator hermitian residual accepted as Bessel
  double commute = 1e-8;      // commutation and hypothesis residuals
  double resolution = 1e-8;   // resolution-of-identity residual

  /// Sets a tolerance by name; returns false for an unknown name.
  bool set(std::string_view name, double value);
};

}  // namespace gfusion
