#pragma once

#include <complex>

#include <Eigen/Dense>

#include "gfusion/error.hpp"
#include "gfusion/tolerances.hpp"

namespace gfusion {

using Index = Eigen::Index;
using Scalar = std::complex<double>;
/// Dense complex matrix standing for a bounded linear map between
/// finite-dimensional Hilbert spaces.
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Closed subspace of C^n held as an orthonormal basis (one column per
/// basis vector). An empty basis is the zero subspace.
class Subspace {
 public:
  /// Validates orthonormality of `basis` against `tol.orth`.
  Subspace(Index ambient_dim, Operator basis, const Tolerances& tol = {});

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  /// Orthonormal basis for the span of the given columns (rank cutoff `tol.rank`).
  static Subspace span_of(const Operator& vectors, const Tolerances& tol = {});

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index dim() const noexcept { return basis_.cols(); }
  const Operator& basis() const noexcept { return basis_; }

 private:
  struct Unchecked {};
  Subspace(Unchecked, Index ambient_dim, Operator basis);

  Index ambient_dim_;
  Operator basis_;
};

struct SpectralInterval {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

struct DouglasFactor {
  Operator w;         // minimum-norm solution of s = v w
  double lambda;      // smallest lambda with s s* <= lambda^2 v v*
  double residual;    // ||v w - s|| / ||s|| (0 when s == 0)
};

// Norms and predicates ----------------------------------------------------

/// Spectral norm (largest singular value).
double op_norm(const Operator& a);
double condition_number(const Operator& a);
bool is_invertible(const Operator& a, const Tolerances& tol = {});
/// ||a - a*|| / ||a||, zero for the zero matrix.
double hermitian_residual(const Operator& a);
Operator hermitian_part(const Operator& a);
/// Relative distance ||a - b|| / max(||a||, ||b||), zero when both vanish.
double relative_difference(const Operator& a, const Operator& b);
bool all_finite(const Operator& a);

// Core operations ---------------------------------------------------------

Operator adjoint(const Operator& a);

/// Unique Hermitian PSD square root. Eigenvalue dust down to -psd*||a|| is
/// clamped to zero; anything more negative is NotPSD.
Operator positive_sqrt(const Operator& a, const Tolerances& tol = {});

/// Moore-Penrose inverse through the SVD; singular values at or below
/// rank*sigma_max are treated as zero.
Operator pinv(const Operator& a, const Tolerances& tol = {});

/// Orthonormal basis (columns) of range(a).
Operator range_basis(const Operator& a, const Tolerances& tol = {});

Operator projector(const Subspace& m);

/// Orthonormal basis of r * span(m).
Subspace subspace_image(const Operator& r, const Subspace& m, const Tolerances& tol = {});

/// Factorizes s = v w when range(s) is contained in range(v); throws
/// RangeNotContained otherwise.
DouglasFactor douglas_factor(const Operator& s, const Operator& v, const Tolerances& tol = {});

SpectralInterval hermitian_extremes(const Operator& a, const Tolerances& tol = {});

/// min <a f, f> / <b f, f> over f with <b f, f> > 0, for Hermitian a and
/// Hermitian PSD b. Returns -inf when the quotient is unbounded below.
double gen_rayleigh_min(const Operator& a, const Operator& b, const Tolerances& tol = {});

/// Block-diagonal embedding r (+) v.
Operator dsum_op(const Operator& r, const Operator& v);
Vector dsum_vec(const Vector& f, const Vector& g);
/// Direct sum of subspaces m (+) n inside H (+) X.
Subspace dsum_subspace(const Subspace& m, const Subspace& n);

}  // namespace gfusion
