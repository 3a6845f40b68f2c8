#include "gfusion/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gfusion {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::RangeNotContained: return "RangeNotContained";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::ItemCountMismatch: return "ItemCountMismatch";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::SubspaceMismatch: return "SubspaceMismatch";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::ResolutionFailed: return "ResolutionFailed";
    case ErrorKind::NotBessel: return "NotBessel";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool Tolerances::set(std::string_view name, double value) {
  std::pair<std::string_view, double*> fields[] = {
      {"herm", &herm},       {"psd", &psd},         {"factor", &factor},
      {"rank", &rank},       {"orth", &orth},       {"cond", &cond},
      {"bessel", &bessel},   {"commute", &commute}, {"resolution", &resolution},
  };
  for (auto& [key, field] : fields) {
    if (key == name) {
      *field = value;
      return true;
    }
  }
  return false;
}

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected a square operator, got " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
  }
}

void require_hermitian(const Operator& a, const Tolerances& tol, const char* what) {
  const double res = hermitian_residual(a);
  if (res > tol.herm) {
    throw Error(ErrorKind::NotHermitian,
                std::string(what) + ": relative asymmetry " + std::to_string(res));
  }
}

Eigen::VectorXd singular_values(const Operator& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues();
}

}  // namespace

// -------------------------------------------------------------------------

Subspace::Subspace(Unchecked, Index ambient_dim, Operator basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

Subspace::Subspace(Index ambient_dim, Operator basis, const Tolerances& tol)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ <= 0) {
    throw Error(ErrorKind::InvalidValue, "subspace ambient dimension must be positive");
  }
  if (basis_.cols() == 0) {
    basis_.resize(ambient_dim_, 0);
    return;
  }
  if (basis_.rows() != ambient_dim_) {
    throw Error(ErrorKind::DimensionMismatch, "subspace basis vectors must live in the ambient space");
  }
  if (basis_.cols() > ambient_dim_) {
    throw Error(ErrorKind::InvalidValue, "subspace basis has more vectors than the ambient dimension");
  }
  if (!all_finite(basis_)) {
    throw Error(ErrorKind::InvalidValue, "subspace basis has non-finite entries");
  }
  const Operator gram = basis_.adjoint() * basis_;
  const double dev = (gram - Operator::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > tol.orth) {
    throw Error(ErrorKind::InvalidValue,
                "subspace basis is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
  }
}

Subspace Subspace::zero(Index ambient_dim) {
  return Subspace(Unchecked{}, ambient_dim, Operator(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(Unchecked{}, ambient_dim, Operator::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::span_of(const Operator& vectors, const Tolerances& tol) {
  if (vectors.cols() == 0) return zero(vectors.rows());
  return Subspace(Unchecked{}, vectors.rows(), range_basis(vectors, tol));
}

// -------------------------------------------------------------------------

double op_norm(const Operator& a) {
  const Eigen::VectorXd s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

double condition_number(const Operator& a) {
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

bool is_invertible(const Operator& a, const Tolerances& tol) {
  return a.rows() == a.cols() && a.rows() > 0 && condition_number(a) <= tol.cond;
}

double hermitian_residual(const Operator& a) {
  require_square(a, "hermitian_residual");
  const double n = op_norm(a);
  if (n == 0.0) return 0.0;
  return op_norm(a - a.adjoint()) / n;
}

Operator hermitian_part(const Operator& a) {
  return (a + a.adjoint()) * 0.5;
}

double relative_difference(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "relative_difference: shapes differ");
  }
  const double scale = std::max(op_norm(a), op_norm(b));
  if (scale == 0.0) return 0.0;
  return op_norm(a - b) / scale;
}

bool all_finite(const Operator& a) {
  return a.allFinite();
}

Operator adjoint(const Operator& a) {
  return a.adjoint();
}

Operator positive_sqrt(const Operator& a, const Tolerances& tol) {
  require_square(a, "positive_sqrt");
  const double norm = op_norm(a);
  if (norm == 0.0) return Operator::Zero(a.rows(), a.cols());
  require_hermitian(a, tol, "positive_sqrt");

  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a));
  Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() < -tol.psd * norm) {
    throw Error(ErrorKind::NotPSD,
                "positive_sqrt: eigenvalue " + std::to_string(evals.minCoeff()) + " below floor");
  }
  evals = evals.cwiseMax(0.0).cwiseSqrt();
  const Operator& v = es.eigenvectors();
  return v * evals.cast<Scalar>().asDiagonal() * v.adjoint();
}

Operator pinv(const Operator& a, const Tolerances& tol) {
  if (a.size() == 0) return Operator::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Operator> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol.rank * s(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.cast<Scalar>().asDiagonal() * svd.matrixU().adjoint();
}

Operator range_basis(const Operator& a, const Tolerances& tol) {
  if (a.size() == 0) return Operator(a.rows(), 0);
  Eigen::JacobiSVD<Operator> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol.rank * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff && s(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

Operator projector(const Subspace& m) {
  if (m.dim() == 0) return Operator::Zero(m.ambient_dim(), m.ambient_dim());
  return m.basis() * m.basis().adjoint();
}

Subspace subspace_image(const Operator& r, const Subspace& m, const Tolerances& tol) {
  if (r.cols() != m.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspace_image: operator columns differ from ambient dim");
  }
  if (m.dim() == 0) return Subspace::zero(r.rows());
  return Subspace::span_of(r * m.basis(), tol);
}

DouglasFactor douglas_factor(const Operator& s, const Operator& v, const Tolerances& tol) {
  if (s.rows() != v.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "douglas_factor: s and v must share a codomain");
  }
  DouglasFactor out;
  out.w = pinv(v, tol) * s;
  const double snorm = op_norm(s);
  out.residual = snorm == 0.0 ? 0.0 : op_norm(v * out.w - s) / snorm;
  if (out.residual > tol.factor) {
    throw Error(ErrorKind::RangeNotContained,
                "douglas_factor: residual " + std::to_string(out.residual) + " exceeds tolerance");
  }

  // Largest generalized Rayleigh quotient of (s s*, v v*) on range(v). In the
  // left singular basis of v the pencil's second matrix is diag(sigma^2).
  out.lambda = 0.0;
  if (snorm == 0.0) return out;
  Eigen::JacobiSVD<Operator> svd(v, Eigen::ComputeThinU);
  const Eigen::VectorXd& sig = svd.singularValues();
  const double cutoff = tol.rank * sig(0);
  Index r = 0;
  while (r < sig.size() && sig(r) > cutoff && sig(r) > 0.0) ++r;
  if (r == 0) return out;
  const Operator q = svd.matrixU().leftCols(r);
  const Operator a_r = q.adjoint() * s * s.adjoint() * q;
  const Eigen::VectorXd inv_sig = sig.head(r).cwiseInverse();
  const Operator c = inv_sig.cast<Scalar>().asDiagonal() * a_r * inv_sig.cast<Scalar>().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(c), Eigen::EigenvaluesOnly);
  out.lambda = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  return out;
}

SpectralInterval hermitian_extremes(const Operator& a, const Tolerances& tol) {
  require_square(a, "hermitian_extremes");
  if (a.rows() == 0) return {};
  require_hermitian(a, tol, "hermitian_extremes");
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double gen_rayleigh_min(const Operator& a, const Operator& b, const Tolerances& tol) {
  require_square(a, "gen_rayleigh_min");
  require_square(b, "gen_rayleigh_min");
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "gen_rayleigh_min: a and b differ in dimension");
  }
  require_hermitian(a, tol, "gen_rayleigh_min(a)");
  require_hermitian(b, tol, "gen_rayleigh_min(b)");
  const Operator ah = hermitian_part(a);
  const Operator bh = hermitian_part(b);

  const double bnorm = op_norm(bh);
  if (!(bnorm > 0.0)) {
    throw Error(ErrorKind::ZeroDenominator, "gen_rayleigh_min: b is numerically zero");
  }
  Eigen::SelfAdjointEigenSolver<Operator> eb(bh);
  const Eigen::VectorXd& lb = eb.eigenvalues();
  if (lb.minCoeff() < -tol.psd * bnorm) {
    throw Error(ErrorKind::NotPSD, "gen_rayleigh_min: b is not positive semidefinite");
  }

  // Split H into range(b) and null(b). Minimizing over the null component
  // first leaves the Schur complement of a on range(b).
  const double cutoff = tol.rank * bnorm;
  std::vector<Index> in_range, in_null;
  for (Index i = 0; i < lb.size(); ++i) (lb(i) > cutoff ? in_range : in_null).push_back(i);
  const Index nr = static_cast<Index>(in_range.size());
  const Index nn = static_cast<Index>(in_null.size());
  Operator r(a.rows(), nr), nb(a.rows(), nn);
  Eigen::VectorXd lr(nr);
  for (Index i = 0; i < nr; ++i) {
    r.col(i) = eb.eigenvectors().col(in_range[i]);
    lr(i) = lb(in_range[i]);
  }
  for (Index i = 0; i < nn; ++i) nb.col(i) = eb.eigenvectors().col(in_null[i]);

  Operator schur = r.adjoint() * ah * r;
  if (nn > 0) {
    const double anorm = op_norm(ah);
    const Operator a_nn = hermitian_part(nb.adjoint() * ah * nb);
    const Operator a_nr = nb.adjoint() * ah * r;
    Eigen::SelfAdjointEigenSolver<Operator> en(a_nn);
    const Eigen::VectorXd& ln = en.eigenvalues();
    if (ln.minCoeff() < -tol.psd * anorm) return -std::numeric_limits<double>::infinity();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(nn);
    for (Index i = 0; i < nn; ++i) {
      if (ln(i) > tol.rank * anorm && ln(i) > 0.0) inv(i) = 1.0 / ln(i);
    }
    const Operator& vn = en.eigenvectors();
    const Operator a_nn_pinv = vn * inv.cast<Scalar>().asDiagonal() * vn.adjoint();
    // Coupling into the kernel of a_nn makes the quotient unbounded below.
    const double leak = op_norm(a_nr - a_nn * a_nn_pinv * a_nr);
    if (leak > tol.factor * std::max(anorm, 1e-300)) return -std::numeric_limits<double>::infinity();
    schur -= a_nr.adjoint() * a_nn_pinv * a_nr;
  }
  const Eigen::VectorXd scale = lr.cwiseSqrt().cwiseInverse();
  const Operator c = scale.cast<Scalar>().asDiagonal() * schur * scale.cast<Scalar>().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Operator> ec(hermitian_part(c), Eigen::EigenvaluesOnly);
  return ec.eigenvalues().minCoeff();
}

Operator dsum_op(const Operator& r, const Operator& v) {
  Operator out = Operator::Zero(r.rows() + v.rows(), r.cols() + v.cols());
  out.topLeftCorner(r.rows(), r.cols()) = r;
  out.bottomRightCorner(v.rows(), v.cols()) = v;
  return out;
}

Vector dsum_vec(const Vector& f, const Vector& g) {
  Vector out(f.size() + g.size());
  out << f, g;
  return out;
}

Subspace dsum_subspace(const Subspace& m, const Subspace& n) {
  return Subspace(m.ambient_dim() + n.ambient_dim(), dsum_op(m.basis(), n.basis()));
}

}  // namespace gfusion
