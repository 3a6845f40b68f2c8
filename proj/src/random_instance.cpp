#include "gfusion/random_instance.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gfusion {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Scalar Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Operator Rng::gaussian(Index rows, Index cols) {
  Operator m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Vector Rng::gaussian_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

Vector Rng::unit_vector(Index n) {
  Vector v = gaussian_vector(n);
  while (v.norm() == 0.0) v = gaussian_vector(n);
  return v / v.norm();
}

Operator Rng::unitary(Index n) {
  const Operator g = gaussian(n, n);
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ() * Operator::Identity(n, n);
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Structure parse_structure(std::string_view name) {
  if (name == "generic") return Structure::Generic;
  if (name == "scalar-controls") return Structure::ScalarControls;
  if (name == "parseval") return Structure::Parseval;
  if (name == "near-identity-pair") return Structure::NearIdentityPair;
  throw Error(ErrorKind::InvalidParameters, "unknown structure '" + std::string(name) + "'");
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::Generic: return "generic";
    case Structure::ScalarControls: return "scalar-controls";
    case Structure::Parseval: return "parseval";
    case Structure::NearIdentityPair: return "near-identity-pair";
  }
  return "generic";
}

namespace {

// Split the columns of a unitary into `items` nonempty consecutive blocks
// when possible; surplus items reuse blocks cyclically.
std::vector<Operator> column_blocks(const Operator& q, Index items) {
  const Index n = q.cols();
  std::vector<Operator> out;
  const Index parts = std::min(n, items);
  Index start = 0;
  for (Index p = 0; p < parts; ++p) {
    const Index len = n / parts + (p < n % parts ? 1 : 0);
    out.push_back(q.middleCols(start, len));
    start += len;
  }
  return out;
}

Subspace random_subspace(Rng& rng, Index dim) {
  const Index k = 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(dim));
  return Subspace::span_of(rng.gaussian(dim, k));
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, Index dim, Index items, Structure s) {
  if (dim < 1 || dim > 64) throw Error(ErrorKind::InvalidParameters, "dim must lie in [1, 64]");
  if (items < 1 || items > 32) throw Error(ErrorKind::InvalidParameters, "items must lie in [1, 32]");
  Rng rng(seed);

  if (s == Structure::Parseval || s == Structure::NearIdentityPair) {
    // Orthogonal decomposition H = (+) W_j with Lambda_j the coordinate map of
    // W_j; items beyond dim are split by weight so the sum stays Parseval.
    const Operator q = rng.unitary(dim);
    const std::vector<Operator> blocks = column_blocks(q, items);
    const auto nb = static_cast<Index>(blocks.size());
    std::vector<FrameItem> li;
    std::vector<FrameItem> gi;
    double max_e = 0.0;
    std::vector<Operator> es;
    for (Index j = 0; j < items; ++j) {
      const Operator& b = blocks[static_cast<std::size_t>(j % nb)];
      es.push_back(rng.gaussian(b.cols(), b.cols()));
      max_e = std::max(max_e, op_norm(es.back()));
    }
    const double eps = max_e > 0.0 ? 0.05 / max_e : 0.0;
    for (Index j = 0; j < items; ++j) {
      const Operator& b = blocks[static_cast<std::size_t>(j % nb)];
      const Index share = items / nb + ((j % nb) < items % nb ? 1 : 0);
      const double weight = 1.0 / std::sqrt(static_cast<double>(share));
      Subspace sub(dim, b);
      li.push_back({sub, b.adjoint(), weight});
      const Operator pert = Operator::Identity(b.cols(), b.cols()) + eps * es[static_cast<std::size_t>(j)];
      gi.push_back({sub, pert * b.adjoint(), weight});
    }
    RandomInstance out{FrameFamily(dim, std::move(li)), ControlPair::identity(dim), std::nullopt};
    if (s == Structure::NearIdentityPair) out.partner = FrameFamily(dim, std::move(gi));
    return out;
  }

  // Random subspaces and operators; the first item spans H so the family is a
  // frame for any positive controls.
  std::vector<FrameItem> it;
  for (Index j = 0; j < items; ++j) {
    Subspace sub = j == 0 ? Subspace::full(dim) : random_subspace(rng, dim);
    const Index rows = 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(dim));
    Operator lambda = rng.gaussian(j == 0 ? dim : rows, dim);
    if (j == 0) lambda += 2.0 * Operator::Identity(dim, dim);
    const double weight = rng.uniform(0.5, 1.5);
    it.push_back({std::move(sub), std::move(lambda), weight});
  }
  FrameFamily fam(dim, std::move(it));

  if (s == Structure::ScalarControls) {
    const double alpha = rng.uniform(0.5, 2.0);
    const double beta = rng.uniform(0.5, 2.0);
    return {std::move(fam), ControlPair::scalar(dim, alpha, beta), std::nullopt};
  }
  Operator t = Operator::Identity(dim, dim) + 0.3 * rng.gaussian(dim, dim) / std::sqrt(static_cast<double>(dim));
  return {std::move(fam), ControlPair(t, t), std::nullopt};
}

}  // namespace gfusion
