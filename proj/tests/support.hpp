#pragma once

// Brute-force oracles and instance builders shared by the unit and
// acceptance tests. The oracles avoid the library's numerical kernels:
// plain loops for products and projectors, cyclic Jacobi on the real
// symmetric embedding for spectra, bisection for optimal lower bounds.

#include <algorithm>
#include <cmath>
#include <vector>

#include "gfusion/frames.hpp"
#include "gfusion/random_instance.hpp"

namespace oracle {

using gfusion::FrameFamily;
using gfusion::Index;
using gfusion::Operator;
using gfusion::Scalar;
using gfusion::Vector;

inline Operator mul(const Operator& a, const Operator& b) {
  Operator c = Operator::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Scalar s{0.0, 0.0};
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Vector matvec(const Operator& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) y(i) += a(i, k) * x(k);
  return y;
}

inline Operator adj(const Operator& a) {
  Operator b(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
  return b;
}

/// <x, y>, linear in x.
inline Scalar inner(const Vector& x, const Vector& y) {
  Scalar s{0.0, 0.0};
  for (Index i = 0; i < x.size(); ++i) s += x(i) * std::conj(y(i));
  return s;
}

inline Operator projector(const Operator& basis) {
  const Index n = basis.rows();
  Operator p = Operator::Zero(n, n);
  for (Index c = 0; c < basis.cols(); ++c)
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) p(i, k) += basis(i, c) * std::conj(basis(k, c));
  return p;
}

inline Scalar frame_sum(const FrameFamily& fam, const Operator& t, const Operator& u, const Vector& f) {
  Scalar s{0.0, 0.0};
  for (const auto& it : fam.items()) {
    const Operator p = projector(it.subspace.basis());
    const Vector x = matvec(it.lambda, matvec(p, matvec(u, f)));
    const Vector y = matvec(it.lambda, matvec(p, matvec(t, f)));
    s += it.weight * it.weight * inner(x, y);
  }
  return s;
}

inline Operator frame_operator(const FrameFamily& fam, const Operator& t, const Operator& u) {
  const Index n = fam.ambient_dim();
  Operator s = Operator::Zero(n, n);
  for (const auto& it : fam.items()) {
    const Operator p = projector(it.subspace.basis());
    const Operator left = mul(it.lambda, mul(p, t));
    const Operator right = mul(it.lambda, mul(p, u));
    s += it.weight * it.weight * mul(adj(left), right);
  }
  return s;
}

/// Sorted eigenvalues of a Hermitian matrix: cyclic Jacobi on the real
/// 2n x 2n embedding, whose spectrum repeats each eigenvalue twice.
inline std::vector<double> eigenvalues(const Operator& a) {
  const Index n = a.rows();
  const Index m = 2 * n;
  std::vector<double> s(static_cast<std::size_t>(m * m));
  auto at = [&](Index i, Index j) -> double& { return s[static_cast<std::size_t>(i * m + j)]; };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Scalar h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      at(i, j) = h.real();
      at(i + n, j + n) = h.real();
      at(i, j + n) = -h.imag();
      at(i + n, j) = h.imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (Index p = 0; p < m; ++p)
      for (Index q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Index k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (Index k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev;
  for (Index i = 0; i < m; ++i) ev.push_back(at(i, i));
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

inline double lambda_min(const Operator& a) { return eigenvalues(a).front(); }
inline double lambda_max(const Operator& a) { return eigenvalues(a).back(); }

/// Spectral norm through the eigenvalues of a* a.
inline double norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, lambda_max(mul(adj(a), a))));
}

/// Largest c with s - c k k* PSD (relative slack 1e-12), by bisection.
/// Returns +inf for k == 0.
inline double optimal_lower(const Operator& s, const Operator& k) {
  const Operator kk = mul(k, adj(k));
  if (norm(kk) == 0.0) return INFINITY;
  const double scale = std::max(norm(s), 1e-300);
  auto feasible = [&](double c) { return lambda_min(s - c * kk) >= -1e-12 * scale; };
  if (!feasible(0.0)) return -INFINITY;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi) && hi < 1e12) hi *= 2.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace oracle

namespace build {

using gfusion::ControlPair;
using gfusion::FrameFamily;
using gfusion::FrameItem;
using gfusion::Index;
using gfusion::Operator;
using gfusion::Rng;
using gfusion::Subspace;

/// Coordinate family with frame operator diag(a, b, ..., b) under identity
/// controls: exact bounds (min(a, b), max(a, b)). Needs dim >= 2. Unit
/// weights, so any two such families of one size can be combined.
inline FrameFamily known_bounds(Index dim, double a, double b) {
  std::vector<FrameItem> items;
  for (Index i = 0; i < dim; ++i) {
    Operator e = Operator::Zero(dim, 1);
    e(i, 0) = 1.0;
    items.push_back({Subspace(dim, e), std::sqrt(i == 0 ? a : b) * e.adjoint(), 1.0});
  }
  return FrameFamily(dim, std::move(items));
}

/// Random family with full-space first item (always a frame for positive controls).
inline FrameFamily random_frame(Rng& rng, Index dim, Index items) {
  return gfusion::random_instance(rng.next(), dim, items, gfusion::Structure::Generic).family;
}

inline ControlPair scalar_controls(Rng& rng, Index dim) {
  return ControlPair::scalar(dim, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
}

/// Random subspace of dimension k.
inline Subspace random_subspace(Rng& rng, Index dim, Index k) {
  return Subspace::span_of(rng.gaussian(dim, k));
}

/// Random operator of rank r on C^dim.
inline Operator random_rank(Rng& rng, Index dim, Index r) {
  return rng.gaussian(dim, r) * rng.gaussian(r, dim);
}

struct FamilyPair {
  FrameFamily left;
  FrameFamily right;
};

/// Two families on shared subspaces and weights whose operators map into
/// complementary blocks of a common codomain, so every cross term
/// Lambda_j* Gamma_j vanishes. The first item spans H in both.
inline FamilyPair orthogonal_codomains(Rng& rng, Index dim, Index items) {
  std::vector<FrameItem> l;
  std::vector<FrameItem> g;
  for (Index j = 0; j < items; ++j) {
    const Subspace sub = j == 0 ? Subspace::full(dim) : random_subspace(rng, dim, 1 + static_cast<Index>(rng.next() % dim));
    const Index r = j == 0 ? dim : 1 + static_cast<Index>(rng.next() % dim);
    const Index q = j == 0 ? dim : 1 + static_cast<Index>(rng.next() % dim);
    Operator a = Operator::Zero(r + q, dim);
    Operator b = Operator::Zero(r + q, dim);
    a.topRows(r) = rng.gaussian(r, dim);
    b.bottomRows(q) = rng.gaussian(q, dim);
    if (j == 0) {
      a.topRows(r) += 2.0 * Operator::Identity(dim, dim);
      b.bottomRows(q) += 2.0 * Operator::Identity(dim, dim);
    }
    const double w = rng.uniform(0.5, 1.5);
    l.push_back({sub, a, w});
    g.push_back({sub, b, w});
  }
  return {FrameFamily(dim, std::move(l)), FrameFamily(dim, std::move(g))};
}

}  // namespace build
