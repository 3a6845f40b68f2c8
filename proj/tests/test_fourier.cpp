#include "doctest.h"

#include <cmath>

#include "gfusion/fourier.hpp"
#include "gfusion/random_instance.hpp"
#include "support.hpp"

using namespace gfusion;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidValue;
}

FourierParams params(double alpha, double beta) {
  FourierParams p;
  p.n_max = 6;
  p.m = 3;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("coefficient model: K* keeps the first two positive coefficients") {
  const FourierParams p = params(0.5, 1.0);
  const FourierInstance inst = build_fourier_example(p);
  const Index dim = inst.family.ambient_dim();
  CHECK(dim == 13);
  CHECK(inst.family.size() == 13);
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    Vector e = Vector::Zero(dim);
    e(fourier_index(p, n)) = 1.0;
    const Vector ke = oracle::matvec(oracle::adj(inst.k), e);
    CHECK(ke.norm() == doctest::Approx(n == 1 || n == 2 ? 1.0 : 0.0));
  }
}

TEST_CASE("literal frame sum is alpha beta |x_1|^2") {
  Rng rng(51);
  for (double ab : {0.25, 0.5, 1.0}) {
    const FourierParams p = params(ab, 1.0);
    const FourierInstance inst = build_fourier_example(p);
    const Index dim = inst.family.ambient_dim();
    for (int s = 0; s < 20; ++s) {
      const Vector x = rng.gaussian_vector(dim);
      const Scalar got = frame_sum(inst.family, inst.control, x);
      const Scalar want = oracle::frame_sum(inst.family, inst.control.t(), inst.control.u(), x);
      const double x1 = std::norm(x(fourier_index(p, 1)));
      CHECK(std::abs(got - want) <= 1e-12 * (1 + std::abs(want)));
      CHECK(got.real() == doctest::Approx(ab * x1).epsilon(1e-12));
      CHECK(std::abs(got.imag()) <= 1e-14);
    }
  }
}

TEST_CASE("literal reading is not a K-frame: optimal lower bound is zero") {
  const FourierInstance inst = build_fourier_example(params(0.5, 1.5));
  const KgfBounds k = kgf_bounds(inst.family, inst.control, inst.k);
  const Operator s = oracle::frame_operator(inst.family, inst.control.t(), inst.control.u());
  CHECK(oracle::optimal_lower(s, inst.k) == doctest::Approx(0.0));
  CHECK(std::abs(k.a_opt) <= 1e-12);
  CHECK(k.b == doctest::Approx(0.75));
  CHECK_FALSE(k.is_kgf);
}

TEST_CASE("frame sum ignores everything but the first coefficient") {
  Rng rng(52);
  const FourierParams p = params(1.0, 1.0);
  const FourierInstance inst = build_fourier_example(p);
  const Index dim = inst.family.ambient_dim();
  for (int s = 0; s < 20; ++s) {
    Vector x = rng.gaussian_vector(dim);
    Vector y = rng.gaussian_vector(dim);
    y(fourier_index(p, 1)) = x(fourier_index(p, 1));
    CHECK(std::abs(frame_sum(inst.family, inst.control, x) - frame_sum(inst.family, inst.control, y)) <= 1e-12 * x.squaredNorm());
    x(fourier_index(p, 1)) = 0.0;
    CHECK(std::abs(frame_sum(inst.family, inst.control, x)) <= 1e-15);
  }
}

TEST_CASE("parameter validation") {
  FourierParams p = params(1.0, 1.0);
  p.m = 0;
  CHECK(kind_of([&] { build_fourier_example(p); }) == ErrorKind::InvalidParameters);
  p = params(1.0, 1.0);
  p.m = p.n_max + 1;
  CHECK(kind_of([&] { build_fourier_example(p); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([&] { build_fourier_example(params(0.0, 1.0)); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([&] { build_fourier_example(params(2.0, 1.0)); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([&] { verify_fourier(params(1.0, 1.0), 0, 1); }) == ErrorKind::InvalidParameters);
}

TEST_CASE("verification reports the broken sandwich") {
  const FourierReport r = verify_fourier(params(0.5, 1.0), 100, 7);
  CHECK_FALSE(r.holds);
  CHECK_FALSE(r.lower_claim_holds);
  CHECK(r.upper_claim_holds);
  CHECK(r.sandwich_violations > 0);
  CHECK(r.worst_lower_margin < 0.0);
  CHECK(r.worst_upper_margin >= 0.0);
  CHECK(r.alpha_beta == 0.5);
}
