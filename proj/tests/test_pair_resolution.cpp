#include "doctest.h"

#include <cmath>

#include "gfusion/pair_resolution.hpp"
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

// One full-space item with operator c I.
FrameFamily scaled_identity(Index n, double c) {
  return FrameFamily(n, {{Subspace::full(n), c * Operator::Identity(n, n), 1.0}});
}

FrameFamily parseval(std::uint64_t seed, Index n, Index items) {
  return random_instance(seed, n, items, Structure::Parseval).family;
}

}  // namespace

TEST_CASE("pair frame operator") {
  Rng rng(41);
  SUBCASE("self pair equals the controlled frame operator") {
    for (int trial = 0; trial < 10; ++trial) {
      const Index n = 2 + trial % 4;
      const FrameFamily f = build::random_frame(rng, n, 3);
      const ControlPair cp = build::scalar_controls(rng, n);
      const PairOperator p = pair_frame_operator(f, cp.t(), f, cp.u());
      CHECK(relative_difference(p.matrix, oracle::frame_operator(f, cp.t(), cp.u())) <= 1e-12);
    }
  }
  SUBCASE("zero right operators give zero") {
    const FrameFamily f = build::random_frame(rng, 3, 3);
    std::vector<FrameItem> z = f.items();
    for (FrameItem& it : z) it.lambda.setZero();
    const PairOperator p = pair_frame_operator(f, Operator::Identity(3, 3), FrameFamily(3, z), Operator::Identity(3, 3));
    CHECK(p.matrix.norm() == 0.0);
  }
  SUBCASE("swapping the families takes the adjoint") {
    const build::FamilyPair fp = build::orthogonal_codomains(rng, 3, 3);
    std::vector<FrameItem> g = fp.left.items();
    for (FrameItem& it : g) it.lambda = rng.gaussian(it.lambda.rows(), 3);
    const FrameFamily right(3, g);
    const Operator t = rng.gaussian(3, 3) + 2.0 * Operator::Identity(3, 3);
    const Operator u = rng.gaussian(3, 3) + 2.0 * Operator::Identity(3, 3);
    const PairOperator a = pair_frame_operator(fp.left, t, right, u);
    const PairOperator b = pair_frame_operator(right, u, fp.left, t);
    CHECK(relative_difference(a.matrix.adjoint(), b.matrix) <= 1e-12);
  }
  SUBCASE("errors") {
    const FrameFamily f = build::known_bounds(3, 1, 2);
    CHECK(kind_of([&] { pair_frame_operator(f, Operator::Identity(3, 3), FrameFamily(3, {f[0]}), Operator::Identity(3, 3)); }) ==
          ErrorKind::ItemCountMismatch);
    CHECK(kind_of([&] { pair_frame_operator(f, Operator::Identity(3, 3), f, Operator::Identity(2, 2)); }) ==
          ErrorKind::DimensionMismatch);
    std::vector<FrameItem> wide = f.items();
    wide[1].lambda = Operator::Zero(2, 3);
    CHECK(kind_of([&] { pair_frame_operator(f, Operator::Identity(3, 3), FrameFamily(3, wide), Operator::Identity(3, 3)); }) ==
          ErrorKind::CodomainMismatch);
  }
}

TEST_CASE("canonical resolutions of the identity") {
  SUBCASE("Parseval") {
    const CanonicalResolutions c = canonical_resolutions(parseval(5, 4, 3), ControlPair::identity(4));
    CHECK(c.right_inverse.converged);
    CHECK(c.left_inverse.converged);
    CHECK(c.right_inverse.term_count == 3);
  }
  SUBCASE("single item") {
    const CanonicalResolutions c = canonical_resolutions(scaled_identity(3, 2.0), ControlPair::identity(3));
    CHECK(c.right_inverse.residual <= 1e-14);
    CHECK(c.left_inverse_terms.size() == 1);
  }
  SUBCASE("random controlled frames") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 2 + trial % 5;
      const RandomInstance inst = random_instance(rng.next(), n, 2 + trial % 4, Structure::Generic);
      const CanonicalResolutions c = canonical_resolutions(inst.family, inst.control);
      CHECK(c.right_inverse.residual <= 1e-10);
      CHECK(c.left_inverse.residual <= 1e-10);
    }
  }
  SUBCASE("not a frame") {
    Operator e = Operator::Zero(3, 1);
    e(0, 0) = 1.0;
    const FrameFamily f(3, {{Subspace(3, e), e.adjoint(), 1.0}});
    CHECK(kind_of([&] { canonical_resolutions(f, ControlPair::identity(3)); }) == ErrorKind::NotAFrame);
  }
}

TEST_CASE("inverse resolution sandwich") {
  SUBCASE("Parseval gives the identity") {
    const InverseResolutionReport r = inverse_resolution_check(parseval(6, 4, 3), ControlPair::identity(4));
    CHECK(r.certified);
    CHECK(relative_difference(r.modified_sum, Operator::Identity(4, 4)) <= 1e-10);
    CHECK(r.sandwich_holds);
  }
  SUBCASE("known bounds (2, 4)") {
    const InverseResolutionReport r = inverse_resolution_check(build::known_bounds(3, 2.0, 4.0), ControlPair::identity(3));
    CHECK(r.claimed_lower == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(r.claimed_upper == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.measured_lower == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(r.measured_upper == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.sandwich_holds);
  }
  SUBCASE("scalar controls: sampled quadratic forms stay in the sandwich") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
      const Index n = 2 + trial % 4;
      const FrameFamily f = build::random_frame(rng, n, 3);
      const ControlPair cp = build::scalar_controls(rng, n);
      const InverseResolutionReport r = inverse_resolution_check(f, cp);
      CHECK(r.certified);
      CHECK(r.sandwich_holds);
      CHECK(r.imaginary_residual <= 1e-10);
      for (int s = 0; s < 10; ++s) {
        const Vector x = rng.unit_vector(n);
        const double q = oracle::inner(oracle::matvec(r.modified_sum, x), x).real();
        CHECK(q >= r.claimed_lower * (1 - 1e-9));
        CHECK(q <= r.claimed_upper * (1 + 1e-9));
      }
    }
  }
  SUBCASE("generic controls are not certified") {
    const RandomInstance inst = random_instance(44, 3, 3, Structure::Generic);
    CHECK_FALSE(inverse_resolution_check(inst.family, inst.control).certified);
  }
}

TEST_CASE("frames from a mixed resolution of the identity") {
  SUBCASE("Parseval with identity controls") {
    const ResolutionFrameReport r =
        resolution_frame_check(parseval(7, 3, 4), Operator::Identity(3, 3), Operator::Identity(3, 3));
    CHECK(r.is_frame);
    CHECK(r.bounds_hold);
    CHECK(r.predicted_lower == doctest::Approx(1.0));
  }
  SUBCASE("engineered U resolving the identity") {
    Rng rng(45);
    for (int trial = 0; trial < 10; ++trial) {
      const Index n = 2 + trial % 4;
      const FrameFamily f = build::random_frame(rng, n, 3);
      const Operator t = rng.gaussian(n, n) + 3.0 * Operator::Identity(n, n);
      const Operator s_id = oracle::frame_operator(f, Operator::Identity(n, n), Operator::Identity(n, n));
      const Operator u = (t.adjoint() * s_id).inverse();
      const ResolutionFrameReport r = resolution_frame_check(f, t, u);
      CHECK(r.resolution_residual <= 1e-10);
      CHECK(r.measured_lower >= 1.0 / r.bessel_bound * (1 - 1e-9));
      CHECK(r.bounds_hold);
      CHECK(r.is_frame);

      const Operator bumped = u + 0.1 * Operator::Identity(n, n);
      CHECK(kind_of([&] { resolution_frame_check(f, t, bumped); }) == ErrorKind::ResolutionFailed);
    }
  }
}

TEST_CASE("coercive pair operators") {
  SUBCASE("self pair: m is the lower frame bound") {
    const FrameFamily f = build::known_bounds(3, 2.0, 5.0);
    const PairOperator p = pair_frame_operator(f, Operator::Identity(3, 3), f, Operator::Identity(3, 3));
    const CoercivePairReport r = coercive_pair_check(p);
    CHECK(r.m == doctest::Approx(2.0));
    CHECK(r.right_bessel_bound == doctest::Approx(5.0));
    CHECK(r.predicted_lower == doctest::Approx(0.8));
    CHECK(r.bound_holds);
  }
  SUBCASE("m = 0.5, D = 2") {
    const PairOperator p = pair_frame_operator(scaled_identity(3, 1.0), Operator::Identity(3, 3),
                                               scaled_identity(3, 0.5), Operator::Identity(3, 3));
    const CoercivePairReport r = coercive_pair_check(p, 2.0);
    CHECK(r.m == doctest::Approx(0.5));
    CHECK(r.predicted_lower == doctest::Approx(0.125));
    CHECK(r.measured_lower == doctest::Approx(1.0));
    CHECK(r.is_frame);
    CHECK(r.bound_holds);
  }
  SUBCASE("random pairs satisfy m^2 / D") {
    Rng rng(46);
    for (int trial = 0; trial < 10; ++trial) {
      const Index n = 2 + trial % 4;
      const FrameFamily f = build::random_frame(rng, n, 3);
      std::vector<FrameItem> g = f.items();
      for (FrameItem& it : g) it.lambda += 0.05 * rng.gaussian(it.lambda.rows(), n);
      const ControlPair cp = build::scalar_controls(rng, n);
      const PairOperator p = pair_frame_operator(f, cp.t(), FrameFamily(n, g), cp.t());
      const CoercivePairReport r = coercive_pair_check(p);
      CHECK(r.bound_holds);
    }
  }
  SUBCASE("zero pair is rejected") {
    const PairOperator p = pair_frame_operator(scaled_identity(2, 1.0), Operator::Identity(2, 2),
                                               scaled_identity(2, 0.0), Operator::Identity(2, 2));
    CHECK(kind_of([&] { coercive_pair_check(p); }) == ErrorKind::NotPositive);
  }
}

TEST_CASE("perturbation of the identity") {
  const Operator id3 = Operator::Identity(3, 3);
  SUBCASE("S = I") {
    const FrameFamily f = parseval(8, 3, 3);
    const PerturbationReport r = perturbation_check(pair_frame_operator(f, id3, f, id3), 0.0, 0.0, 1.0, 1.0);
    CHECK(r.spectral_lhs <= 1e-12);
    CHECK(r.holds);
    CHECK(r.predicted_lower_left.has_value());
  }
  SUBCASE("S = 0.9 I with lambda1 = 0.1") {
    const PairOperator p = pair_frame_operator(scaled_identity(3, 1.0), id3, scaled_identity(3, 0.9), id3);
    const PerturbationReport r = perturbation_check(p, 0.1, 0.0, 1.0, 1.0);
    CHECK(r.spectral_lhs == doctest::Approx(0.1));
    CHECK(r.spectral_certified);
    CHECK(r.predicted_lower_right == doctest::Approx(0.81));
    CHECK(r.measured_lower_right == doctest::Approx(0.81));
    CHECK(*r.measured_lower_left == doctest::Approx(1.0));
    CHECK(r.holds);
  }
  SUBCASE("near-identity random pair") {
    const RandomInstance inst = random_instance(47, 4, 3, Structure::NearIdentityPair);
    REQUIRE(inst.partner.has_value());
    const PairOperator p = pair_frame_operator(inst.family, id3.Identity(4, 4), *inst.partner, id3.Identity(4, 4));
    const double lhs = op_norm(Operator::Identity(4, 4) - p.matrix);
    const double d1 = controlled_frame_bounds(inst.family, ControlPair::identity(4)).bounds.lambda_max;
    const double d2 = controlled_frame_bounds(*inst.partner, ControlPair::identity(4)).bounds.lambda_max;
    const PerturbationReport r = perturbation_check(p, lhs + 1e-6, 0.0, d1, d2);
    CHECK(r.holds);
    CHECK(r.measured_lower_right >= r.predicted_lower_right);
  }
  SUBCASE("invalid parameters") {
    const FrameFamily f = parseval(9, 3, 2);
    const PairOperator p = pair_frame_operator(f, id3, f, id3);
    CHECK(kind_of([&] { perturbation_check(p, 1.0, 0.0, 1, 1); }) == ErrorKind::InvalidParameters);
    CHECK(kind_of([&] { perturbation_check(p, 0.0, -1.0, 1, 1); }) == ErrorKind::InvalidParameters);
    CHECK(kind_of([&] { perturbation_check(p, 0.0, 0.0, 0, 1); }) == ErrorKind::InvalidParameters);
  }
  SUBCASE("a sampled violation is an error") {
    const PairOperator p = pair_frame_operator(scaled_identity(3, 1.0), id3, scaled_identity(3, 0.5), id3);
    CHECK(kind_of([&] { perturbation_check(p, 0.1, 0.0, 1.0, 1.0); }) == ErrorKind::HypothesisFailed);
  }
  SUBCASE("predicted bound shrinks as lambda1 grows") {
    const PairOperator p = pair_frame_operator(scaled_identity(3, 1.0), id3, scaled_identity(3, 0.9), id3);
    double prev = INFINITY;
    for (double l1 : {0.1, 0.3, 0.5, 0.9}) {
      const PerturbationReport r = perturbation_check(p, l1, 0.0, 1.0, 1.0);
      CHECK(r.predicted_lower_right < prev);
      prev = r.predicted_lower_right;
    }
  }
}
