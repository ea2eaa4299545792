#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volgrow/splitting.hpp"

using namespace volgrow;
using oracles::kCatLogExpansion;

namespace {
TorusPoint point2(double a, double b) {
  Vec v(2);
  v << a, b;
  return TorusPoint(v);
}

TorusPoint point3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return TorusPoint(v);
}

double line_angle(const Mat& block, const Eigen::Vector2d& direction) {
  return std::abs(1.0 - std::abs(block.col(0).dot(direction)));
}
}  // namespace

TEST_CASE("estimate_splitting recovers the cat map eigendirections") {
  const SplittingFrame frame =
      estimate_splitting(SystemSpec::cat_map(), point2(0.2, 0.7), 40, 40, {1, 1});
  CHECK(frame.stable_dim == 1);
  CHECK(frame.unstable_dim == 1);
  CHECK(line_angle(frame.blocks[0], oracles::cat_stable_direction()) < 1e-12);
  CHECK(line_angle(frame.blocks[1], oracles::cat_unstable_direction()) < 1e-12);
  frame.validate();
}

TEST_CASE("estimate_splitting on the product system") {
  const SplittingFrame frame =
      estimate_splitting(SystemSpec::skew_product(0.0), point3(0.37, 0.81, 0.55), 40, 40, {1, 1, 1});
  CHECK(frame.num_centers() == 1);
  // Stable / unstable live in the base plane; the center is the fiber axis.
  CHECK(std::abs(frame.blocks[0](2, 0)) < 1e-10);
  CHECK(std::abs(frame.blocks[2](2, 0)) < 1e-10);
  CHECK(std::abs(std::abs(frame.blocks[1](2, 0)) - 1.0) < 1e-10);
  Eigen::Vector2d stable_base(frame.blocks[0](0, 0), frame.blocks[0](1, 0));
  CHECK(std::abs(1.0 - std::abs(stable_base.normalized().dot(oracles::cat_stable_direction()))) < 1e-10);
}

TEST_CASE("estimate_splitting reports stagnation without domination") {
  CHECK_THROWS_AS(estimate_splitting(SystemSpec::identity(2), point2(0.1, 0.9), 40, 40, {1, 1}),
                  ConvergenceError);
  CHECK_THROWS_AS(
      estimate_splitting(SystemSpec::cat_map(), point2(0.1, 0.9), 0, 10, {1, 1}), ArgumentError);
  CHECK_THROWS_AS(
      estimate_splitting(SystemSpec::cat_map(), point2(0.1, 0.9), 10, 10, {1, 2}), ArgumentError);
}

TEST_CASE("verify_domination on the cat map matches the eigenvalue ratio") {
  DominationOptions options;
  options.samples = 50;
  const DominationReport report = verify_domination(SystemSpec::cat_map(), {1, 1}, 1, 1, 1, options);
  const double expected = (3.0 - std::sqrt(5.0)) / (3.0 + std::sqrt(5.0));
  CHECK(report.passed);
  CHECK(report.cone_invariant);
  CHECK(report.empirical_lambda == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("verify_domination on the product system sees the center bound") {
  DominationOptions options;
  options.samples = 20;
  const DominationReport report =
      verify_domination(SystemSpec::skew_product(0.0), {1, 1, 1}, 1, 1, 1, options);
  CHECK(report.passed);
  CHECK(report.empirical_lambda == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("verify_domination reports failure on the identity") {
  DominationOptions options;
  options.samples = 10;
  options.coordinate_fallback = true;
  const DominationReport report = verify_domination(SystemSpec::identity(2), {1, 1}, 1, 1, 1, options);
  CHECK_FALSE(report.passed);
  CHECK(report.empirical_lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.used_coordinate_fallback);
}

TEST_CASE("verify_domination passes on the perturbed cat") {
  DominationOptions options;
  options.samples = 20;
  const DominationReport report = verify_domination(SystemSpec::perturbed_cat(0.05), {1, 1}, 1, 1, 1, options);
  CHECK(report.passed);
  CHECK(report.empirical_lambda < 1.0);
  CHECK(report.cone_invariant);
}

TEST_CASE("subbundle_log_det on the built-ins") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.2, 0.7);

  // Label the cat splitting with no stable part: F^0 is then the whole space.
  const SplittingFrame all_center = estimate_splitting(cat, x, 40, 40, {1, 1}, 0, 1);
  CHECK(all_center.num_centers() == 1);
  CHECK(std::abs(subbundle_log_det(cat, x, 5, 0, all_center)) < 1e-10);
  CHECK(subbundle_log_det(cat, x, 10, 1, all_center) == doctest::Approx(10 * kCatLogExpansion).epsilon(1e-9));

  const SystemSpec skew = SystemSpec::skew_product(0.0);
  const TorusPoint y = point3(0.37, 0.81, 0.55);
  const SplittingFrame frame = estimate_splitting(skew, y, 40, 40, {1, 1, 1});
  CHECK(subbundle_log_det(skew, y, 10, 0, frame) == doctest::Approx(10 * kCatLogExpansion).epsilon(1e-8));
  CHECK(subbundle_log_det(skew, y, 10, 1, frame) == doctest::Approx(10 * kCatLogExpansion).epsilon(1e-8));
  CHECK_THROWS_AS(subbundle_log_det(skew, y, 10, 2, frame), ArgumentError);
  CHECK_THROWS_AS(subbundle_log_det(skew, point3(0.9, 0.9, 0.9), 10, 0, frame), ArgumentError);
}

TEST_CASE("grassmann_phi_gap basics") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.2, 0.7);
  Mat stable(2, 1), unstable(2, 1);
  stable.col(0) = oracles::cat_stable_direction();
  unstable.col(0) = oracles::cat_unstable_direction();

  CHECK(grassmann_phi_gap(cat, x, unstable, unstable, 100) == 0.0);  // bitwise

  // Past n ~ 16 the 1e-16 representation error of the stable direction meets
  // e^{2 lambda n} and the pushed line peels off toward the unstable
  // direction, so the exact gap lambda_s - lambda_u is only reachable at
  // moderate depths.
  CHECK(grassmann_phi_gap(cat, x, stable, unstable, 15) ==
        doctest::Approx(-2.0 * kCatLogExpansion).epsilon(1e-7));

  rng::Prng prng(47, rng::Stream::kTests);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat line = random_orthonormal_frame(2, 1, 47, static_cast<std::uint64_t>(trial));
    const double gap = grassmann_phi_gap(cat, x, line, unstable, 1000);
    CHECK(gap <= 1e-3);
  }

  Mat wide(2, 2);
  wide.setIdentity();
  CHECK_THROWS_AS(grassmann_phi_gap(cat, x, wide, unstable, 10), ArgumentError);
}

TEST_CASE("max_gap_over_grassmannian stays below the finite-n tolerance") {
  GrassmannGapOptions options;
  options.point_samples = 30;
  options.frame_samples = 10;
  CHECK(max_gap_over_grassmannian(SystemSpec::cat_map(), 200, options) <= 0.02);

  GrassmannGapOptions skew_options = options;
  skew_options.point_samples = 10;
  skew_options.frame_samples = 5;
  CHECK(max_gap_over_grassmannian(SystemSpec::skew_product(0.0), 200, skew_options) <= 0.02);

  // All restricted determinants of the identity equal 1.
  GrassmannGapOptions id_options;
  id_options.point_samples = 5;
  id_options.frame_samples = 4;
  id_options.coordinate_fallback = true;
  CHECK(max_gap_over_grassmannian(SystemSpec::identity(2), 50, id_options) == 0.0);
}

TEST_CASE("stable block contracts at the full rate for linear systems") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.41, 0.13);
  const SplittingFrame frame = estimate_splitting(cat, x, 40, 40, {1, 1});
  const double stable_log = restricted_log_det(cat, x, 50, frame.blocks[0]);
  CHECK(stable_log <= -0.9 * 50.0 * kCatLogExpansion);
}

TEST_CASE("bundle maxima track the cocycle maximum on the product system") {
  const SystemSpec skew = SystemSpec::skew_product(0.0);
  rng::Prng prng(53, rng::Stream::kTests);
  const long long n = 200;
  for (int trial = 0; trial < 20; ++trial) {
    const TorusPoint x = oracles::random_point(prng, static_cast<std::uint64_t>(trial), 3);
    const SplittingFrame frame = estimate_splitting(skew, x, 40, 40, {1, 1, 1});
    double best_bundle = -1e300;
    for (int i = 0; i <= frame.num_centers(); ++i) {
      best_bundle = std::max(best_bundle, subbundle_log_det(skew, x, n, i, frame));
    }
    const CocycleProduct c = accumulate(skew, x, n);
    const double max_v = max_subspace_log_det(c.log_singular);
    CHECK(std::abs(best_bundle - max_v) / static_cast<double>(n) <= 0.02);
  }
}
