#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volgrow/bowen.hpp"

using namespace volgrow;
using oracles::kCatLogExpansion;

namespace {
TorusPoint point2(double a, double b) {
  Vec v(2);
  v << a, b;
  return TorusPoint(v);
}
}  // namespace

TEST_CASE("in_dynamical_ball basics") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.0, 0.0);
  CHECK(in_dynamical_ball(cat, {x, 50, 0.05}, x));

  // Identity map: the ball condition degenerates to the static distance.
  const SystemSpec id2 = SystemSpec::identity(2);
  CHECK(in_dynamical_ball(id2, {x, 37, 0.3}, point2(0.2, 0.1)));
  CHECK_FALSE(in_dynamical_ball(id2, {x, 37, 0.3}, point2(0.5, 0.1)));

  // An offset along the stable direction contracts, so it stays in the ball
  // for many steps (until roundoff feeds the unstable direction).
  const Eigen::Vector2d vs = oracles::cat_stable_direction();
  const double scale = 0.9 * 0.05 / std::max(std::abs(vs[0]), std::abs(vs[1]));
  const TorusPoint y = point2(scale * vs[0], scale * vs[1]);
  CHECK(in_dynamical_ball(cat, {x, 25, 0.05}, y));
}

TEST_CASE("in_dynamical_ball is monotone in n and delta") {
  const SystemSpec pert = SystemSpec::perturbed_cat(0.05);
  rng::Prng prng(59, rng::Stream::kTests);
  for (int trial = 0; trial < 200; ++trial) {
    const TorusPoint x = oracles::random_point(prng, 2 * trial, 2);
    Vec offset(2);
    offset << x[0] + 0.04 * (prng.uniform(trial, 4) - 0.5), x[1] + 0.04 * (prng.uniform(trial, 5) - 0.5);
    const TorusPoint y{offset};
    for (long long n = 2; n <= 8; ++n) {
      if (in_dynamical_ball(pert, {x, n, 0.05}, y)) {
        CHECK(in_dynamical_ball(pert, {x, n - 1, 0.05}, y));
        CHECK(in_dynamical_ball(pert, {x, n, 0.08}, y));
      }
    }
  }
}

TEST_CASE("spanning and separated counts on the identity") {
  const SystemSpec id2 = SystemSpec::identity(2);
  const EntropyEstimate est = spanning_entropy(id2, 50, 0.1, 256);
  // Static greedy delta-cover: value decays like log(N)/n, rate is zero.
  CHECK(est.cover_size == 81);
  CHECK(est.value == doctest::Approx(std::log(81.0) / 50.0));
  const EntropyEstimate early = spanning_entropy(id2, 5, 0.1, 256);
  CHECK(early.cover_size == est.cover_size);  // balls do not shrink with n

  const EntropyLadder ladder = entropy_rate_ladder(id2, 50, 0.1, 256, CoverMethod::kSpanning);
  CHECK(ladder.rate == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ladder.rate <= 0.02);
}

TEST_CASE("sandwich: separated(2 delta) <= spanning(delta) <= separated(delta)") {
  const SystemSpec cat = SystemSpec::cat_map();
  const EntropyEstimate span = spanning_entropy(cat, 3, 0.1, 256);
  const EntropyEstimate sep = separated_entropy(cat, 3, 0.1, 256);
  const EntropyEstimate sep2 = separated_entropy(cat, 3, 0.2, 256);
  CHECK(sep2.cover_size <= span.cover_size);
  CHECK(span.cover_size <= sep.cover_size);
}

TEST_CASE("grid preconditions") {
  const SystemSpec cat = SystemSpec::cat_map();
  CHECK_THROWS_AS(spanning_entropy(cat, 5, 0.6, 256), ArgumentError);   // delta < 0.5
  CHECK_THROWS_AS(spanning_entropy(cat, 5, 0.02, 256), ArgumentError);  // < 10 points per delta
  CHECK_THROWS_AS(spanning_entropy(cat, 5, 0.05, 8192), ArgumentError); // grid budget
  CHECK_THROWS_AS(separated_entropy(cat, 0, 0.1, 256), ArgumentError);
}

TEST_CASE("cat ladder rate approaches the expansion rate") {
  const EntropyLadder ladder =
      entropy_rate_ladder(SystemSpec::cat_map(), 8, 0.05, 512, CoverMethod::kSpanning);
  CHECK(ladder.rate == doctest::Approx(kCatLogExpansion).epsilon(0.12));
  CHECK(ladder.window.size() >= 3);
}

TEST_CASE("ball growth on the identity is the exact box volume") {
  const SystemSpec id2 = SystemSpec::identity(2);
  BallGrowthOptions options;
  options.n_values = {1, 2, 3};
  options.delta = 0.1;
  options.mc_count = 5000;
  options.seed = 3;
  const BallGrowthReport report = ball_volume_growth(id2, point2(0.3, 0.6), options);
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    CHECK(report.log_integrals[i] == doctest::Approx(2.0 * std::log(0.2)).epsilon(1e-13));
    CHECK(report.accepted_counts[i] == options.mc_count);  // every box sample is in the ball
    CHECK_FALSE(report.unreliable[i]);
  }
  CHECK(report.accepted_fraction == 1.0);
}

TEST_CASE("cat ball growth is flat for the unstable line and the subspace max") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint center = point2(0.3, 0.6);

  BallGrowthOptions options;
  options.n_values = {8, 9, 10, 11, 12};
  options.delta = 0.05;
  options.mc_count = 4000000;
  options.seed = 7;
  options.bundle = BundleChoice::kMaxOverV;
  const BallGrowthReport max_v = ball_volume_growth(cat, center, options);
  for (std::size_t i = 1; i < max_v.n_values.size(); ++i) {
    CHECK(std::abs(max_v.anchored_rates[i]) <= 0.05);
  }
  CHECK(std::abs(max_v.fitted_rate) <= 0.05);

  // Fixed unstable bundle: expansion e^{n lambda} cancels the ball shrinkage.
  options.bundle = BundleChoice::kFixedFi;
  options.bundle_index = 1;
  options.dims = {1, 1};
  options.stable_dim = 0;  // label both directions as (center, unstable)
  options.unstable_dim = 1;
  const BallGrowthReport fixed = ball_volume_growth(cat, center, options);
  for (std::size_t i = 1; i < fixed.n_values.size(); ++i) {
    CHECK(std::abs(fixed.anchored_rates[i]) <= 0.05);
  }
}

TEST_CASE("empty estimates are recorded as -infinity, not raised") {
  const SystemSpec cat = SystemSpec::cat_map();
  BallGrowthOptions options;
  options.n_values = {30};
  options.delta = 0.05;
  options.mc_count = 1000;  // far below the ball volume at n = 30
  options.seed = 1;
  const BallGrowthReport report = ball_volume_growth(cat, point2(0.3, 0.6), options);
  CHECK(report.log_integrals[0] == -std::numeric_limits<double>::infinity());
  CHECK(report.accepted_counts[0] == 0);
  CHECK(report.unreliable[0]);
}

TEST_CASE("lower bound holds at most Lebesgue centers for the product system") {
  const SystemSpec skew = SystemSpec::skew_product(0.0);
  rng::Prng prng(61, rng::Stream::kBallCenters);
  BallGrowthOptions options;
  options.n_values = {10, 11, 12};
  options.delta = 0.08;
  options.mc_count = 2000000;
  options.seed = 61;
  options.bundle = BundleChoice::kFixedFi;
  options.bundle_index = 0;  // nonnegative-exponent bundle: center + unstable
  options.dims = {1, 1, 1};

  int passing = 0;
  const int centers = 20;
  for (int c = 0; c < centers; ++c) {
    const TorusPoint center = oracles::random_point(prng, static_cast<std::uint64_t>(c), 3);
    const BallGrowthReport report = ball_volume_growth(skew, center, options);
    bool ok = true;
    for (std::size_t i = 1; i < report.n_values.size(); ++i) {
      if (!std::isfinite(report.anchored_rates[i]) || report.anchored_rates[i] < -0.05) ok = false;
    }
    if (ok) ++passing;
  }
  CHECK(passing >= centers / 2);
}

TEST_CASE("ball growth argument validation") {
  const SystemSpec cat = SystemSpec::cat_map();
  BallGrowthOptions options;
  options.n_values = {5, 4};
  CHECK_THROWS_AS(ball_volume_growth(cat, point2(0.1, 0.1), options), ArgumentError);
  options.n_values = {5};
  options.mc_count = 10;
  CHECK_THROWS_AS(ball_volume_growth(cat, point2(0.1, 0.1), options), ArgumentError);
  options.mc_count = 1000;
  options.delta = 0.7;
  CHECK_THROWS_AS(ball_volume_growth(cat, point2(0.1, 0.1), options), ArgumentError);
}
