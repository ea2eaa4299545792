#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volgrow/cocycle.hpp"

using namespace volgrow;
using oracles::kCatLogExpansion;

namespace {
TorusPoint point2(double a, double b) {
  Vec v(2);
  v << a, b;
  return TorusPoint(v);
}
}  // namespace

TEST_CASE("scaled jacobi svd agrees with dense SVD on representable matrices") {
  rng::Prng prng(23, rng::Stream::kTests);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 1 + static_cast<int>(prng.uniform(trial, 6) * 4.0) % 4;
    Mat m(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r)
        m(r, c) = 2.0 * prng.uniform(trial * 16 + c * 4 + r, 7) - 1.0;
    if (std::abs(m.determinant()) < 1e-3) continue;
    // Column scales spanning ~26 orders of magnitude.
    Vec logs(d);
    Mat g = m;
    for (int c = 0; c < d; ++c) {
      const double scale = 60.0 * (prng.uniform(trial * 4 + c, 5) - 0.5);
      logs[c] = scale + std::log(g.col(c).norm());
      g.col(c).normalize();
    }
    Mat v = Mat::Identity(d, d);
    Mat g_out = g;
    Vec logs_out = logs;
    scaled_jacobi_svd(g_out, logs_out, v);

    Mat scaled = g;
    for (int c = 0; c < d; ++c) scaled.col(c) *= std::exp(logs[c]);
    const auto expected = oracles::log_singular_values_direct(scaled);
    for (int i = 0; i < d; ++i) {
      CHECK(logs_out[i] == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-9));
    }
    // Factors reconstruct the matrix.
    Mat recon = g_out;
    for (int c = 0; c < d; ++c) recon.col(c) *= std::exp(logs_out[c]);
    recon = recon * v.transpose();
    CHECK((recon - scaled).norm() / scaled.norm() < 1e-10);
  }
}

TEST_CASE("accumulate on the cat map gives exact log singular values") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.2, 0.7);

  const CocycleProduct c0 = accumulate(cat, x, 0);
  CHECK(c0.log_singular[0] == 0.0);
  CHECK(c0.log_singular[1] == 0.0);

  const CocycleProduct c1 = accumulate(cat, x, 1);
  CHECK(c1.log_singular[0] == doctest::Approx(kCatLogExpansion).epsilon(1e-12));
  CHECK(c1.log_singular[1] == doctest::Approx(-kCatLogExpansion).epsilon(1e-12));

  const CocycleProduct c10 = accumulate(cat, x, 10);
  CHECK(c10.log_singular[0] == doctest::Approx(10 * kCatLogExpansion).epsilon(1e-9));
  CHECK(c10.log_singular[1] == doctest::Approx(-10 * kCatLogExpansion).epsilon(1e-9));

  const CocycleProduct c5 = accumulate(cat, x, 5);
  const auto logs = log_singular_values(c5);
  CHECK(logs[0] == doctest::Approx(4.81211825059603).epsilon(1e-9));
  CHECK(logs[1] == doctest::Approx(-4.81211825059603).epsilon(1e-9));
}

TEST_CASE("factors stay orthogonal and reconstruct the product") {
  const SystemSpec systems[] = {SystemSpec::cat_map(), SystemSpec::skew_product(0.1),
                                SystemSpec::perturbed_cat(0.05)};
  rng::Prng prng(29, rng::Stream::kTests);
  for (const SystemSpec& system : systems) {
    const TorusPoint x = oracles::random_point(prng, 1, system.dimension());
    const CocycleProduct c = accumulate(system, x, 8);
    const int d = system.dimension();
    CHECK((c.left_orthogonal.transpose() * c.left_orthogonal - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((c.right_orthogonal.transpose() * c.right_orthogonal - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-10);
    const Mat direct = oracles::direct_product(system, x, 8);
    CHECK((c.reconstruct() - direct).norm() / direct.norm() < 1e-8);
  }
  // Orthogonality must also survive long orbits.
  const CocycleProduct big = accumulate(SystemSpec::cat_map(), point2(0.2, 0.7), 10000);
  CHECK((big.left_orthogonal.transpose() * big.left_orthogonal - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(
      (big.right_orthogonal.transpose() * big.right_orthogonal - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
      1e-10);
}

TEST_CASE("cocycle property: factored logs match direct products") {
  rng::Prng prng(31, rng::Stream::kTests);

  // Integer systems keep the direct product exact, so the whole spectrum is
  // checkable out to n = 20.
  for (int trial = 0; trial < 20; ++trial) {
    const Mat a = oracles::random_unimodular_2x2(prng, static_cast<std::uint64_t>(trial));
    const SystemSpec system = SystemSpec::linear_toral(a);
    const TorusPoint x = oracles::random_point(prng, 100 + trial, 2);
    const Mat direct = oracles::direct_product(system, x, 20);
    if (direct.cwiseAbs().maxCoeff() > 1e12) continue;  // keep integer powers exact
    const CocycleProduct c = accumulate(system, x, 20);
    const auto expected = oracles::log_singular_values_direct(direct);
    for (int i = 0; i < 2; ++i) {
      CHECK(c.log_singular[i] == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-8));
    }
  }

  // Non-integer Jacobians: the direct double-precision product loses the
  // small singular values past n ~ 8, so cap the full-spectrum check there.
  const SystemSpec systems[] = {SystemSpec::skew_product(0.1), SystemSpec::perturbed_cat(0.05)};
  for (const SystemSpec& system : systems) {
    for (int trial = 0; trial < 10; ++trial) {
      const TorusPoint x = oracles::random_point(prng, 200 + trial, system.dimension());
      const long long n = 2 + trial % 7;
      const CocycleProduct c = accumulate(system, x, n);
      const auto expected = oracles::log_singular_values_direct(oracles::direct_product(system, x, n));
      for (int i = 0; i < system.dimension(); ++i) {
        CHECK(c.log_singular[i] == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("sum of log singular values tracks the determinant along the orbit") {
  const SystemSpec pert = SystemSpec::perturbed_cat(0.05);
  const TorusPoint x = point2(0.37, 0.81);
  const long long n = 500;
  const CocycleProduct c = accumulate(pert, x, n);
  double det_sum = 0.0;
  TorusPoint p = x;
  for (long long i = 0; i < n; ++i) {
    det_sum += std::log(std::abs(jacobian(pert, p).entries.determinant()));
    p = evaluate(pert, p);
  }
  CHECK(std::abs(c.log_singular.sum() - det_sum) <= 1e-8 * static_cast<double>(n));
}

TEST_CASE("refactorization cadence does not move the log singular values") {
  const SystemSpec pert = SystemSpec::perturbed_cat(0.05);
  const TorusPoint x = point2(0.37, 0.81);
  const long long n = 200;
  const CocycleProduct every_step = accumulate(pert, x, n, CocycleOptions{1});
  const CocycleProduct every_five = accumulate(pert, x, n, CocycleOptions{5});
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(every_step.log_singular[i] - every_five.log_singular[i]) <=
          1e-8 * static_cast<double>(n));
  }
}

TEST_CASE("lyapunov spectra of the built-ins") {
  const SystemSpec identity = SystemSpec::identity(2);
  const LyapunovEstimate flat = lyapunov_spectrum(identity, point2(0.3, 0.4), 100);
  CHECK(flat.exponents[0] == 0.0);
  CHECK(flat.exponents[1] == 0.0);

  const LyapunovEstimate cat = lyapunov_spectrum(SystemSpec::cat_map(), point2(0.2, 0.7), 10000);
  CHECK(cat.exponents[0] == doctest::Approx(kCatLogExpansion).epsilon(1e-6));
  CHECK(cat.exponents[1] == doctest::Approx(-kCatLogExpansion).epsilon(1e-6));

  const SystemSpec skew = SystemSpec::skew_product(0.1);
  Vec y(3);
  y << 0.37, 0.81, 0.55;
  const LyapunovEstimate spectrum = lyapunov_spectrum(skew, TorusPoint(y), 10000);
  CHECK(spectrum.exponents[0] == doctest::Approx(kCatLogExpansion).epsilon(1e-3));
  CHECK(std::abs(spectrum.exponents[1]) <= 1e-3);
  CHECK(spectrum.exponents[2] == doctest::Approx(-kCatLogExpansion).epsilon(1e-3));

  // Sum of exponents equals the orbit average of log |det Df|; volume
  // preserving here, so zero.
  CHECK(std::abs(spectrum.exponents.sum()) < 1e-9);
}

TEST_CASE("restricted_log_det along eigendirections and the full space") {
  const SystemSpec cat = SystemSpec::cat_map();
  const TorusPoint x = point2(0.2, 0.7);

  Mat full = Mat::Identity(2, 2);
  CHECK(std::abs(restricted_log_det(cat, x, 3, full)) < 1e-12);

  Mat unstable(2, 1), stable(2, 1);
  unstable.col(0) = oracles::cat_unstable_direction();
  stable.col(0) = oracles::cat_stable_direction();
  CHECK(restricted_log_det(cat, x, 10, unstable) == doctest::Approx(10 * kCatLogExpansion).epsilon(1e-9));
  CHECK(restricted_log_det(cat, x, 10, stable) == doctest::Approx(-10 * kCatLogExpansion).epsilon(1e-9));
}

TEST_CASE("restricted_log_det equals the determinant sum for the full space") {
  const SystemSpec pert = SystemSpec::perturbed_cat(0.05);
  const TorusPoint x = point2(0.61, 0.17);
  const long long n = 300;
  const double full = restricted_log_det(pert, x, n, Mat::Identity(2, 2));
  double det_sum = 0.0;
  TorusPoint p = x;
  for (long long i = 0; i < n; ++i) {
    det_sum += std::log(std::abs(jacobian(pert, p).entries.determinant()));
    p = evaluate(pert, p);
  }
  CHECK(std::abs(full - det_sum) <= 1e-8 * static_cast<double>(n));
}

TEST_CASE("restricted growth of a line never beats the top singular value") {
  rng::Prng prng(37, rng::Stream::kTests);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat a = oracles::random_unimodular_2x2(prng, static_cast<std::uint64_t>(trial));
    const SystemSpec system = SystemSpec::linear_toral(a);
    const TorusPoint x = oracles::random_point(prng, 300 + trial, 2);
    const double angle = prng.uniform(400 + trial, 2) * 6.283185307179586;
    Mat line(2, 1);
    line << std::cos(angle), std::sin(angle);
    const long long n = 1 + trial % 10;
    const double restricted = restricted_log_det(system, x, n, line);
    const CocycleProduct c = accumulate(system, x, n);
    CHECK(restricted <= c.log_singular[0] + 1e-10);
  }
}

TEST_CASE("restricted_log_det rejects bad frames") {
  const SystemSpec cat = SystemSpec::cat_map();
  Mat skewed(2, 1);
  skewed << 1.0, 1.0;  // not unit
  CHECK_THROWS_AS(restricted_log_det(cat, point2(0.1, 0.2), 5, skewed), ArgumentError);
  CHECK_THROWS_AS(accumulate(cat, point2(0.1, 0.2), -1), ArgumentError);
}
