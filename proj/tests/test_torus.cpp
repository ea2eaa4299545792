#include <doctest.h>

#include "oracles.hpp"
#include "volgrow/torus.hpp"

using namespace volgrow;

TEST_CASE("wrap_unit reduces to [0,1) on edge cases") {
  CHECK(wrap_unit(0.0) == 0.0);
  CHECK(wrap_unit(1.0) == 0.0);
  CHECK(wrap_unit(5.0) == 0.0);
  CHECK(wrap_unit(-0.25) == doctest::Approx(0.75));
  CHECK(wrap_unit(1.75) == doctest::Approx(0.75));
  // Tiny negatives must not round up to 1.0.
  const double w = wrap_unit(-1e-18);
  CHECK(w >= 0.0);
  CHECK(w < 1.0);
  for (double x : {-10.3, -1.0, -0.5, 0.9999999999, 123.456}) {
    const double v = wrap_unit(x);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("circle distance basics") {
  CHECK(circle_distance(0.1, 0.1) == 0.0);
  CHECK(circle_distance(0.95, 0.05) == doctest::Approx(0.1));
  CHECK(circle_distance(0.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("torus_distance examples") {
  Vec a(2), b(2);
  a << 0.1, 0.1;
  CHECK(torus_distance(TorusPoint(a), TorusPoint(a)) == 0.0);
  a << 0.95, 0.5;
  b << 0.05, 0.5;
  CHECK(torus_distance(TorusPoint(a), TorusPoint(b)) == doctest::Approx(0.1));
  a << 0.0, 0.0;
  b << 0.5, 0.3;
  CHECK(torus_distance(TorusPoint(a), TorusPoint(b)) == doctest::Approx(0.5));
}

TEST_CASE("torus_distance is a metric on random triples") {
  rng::Prng prng(7, rng::Stream::kTests);
  for (int i = 0; i < 1000; ++i) {
    const TorusPoint x = oracles::random_point(prng, 3 * i, 3);
    const TorusPoint y = oracles::random_point(prng, 3 * i + 1, 3);
    const TorusPoint z = oracles::random_point(prng, 3 * i + 2, 3);
    const double xy = torus_distance(x, y);
    const double yx = torus_distance(y, x);
    CHECK(xy == yx);
    CHECK(xy >= 0.0);
    CHECK(xy <= 0.5);
    CHECK(torus_distance(x, z) <= xy + torus_distance(y, z) + 1e-15);
  }
}

TEST_CASE("TorusPoint validates dimension and wraps coordinates") {
  CHECK_THROWS_AS(TorusPoint(Vec()), ArgumentError);
  Vec raw(2);
  raw << 1.25, -0.25;
  const TorusPoint p(raw);
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.75));
  Vec other(3);
  other.setZero();
  CHECK_THROWS_AS(torus_distance(p, TorusPoint(other)), ArgumentError);
}
