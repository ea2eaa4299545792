#ifndef VOLGROW_TORUS_HPP
#define VOLGROW_TORUS_HPP

#include <cmath>
#include <cstdint>

#include "volgrow/rng.hpp"
#include "volgrow/types.hpp"

namespace volgrow {

// Reduce to [0, 1). The guard catches x - floor(x) rounding up to 1.0 for
// tiny negative inputs.
inline double wrap_unit(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w = 0.0;
  return w;
}

// Signed representative in [-0.5, 0.5), used for Newton steps on the torus.
inline double wrap_signed(double x) {
  double w = x - std::floor(x + 0.5);
  if (w >= 0.5) w = -0.5;
  return w;
}

inline double circle_distance(double a, double b) {
  const double t = std::abs(a - b);
  return std::min(t, 1.0 - t);
}

// A point of T^d, d in {1,..,4}; coordinates always reduced to [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1 || coords_.size() > kMaxDim) {
      throw ArgumentError("manifold-systems", "TorusPoint",
                          "dimension must be between 1 and 4, got " + std::to_string(coords_.size()));
    }
    for (Eigen::Index i = 0; i < coords_.size(); ++i) coords_[i] = wrap_unit(coords_[i]);
  }

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vec coords_;
};

// L-infinity product circle metric; value in [0, 0.5].
inline double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.dimension() != b.dimension()) {
    throw ArgumentError("manifold-systems", "torus_distance", "dimension mismatch");
  }
  double d = 0.0;
  for (int i = 0; i < a.dimension(); ++i) d = std::max(d, circle_distance(a[i], b[i]));
  return d;
}

inline TorusPoint sample_torus_point(const rng::Prng& prng, std::uint64_t counter, int dim) {
  Vec c(dim);
  for (int i = 0; i < dim; ++i) c[i] = prng.uniform(counter, static_cast<std::uint32_t>(i));
  return TorusPoint(c);
}

}  // namespace volgrow

#endif  // VOLGROW_TORUS_HPP
