#include "volgrow/systems.hpp"

#include <cmath>

namespace volgrow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr const char* kModule = "manifold-systems";

bool is_integer_matrix(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != std::round(m(i, j)) || !std::isfinite(m(i, j))) return false;
  return true;
}

// Exact inverse of a unimodular integer matrix: Eigen's inverse rounded back
// to integers, then verified by multiplication.
Mat unimodular_inverse(const Mat& a) {
  Mat inv = a.inverse();
  for (Eigen::Index j = 0; j < inv.cols(); ++j)
    for (Eigen::Index i = 0; i < inv.rows(); ++i) inv(i, j) = std::round(inv(i, j));
  if (!(a * inv).isIdentity(1e-9)) {
    throw ArgumentError(kModule, "SystemSpec", "matrix inverse is not integral; |det A| must be 1");
  }
  return inv;
}

void check_dimension(const SystemSpec& system, const TorusPoint& x, const char* op) {
  if (x.dimension() != system.dimension()) {
    throw ArgumentError(kModule, op,
                        "point dimension " + std::to_string(x.dimension()) +
                            " does not match system dimension " + std::to_string(system.dimension()));
  }
}

TorusPoint wrap_point(const Vec& v) { return TorusPoint(v); }

}  // namespace

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::kLinearToral: return "linear_toral";
    case SystemKind::kSkewProduct: return "skew_product";
    case SystemKind::kPerturbedCat: return "perturbed_cat";
  }
  return "unknown";
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "linear_toral") return SystemKind::kLinearToral;
  if (name == "skew_product") return SystemKind::kSkewProduct;
  if (name == "perturbed_cat") return SystemKind::kPerturbedCat;
  throw ArgumentError(kModule, "SystemSpec", "unknown system kind '" + name + "'");
}

SystemSpec::SystemSpec(SystemKind kind, int dimension, Mat matrix, double epsilon)
    : kind_(kind), dimension_(dimension), matrix_(std::move(matrix)), epsilon_(epsilon) {
  if (dimension_ < 1 || dimension_ > kMaxDim) {
    throw ArgumentError(kModule, "SystemSpec", "dimension must be in {1,...,4}");
  }
  if (!is_integer_matrix(matrix_)) {
    throw ArgumentError(kModule, "SystemSpec", "linear part must have integer entries");
  }
  const double det = matrix_.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9) {
    throw ArgumentError(kModule, "SystemSpec",
                        "|det A| must be 1 for a torus diffeomorphism, got det = " + std::to_string(det));
  }
  matrix_inverse_ = unimodular_inverse(matrix_);
  if (epsilon_ < 0.0) {
    throw ArgumentError(kModule, "SystemSpec", "epsilon must be nonnegative");
  }
}

SystemSpec SystemSpec::linear_toral(const Mat& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw ArgumentError(kModule, "SystemSpec", "matrix must be square");
  }
  return SystemSpec(SystemKind::kLinearToral, static_cast<int>(matrix.rows()), matrix, 0.0);
}

SystemSpec SystemSpec::identity(int dimension) {
  return linear_toral(Mat::Identity(dimension, dimension));
}

SystemSpec SystemSpec::cat_map() {
  Mat a(2, 2);
  a << 2, 1, 1, 1;
  return linear_toral(a);
}

SystemSpec SystemSpec::skew_product(double epsilon) {
  Mat a(2, 2);
  a << 2, 1, 1, 1;
  return skew_product(epsilon, a);
}

SystemSpec SystemSpec::skew_product(double epsilon, const Mat& base_matrix) {
  if (base_matrix.rows() != 2 || base_matrix.cols() != 2) {
    throw ArgumentError(kModule, "SystemSpec", "skew_product base must be 2x2");
  }
  return SystemSpec(SystemKind::kSkewProduct, 3, base_matrix, epsilon);
}

SystemSpec SystemSpec::perturbed_cat(double epsilon) {
  Mat a(2, 2);
  a << 2, 1, 1, 1;
  return perturbed_cat(epsilon, a);
}

SystemSpec SystemSpec::perturbed_cat(double epsilon, const Mat& matrix) {
  if (matrix.rows() != 2 || matrix.cols() != 2) {
    throw ArgumentError(kModule, "SystemSpec", "perturbed_cat matrix must be 2x2");
  }
  if (epsilon * kTwoPi >= 0.5) {
    throw ArgumentError(kModule, "SystemSpec",
                        "perturbed_cat requires eps * 2 pi < 0.5, got eps = " + std::to_string(epsilon));
  }
  SystemSpec spec(SystemKind::kPerturbedCat, 2, matrix, epsilon);
  // det Df depends only on y; scan a grid to confirm the diffeomorphism
  // condition instead of trusting the bound alone.
  Mat j(2, 2);
  for (int i = 0; i < 4096; ++i) {
    Vec p(2);
    p << 0.0, (i + 0.5) / 4096.0;
    jacobian_into(spec, TorusPoint(p), j);
    if (!(std::abs(j.determinant()) > 1e-6)) {
      throw ArgumentError(kModule, "SystemSpec", "perturbed_cat Jacobian determinant vanishes on grid");
    }
  }
  return spec;
}

TorusPoint evaluate(const SystemSpec& system, const TorusPoint& x) {
  check_dimension(system, x, "evaluate");
  switch (system.kind()) {
    case SystemKind::kLinearToral:
      return wrap_point(system.matrix() * x.coords());
    case SystemKind::kSkewProduct: {
      Vec out(3);
      out.head(2) = system.matrix() * x.coords().head(2);
      out[2] = x[2] + system.epsilon() * std::sin(kTwoPi * x[0]);
      return wrap_point(out);
    }
    case SystemKind::kPerturbedCat: {
      Vec out = system.matrix() * x.coords();
      out[0] += system.epsilon() * std::sin(kTwoPi * x[1]);
      return wrap_point(out);
    }
  }
  throw ArgumentError(kModule, "evaluate", "unreachable system kind");
}

TorusPoint evaluate_inverse(const SystemSpec& system, const TorusPoint& x) {
  check_dimension(system, x, "evaluate_inverse");
  switch (system.kind()) {
    case SystemKind::kLinearToral:
      return wrap_point(system.matrix_inverse() * x.coords());
    case SystemKind::kSkewProduct: {
      Vec out(3);
      out.head(2) = system.matrix_inverse() * x.coords().head(2);
      const double base_x = wrap_unit(out[0]);
      out[2] = x[2] - system.epsilon() * std::sin(kTwoPi * base_x);
      return wrap_point(out);
    }
    case SystemKind::kPerturbedCat: {
      // Newton iteration on the torus; the linear inverse is the seed and the
      // perturbation is a contraction, so a handful of steps suffice.
      Vec z = TorusPoint(system.matrix_inverse() * x.coords()).coords();
      Mat j(2, 2);
      for (int iter = 0; iter < 50; ++iter) {
        const TorusPoint zp(z);
        const TorusPoint fz = evaluate(system, zp);
        Vec residual(2);
        residual << wrap_signed(fz[0] - x[0]), wrap_signed(fz[1] - x[1]);
        if (residual.lpNorm<Eigen::Infinity>() <= 1e-14) return zp;
        jacobian_into(system, zp, j);
        z = zp.coords() - j.inverse() * residual;
        for (int i = 0; i < 2; ++i) z[i] = wrap_unit(z[i]);
      }
      throw NumericalError(kModule, "evaluate_inverse", "Newton iteration did not converge in 50 steps");
    }
  }
  throw ArgumentError(kModule, "evaluate_inverse", "unreachable system kind");
}

void jacobian_into(const SystemSpec& system, const TorusPoint& x, Mat& out) {
  switch (system.kind()) {
    case SystemKind::kLinearToral:
      out = system.matrix();
      return;
    case SystemKind::kSkewProduct:
      out.setZero(3, 3);
      out.topLeftCorner(2, 2) = system.matrix();
      out(2, 0) = system.epsilon() * kTwoPi * std::cos(kTwoPi * x[0]);
      out(2, 2) = 1.0;
      return;
    case SystemKind::kPerturbedCat:
      out = system.matrix();
      out(0, 1) += system.epsilon() * kTwoPi * std::cos(kTwoPi * x[1]);
      return;
  }
  throw ArgumentError(kModule, "jacobian", "unreachable system kind");
}

Jacobian jacobian(const SystemSpec& system, const TorusPoint& x) {
  check_dimension(system, x, "jacobian");
  Jacobian j;
  j.base_point = x;
  jacobian_into(system, x, j.entries);
  return j;
}

}  // namespace volgrow
