#include "volgrow/cocycle.hpp"

#include <algorithm>
#include <cmath>

namespace volgrow {

namespace {
constexpr const char* kModule = "cocycle-engine";

void check_orthonormal_frame(const Mat& frame, const char* op) {
  if (frame.cols() < 1 || frame.cols() > frame.rows()) {
    throw ArgumentError(kModule, op, "frame must have 1..d orthonormal columns");
  }
  Mat gram = frame.transpose() * frame;
  gram -= Mat::Identity(frame.cols(), frame.cols());
  if (gram.cwiseAbs().maxCoeff() > 1e-10) {
    throw ArgumentError(kModule, op, "frame columns are not orthonormal within 1e-10");
  }
}

}  // namespace

Mat CocycleProduct::reconstruct() const {
  Mat scaled = left_orthogonal;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) scaled.col(j) *= std::exp(log_singular[j]);
  return scaled * right_orthogonal.transpose();
}

// One-sided Jacobi on M = G diag(exp(g)). For a column pair (p, q) with
// g_p >= g_q let r = exp(g_q - g_p) <= 1 and gamma = <G_p, G_q>. The rotation
// angle satisfies tan(2t) = 2 gamma r / (1 - r^2); the stable closed forms
//
//   tan t       = 2 gamma r / ((1 - r^2) + hypot(1 - r^2, 2 gamma r))
//   tan t / r   = 2 gamma   / ((1 - r^2) + hypot(1 - r^2, 2 gamma r))
//
// stay finite as r -> 0 (where the update degenerates to Gram-Schmidt of the
// small column against the large one, which is exactly what extreme grading
// requires). Column updates are evaluated in each column's own scale, so
// nothing larger than O(1) is ever exponentiated.
void scaled_jacobi_svd(Mat& g_cols, Vec& g_logs, Mat& v_accum) {
  const int k = static_cast<int>(g_cols.cols());
  constexpr int kMaxSweeps = 40;
  constexpr double kTol = 1e-14;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double worst = 0.0;
    for (int p = 0; p < k - 1; ++p) {
      for (int q = p + 1; q < k; ++q) {
        if (g_logs[q] > g_logs[p]) {
          g_cols.col(p).swap(g_cols.col(q));
          v_accum.col(p).swap(v_accum.col(q));
          std::swap(g_logs[p], g_logs[q]);
        }
        const double gamma = g_cols.col(p).dot(g_cols.col(q));
        worst = std::max(worst, std::abs(gamma));
        if (std::abs(gamma) < kTol) continue;

        const double r = std::exp(g_logs[q] - g_logs[p]);  // in [0, 1]
        const double a = (1.0 - r) * (1.0 + r);
        const double b = 2.0 * gamma * r;
        const double denom = a + std::hypot(a, b);
        double t, t_over_r;
        if (denom > 0.0) {
          t = b / denom;
          t_over_r = 2.0 * gamma / denom;
        } else {
          // r == 1 with equal scales: 45-degree rotation.
          t = gamma >= 0.0 ? 1.0 : -1.0;
          t_over_r = t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const double s_over_r = c * t_over_r;

        const Vec big = c * g_cols.col(p) + (s * r) * g_cols.col(q);
        const Vec small = c * g_cols.col(q) - s_over_r * g_cols.col(p);
        const double norm_big = big.norm();
        const double norm_small = small.norm();
        if (!(norm_big > 0.0) || !(norm_small > 0.0)) {
          throw NumericalError(kModule, "scaled_jacobi_svd", "column collapse during re-factorization");
        }
        g_cols.col(p) = big / norm_big;
        g_cols.col(q) = small / norm_small;
        g_logs[p] += std::log(norm_big);
        g_logs[q] += std::log(norm_small);

        const Vec vp = c * v_accum.col(p) + s * v_accum.col(q);
        const Vec vq = c * v_accum.col(q) - s * v_accum.col(p);
        v_accum.col(p) = vp;
        v_accum.col(q) = vq;
      }
    }
    if (worst < kTol) break;
  }

  // Jacobi leaves the columns ordered pairwise; one last pass fixes any
  // remaining ties from rotations late in the sweep.
  for (int p = 0; p < k - 1; ++p) {
    for (int q = p + 1; q < k; ++q) {
      if (g_logs[q] > g_logs[p]) {
        g_cols.col(p).swap(g_cols.col(q));
        v_accum.col(p).swap(v_accum.col(q));
        std::swap(g_logs[p], g_logs[q]);
      }
    }
  }
}

CocycleAccumulator::CocycleAccumulator(const SystemSpec& system, TorusPoint x, CocycleOptions options)
    : system_(&system), base_(x), point_(std::move(x)), options_(options) {
  if (base_.dimension() != system.dimension()) {
    throw ArgumentError(kModule, "accumulate", "point dimension does not match system");
  }
  if (options_.refresh_every < 1 || options_.refresh_every > 8) {
    throw ArgumentError(kModule, "accumulate", "refresh_every must be in {1,...,8}");
  }
  const int d = system.dimension();
  left_ = Mat::Identity(d, d);
  logs_ = Vec::Zero(d);
  right_ = Mat::Identity(d, d);
  pending_ = Mat::Identity(d, d);
  pending_count_ = 0;
}

void CocycleAccumulator::flush_pending() const {
  if (pending_count_ == 0) return;
  Mat b = pending_ * left_;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const double norm = b.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalError(kModule, "accumulate", "degenerate column while re-factorizing", steps_);
    }
    b.col(j) /= norm;
    logs_[j] += std::log(norm);
  }
  left_ = b;
  scaled_jacobi_svd(left_, logs_, right_);
  pending_ = Mat::Identity(left_.rows(), left_.rows());
  pending_count_ = 0;
}

void CocycleAccumulator::advance(long long steps) {
  Mat j(system_->dimension(), system_->dimension());
  for (long long s = 0; s < steps; ++s) {
    jacobian_into(*system_, point_, j);
    if (!j.allFinite()) {
      throw NumericalError(kModule, "accumulate", "non-finite Jacobian entry at step " + std::to_string(steps_),
                           steps_);
    }
    pending_ = j * pending_;
    ++pending_count_;
    point_ = evaluate(*system_, point_);
    ++steps_;
    if (pending_count_ >= options_.refresh_every) flush_pending();
  }
}

const Vec& CocycleAccumulator::log_singular() const {
  flush_pending();
  return logs_;
}

CocycleProduct CocycleAccumulator::product() const {
  flush_pending();
  CocycleProduct out;
  out.left_orthogonal = left_;
  out.log_singular = logs_;
  out.right_orthogonal = right_;
  out.steps = steps_;
  out.base_point = base_;
  return out;
}

CocycleProduct accumulate(const SystemSpec& system, const TorusPoint& x, long long n,
                          CocycleOptions options) {
  if (n < 0) throw ArgumentError(kModule, "accumulate", "n must be nonnegative");
  CocycleAccumulator acc(system, x, options);
  acc.advance(n);
  return acc.product();
}

std::vector<double> log_singular_values(const CocycleProduct& c) {
  return std::vector<double>(c.log_singular.data(), c.log_singular.data() + c.log_singular.size());
}

LyapunovEstimate lyapunov_spectrum(const SystemSpec& system, const TorusPoint& x, long long n) {
  if (n < 1) throw ArgumentError(kModule, "lyapunov_spectrum", "n must be >= 1");
  const CocycleProduct c = accumulate(system, x, n);
  LyapunovEstimate est;
  est.exponents = c.log_singular / static_cast<double>(n);
  est.orbit_length = n;
  est.base_point = x;
  return est;
}

RestrictedLogDetAccumulator::RestrictedLogDetAccumulator(const SystemSpec& system, TorusPoint x,
                                                         Mat frame)
    : system_(&system), point_(std::move(x)), frame_(std::move(frame)) {
  if (frame_.rows() != system.dimension()) {
    throw ArgumentError(kModule, "restricted_log_det", "frame rows must match system dimension");
  }
  check_orthonormal_frame(frame_, "restricted_log_det");
}

void RestrictedLogDetAccumulator::advance(long long steps) {
  const int d = system_->dimension();
  const int k = static_cast<int>(frame_.cols());
  Mat j(d, d);
  for (long long s = 0; s < steps; ++s) {
    jacobian_into(*system_, point_, j);
    Mat pushed = j * frame_;
    Eigen::HouseholderQR<Mat> qr(pushed);
    double step_log = 0.0;
    for (int i = 0; i < k; ++i) step_log += std::log(std::abs(qr.matrixQR()(i, i)));
    if (!std::isfinite(step_log) || step_log < -300.0) {
      throw NumericalError(kModule, "restricted_log_det",
                           "rank collapse at step " + std::to_string(steps_), steps_);
    }
    total_ += step_log;
    frame_ = qr.householderQ() * Mat::Identity(d, k);
    point_ = evaluate(*system_, point_);
    ++steps_;
  }
}

double restricted_log_det(const SystemSpec& system, const TorusPoint& x, long long n,
                          const Mat& frame) {
  if (n < 0) throw ArgumentError(kModule, "restricted_log_det", "n must be nonnegative");
  RestrictedLogDetAccumulator acc(system, x, frame);
  acc.advance(n);
  return acc.value();
}

}  // namespace volgrow
