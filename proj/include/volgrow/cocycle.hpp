#ifndef VOLGROW_COCYCLE_HPP
#define VOLGROW_COCYCLE_HPP

#include <vector>

#include "volgrow/systems.hpp"
#include "volgrow/torus.hpp"
#include "volgrow/types.hpp"

namespace volgrow {

// Factored n-step derivative along an orbit:
//
//   Df^n_x = left_orthogonal * diag(exp(log_singular)) * right_orthogonal^T
//
// The diagonal is kept in log form, so the representation never overflows
// even when log sigma_1 is in the thousands.
struct CocycleProduct {
  Mat left_orthogonal;
  Vec log_singular;  // sorted descending
  Mat right_orthogonal;
  long long steps = 0;
  TorusPoint base_point;

  // Only meaningful while exp(log_singular) is representable (small n).
  Mat reconstruct() const;
};

struct LyapunovEstimate {
  Vec exponents;  // sorted descending
  long long orbit_length = 0;
  TorusPoint base_point;
};

struct CocycleOptions {
  // Number of Jacobians multiplied together between re-factorizations.
  // 1 keeps the factors exact at every step; small values > 1 are only used
  // to cross-check that the refactorization does not drift.
  int refresh_every = 1;
};

// SVD of a column-scaled matrix G * diag(exp(g)) by one-sided Jacobi
// rotations carried out entirely in the scaled representation. G must have
// unit columns on entry; on exit G has orthonormal columns (the left factor),
// g holds the log singular values sorted descending, and v_accum is
// post-multiplied by the applied rotations. The log scales may differ by
// thousands; only scale *ratios* <= 1 are ever exponentiated.
void scaled_jacobi_svd(Mat& g_cols, Vec& g_logs, Mat& v_accum);

// Stepwise accumulation of the derivative cocycle with per-step
// re-factorization; exposes the log singular values at every intermediate n.
class CocycleAccumulator {
 public:
  CocycleAccumulator(const SystemSpec& system, TorusPoint x, CocycleOptions options = {});

  void advance(long long steps = 1);

  long long steps() const { return steps_; }
  const Vec& log_singular() const;
  const TorusPoint& current_point() const { return point_; }
  CocycleProduct product() const;

 private:
  void flush_pending() const;

  const SystemSpec* system_;
  TorusPoint base_;
  TorusPoint point_;
  CocycleOptions options_;
  long long steps_ = 0;

  mutable Mat left_;       // unit (orthonormal after flush) columns
  mutable Vec logs_;
  mutable Mat right_;
  mutable Mat pending_;    // product of Jacobians not yet folded in
  mutable int pending_count_ = 0;
};

CocycleProduct accumulate(const SystemSpec& system, const TorusPoint& x, long long n,
                          CocycleOptions options = {});

std::vector<double> log_singular_values(const CocycleProduct& c);

LyapunovEstimate lyapunov_spectrum(const SystemSpec& system, const TorusPoint& x, long long n);

// log |det Df^n_x restricted to span(frame)| via pushing the orthonormal
// frame through the orbit with per-step QR; exact, not asymptotic, because
// restricted determinants compose step by step.
double restricted_log_det(const SystemSpec& system, const TorusPoint& x, long long n,
                          const Mat& frame);

// Stepwise variant used where several n are read off one orbit.
class RestrictedLogDetAccumulator {
 public:
  RestrictedLogDetAccumulator(const SystemSpec& system, TorusPoint x, Mat frame);
  void advance(long long steps = 1);
  double value() const { return total_; }
  long long steps() const { return steps_; }

 private:
  const SystemSpec* system_;
  TorusPoint point_;
  Mat frame_;
  double total_ = 0.0;
  long long steps_ = 0;
};

}  // namespace volgrow

#endif  // VOLGROW_COCYCLE_HPP
