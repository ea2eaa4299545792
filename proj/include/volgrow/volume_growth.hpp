#ifndef VOLGROW_VOLUME_GROWTH_HPP
#define VOLGROW_VOLUME_GROWTH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "volgrow/cocycle.hpp"
#include "volgrow/systems.hpp"

namespace volgrow {

enum class SamplerMode { kMonteCarlo, kGrid };

// Realization of the integral over the torus: either seeded uniform samples
// or the midpoints of a regular grid (midpoints avoid the fixed-point
// lattice of linear maps).
struct SamplerSpec {
  SamplerMode mode = SamplerMode::kMonteCarlo;
  std::int64_t count = 1024;  // monte_carlo: sample count; grid: points per axis
  std::uint64_t seed = 0;

  void validate() const;
  std::int64_t total_points(int dimension) const;
  TorusPoint point(int dimension, std::int64_t index) const;
};

struct GrowthSample {
  long long n = 0;
  double normalized_log_integral = 0.0;  // (1/n) log I_n
  double log_integral = 0.0;
  double standard_error = 0.0;  // of log I_n (0 for constant integrands)
};

struct GrowthCurve {
  std::vector<GrowthSample> samples;
  double fitted_rate = 0.0;     // least-squares slope of log I_n vs n
  double fit_residual = 0.0;    // RMS residual of that fit
  double liminf_proxy = 0.0;    // min normalized value over the last third
  double limsup_proxy = 0.0;    // max normalized value over the last third
  bool proxy_gap_warning = false;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Largest log volume expansion over all subspaces (the trivial one included):
// sum of the positive log singular values. Input must be sorted descending.
double max_subspace_log_det(std::span<const double> log_sigma);
double max_subspace_log_det(const Vec& log_sigma);

// Largest log volume expansion over subspaces of fixed dimension k: sum of
// the top k entries (k = 0 gives the empty-product 0).
double fixed_dim_log_det_max(std::span<const double> log_sigma, int k);

// log I_n = log mean_j exp(L_j), L_j the max-subspace value at sample j,
// reduced by max-shifted log-sum-exp in fixed chunk order.
double integrate_growth(const SystemSpec& system, long long n, const SamplerSpec& sampler);

GrowthCurve growth_rate(const SystemSpec& system, const std::vector<long long>& n_list,
                        const SamplerSpec& sampler);

// Least-squares slope and RMS residual of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Deterministic streaming log-sum-exp; merge in fixed order for bitwise
// reproducibility.
struct LogSumExp {
  double max_term = -std::numeric_limits<double>::infinity();
  double sum_scaled = 0.0;     // sum exp(term - max_term)
  double sum_scaled_sq = 0.0;  // sum exp(2 (term - max_term))
  std::int64_t count = 0;

  void add(double term);
  void merge(const LogSumExp& other);
  double log_sum() const;                 // log sum exp(term_i)
  double log_mean(std::int64_t total_count) const;
  double standard_error_of_log(std::int64_t total_count) const;
};

}  // namespace volgrow

#endif  // VOLGROW_VOLUME_GROWTH_HPP
