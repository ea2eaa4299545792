#include "volgrow/volume_growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volgrow/parallel.hpp"
#include "volgrow/rng.hpp"

namespace volgrow {

namespace {
constexpr const char* kModule = "volume-growth";
constexpr std::int64_t kChunk = 1024;
}  // namespace

void SamplerSpec::validate() const {
  if (count < 1) throw ArgumentError(kModule, "SamplerSpec", "sample count must be >= 1");
  if (mode == SamplerMode::kGrid && count < 2) {
    throw ArgumentError(kModule, "SamplerSpec", "grid resolution must be >= 2 per dimension");
  }
}

std::int64_t SamplerSpec::total_points(int dimension) const {
  if (mode == SamplerMode::kMonteCarlo) return count;
  std::int64_t total = 1;
  for (int i = 0; i < dimension; ++i) {
    if (total > (std::int64_t{1} << 40) / count) {
      throw ArgumentError(kModule, "SamplerSpec", "grid resolution too large");
    }
    total *= count;
  }
  return total;
}

TorusPoint SamplerSpec::point(int dimension, std::int64_t index) const {
  if (mode == SamplerMode::kMonteCarlo) {
    rng::Prng prng(seed, rng::Stream::kVolumeSampler);
    return sample_torus_point(prng, static_cast<std::uint64_t>(index), dimension);
  }
  // Cell midpoints in lexicographic order.
  Vec c(dimension);
  std::int64_t rest = index;
  for (int i = dimension - 1; i >= 0; --i) {
    c[i] = (static_cast<double>(rest % count) + 0.5) / static_cast<double>(count);
    rest /= count;
  }
  return TorusPoint(c);
}

void LogSumExp::add(double term) {
  ++count;
  if (term == -std::numeric_limits<double>::infinity()) return;
  if (term > max_term) {
    const double shift = std::exp(max_term - term);
    sum_scaled = sum_scaled * shift + 1.0;
    sum_scaled_sq = sum_scaled_sq * shift * shift + 1.0;
    max_term = term;
  } else {
    const double w = std::exp(term - max_term);
    sum_scaled += w;
    sum_scaled_sq += w * w;
  }
}

void LogSumExp::merge(const LogSumExp& other) {
  count += other.count;
  if (other.sum_scaled == 0.0) return;
  if (sum_scaled == 0.0) {
    max_term = other.max_term;
    sum_scaled = other.sum_scaled;
    sum_scaled_sq = other.sum_scaled_sq;
    return;
  }
  if (other.max_term > max_term) {
    const double shift = std::exp(max_term - other.max_term);
    sum_scaled = sum_scaled * shift + other.sum_scaled;
    sum_scaled_sq = sum_scaled_sq * shift * shift + other.sum_scaled_sq;
    max_term = other.max_term;
  } else {
    const double shift = std::exp(other.max_term - max_term);
    sum_scaled += other.sum_scaled * shift;
    sum_scaled_sq += other.sum_scaled_sq * shift * shift;
  }
}

double LogSumExp::log_sum() const {
  if (sum_scaled == 0.0) return -std::numeric_limits<double>::infinity();
  return max_term + std::log(sum_scaled);
}

double LogSumExp::log_mean(std::int64_t total_count) const {
  return log_sum() - std::log(static_cast<double>(total_count));
}

double LogSumExp::standard_error_of_log(std::int64_t total_count) const {
  if (total_count < 2 || sum_scaled == 0.0) return 0.0;
  const double m = static_cast<double>(total_count);
  const double mean_w = sum_scaled / m;
  const double var_w = std::max(0.0, (sum_scaled_sq - sum_scaled * sum_scaled / m) / (m - 1.0));
  if (mean_w <= 0.0) return 0.0;
  return std::sqrt(var_w / m) / mean_w;
}

double max_subspace_log_det(std::span<const double> log_sigma) {
  double total = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double v : log_sigma) {
    if (v > prev + 1e-12) {
      throw ArgumentError(kModule, "max_subspace_log_det", "input must be sorted descending");
    }
    prev = v;
    if (v > 0.0) total += v;
  }
  return total;
}

double max_subspace_log_det(const Vec& log_sigma) {
  return max_subspace_log_det(std::span<const double>(log_sigma.data(), log_sigma.size()));
}

double fixed_dim_log_det_max(std::span<const double> log_sigma, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > log_sigma.size()) {
    throw ArgumentError(kModule, "fixed_dim_log_det_max",
                        "k must be in {0,...," + std::to_string(log_sigma.size()) + "}");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double v : log_sigma) {
    if (v > prev + 1e-12) {
      throw ArgumentError(kModule, "fixed_dim_log_det_max", "input must be sorted descending");
    }
    prev = v;
  }
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += log_sigma[i];
  return total;
}

namespace {

// One pass over the sampler, reading off L_j at each requested n; the
// per-chunk partial reductions are merged in chunk order.
std::vector<LogSumExp> sweep_integrand(const SystemSpec& system, const std::vector<long long>& n_list,
                                       const SamplerSpec& sampler) {
  sampler.validate();
  const int d = system.dimension();
  const std::int64_t total = sampler.total_points(d);
  if (total < 1) throw ArgumentError(kModule, "integrate_growth", "sampler produced zero samples");
  const std::int64_t num_chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<LogSumExp>> partial(static_cast<std::size_t>(num_chunks));

  for_chunks(total, kChunk, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    std::vector<LogSumExp> acc(n_list.size());
    for (std::int64_t i = begin; i < end; ++i) {
      TorusPoint x = sampler.point(d, i);
      try {
        CocycleAccumulator cocycle(system, x);
        std::size_t slot = 0;
        long long at = 0;
        while (slot < n_list.size()) {
          cocycle.advance(n_list[slot] - at);
          at = n_list[slot];
          acc[slot].add(max_subspace_log_det(cocycle.log_singular()));
          ++slot;
        }
      } catch (const NumericalError& e) {
        throw NumericalError(kModule, "integrate_growth",
                             std::string(e.what()) + " at sample " + std::to_string(i), i);
      }
    }
    partial[static_cast<std::size_t>(chunk)] = std::move(acc);
  });

  std::vector<LogSumExp> merged(n_list.size());
  for (const auto& chunk : partial) {
    for (std::size_t s = 0; s < n_list.size(); ++s) merged[s].merge(chunk[s]);
  }
  return merged;
}

}  // namespace

double integrate_growth(const SystemSpec& system, long long n, const SamplerSpec& sampler) {
  if (n < 1) throw ArgumentError(kModule, "integrate_growth", "n must be >= 1");
  const std::vector<long long> n_list{n};
  auto reduced = sweep_integrand(system, n_list, sampler);
  return reduced[0].log_mean(sampler.total_points(system.dimension()));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  const std::size_t m = x.size();
  if (m < 2) {
    fit.intercept = m == 1 ? y[0] : 0.0;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.rms_residual = std::sqrt(rss / static_cast<double>(m));
  return fit;
}

GrowthCurve growth_rate(const SystemSpec& system, const std::vector<long long>& n_list,
                        const SamplerSpec& sampler) {
  if (n_list.size() < 3) throw ArgumentError(kModule, "growth_rate", "n_list must have length >= 3");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw ArgumentError(kModule, "growth_rate", "n_list must be strictly increasing and positive");
    }
  }
  const std::int64_t total = sampler.total_points(system.dimension());
  auto reduced = sweep_integrand(system, n_list, sampler);

  GrowthCurve curve;
  curve.sample_count = total;
  curve.seed = sampler.seed;
  std::vector<double> xs(n_list.size()), ys(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    GrowthSample s;
    s.n = n_list[i];
    s.log_integral = reduced[i].log_mean(total);
    if (!std::isfinite(s.log_integral)) {
      throw NumericalError(kModule, "growth_rate", "non-finite log integral at n = " + std::to_string(s.n));
    }
    s.normalized_log_integral = s.log_integral / static_cast<double>(s.n);
    s.standard_error = reduced[i].standard_error_of_log(total);
    curve.samples.push_back(s);
    xs[i] = static_cast<double>(s.n);
    ys[i] = s.log_integral;
  }

  const LineFit fit = fit_line(xs, ys);
  curve.fitted_rate = fit.slope;
  curve.fit_residual = fit.rms_residual;

  // liminf / limsup proxies from the final third of normalized values.
  const std::size_t tail_begin = curve.samples.size() - std::max<std::size_t>(1, curve.samples.size() / 3);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = tail_begin; i < curve.samples.size(); ++i) {
    lo = std::min(lo, curve.samples[i].normalized_log_integral);
    hi = std::max(hi, curve.samples[i].normalized_log_integral);
  }
  curve.liminf_proxy = lo;
  curve.limsup_proxy = hi;
  curve.proxy_gap_warning = (hi - lo) > 0.05;
  return curve;
}

}  // namespace volgrow
