#include "volgrow/bowen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volgrow/parallel.hpp"
#include "volgrow/rng.hpp"
#include "volgrow/volume_growth.hpp"

namespace volgrow {

namespace {

constexpr const char* kModule = "bowen-entropy";
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr long long kMaxGridPoints = 1ll << 24;

// Raw-array stepping for the membership and rejection hot loops; the kind
// switch is hoisted out of the per-step arithmetic by the optimizer.
struct FastMap {
  SystemKind kind;
  int d;
  double m[kMaxDim * kMaxDim] = {0};
  double eps = 0.0;

  explicit FastMap(const SystemSpec& system)
      : kind(system.kind()), d(system.dimension()), eps(system.epsilon()) {
    const Mat& a = system.matrix();
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) m[r * a.cols() + c] = a(r, c);
  }

  void step(double* x) const {
    double y[kMaxDim];
    switch (kind) {
      case SystemKind::kLinearToral:
        for (int i = 0; i < d; ++i) {
          double acc = 0.0;
          for (int j = 0; j < d; ++j) acc += m[i * d + j] * x[j];
          y[i] = acc;
        }
        break;
      case SystemKind::kSkewProduct:
        y[0] = m[0] * x[0] + m[1] * x[1];
        y[1] = m[2] * x[0] + m[3] * x[1];
        y[2] = x[2] + eps * std::sin(kTwoPi * x[0]);
        break;
      case SystemKind::kPerturbedCat:
        y[0] = m[0] * x[0] + m[1] * x[1] + eps * std::sin(kTwoPi * x[1]);
        y[1] = m[2] * x[0] + m[3] * x[1];
        break;
    }
    for (int i = 0; i < d; ++i) x[i] = wrap_unit(y[i]);
  }
};

inline double max_circle_distance(const double* a, const double* b, int d) {
  double dist = 0.0;
  for (int i = 0; i < d; ++i) {
    const double t = std::abs(a[i] - b[i]);
    dist = std::max(dist, std::min(t, 1.0 - t));
  }
  return dist;
}

// Steps y while it stays delta-close to the stored reference orbit; returns
// the number of steps that held (capped at n_max).
inline long long orbit_depth(const FastMap& map, const double* reference_orbit, long long n_max,
                             double delta, double* y) {
  for (long long i = 0; i < n_max; ++i) {
    if (max_circle_distance(reference_orbit + i * map.d, y, map.d) > delta) return i;
    map.step(y);
  }
  return n_max;
}

std::vector<double> store_orbit(const FastMap& map, const TorusPoint& x, long long n) {
  std::vector<double> orbit(static_cast<std::size_t>(n) * map.d);
  double p[kMaxDim];
  for (int i = 0; i < map.d; ++i) p[i] = x[i];
  for (long long s = 0; s < n; ++s) {
    for (int i = 0; i < map.d; ++i) orbit[static_cast<std::size_t>(s) * map.d + i] = p[i];
    map.step(p);
  }
  return orbit;
}

struct Grid {
  int d;
  long long res;
  long long total;

  Grid(int dimension, long long resolution) : d(dimension), res(resolution) {
    total = 1;
    for (int i = 0; i < d; ++i) total *= res;
  }

  // Midpoint coordinates, last axis fastest.
  void coords(long long index, double* out) const {
    for (int i = d - 1; i >= 0; --i) {
      out[i] = (static_cast<double>(index % res) + 0.5) / static_cast<double>(res);
      index /= res;
    }
  }

};

void validate_grid_query(const SystemSpec& system, long long n, double delta, long long resolution,
                         const char* op) {
  if (n < 1) throw ArgumentError(kModule, op, "n must be >= 1");
  if (!(delta > 0.0) || !(delta < 0.5)) throw ArgumentError(kModule, op, "delta must lie in (0, 0.5)");
  if (resolution < 2) throw ArgumentError(kModule, op, "resolution must be >= 2");
  if (delta * static_cast<double>(resolution) < 10.0) {
    throw ArgumentError(kModule, op, "grid too coarse: fewer than 10 grid points per delta");
  }
  Grid grid(system.dimension(), resolution);
  if (grid.total > kMaxGridPoints) {
    throw ArgumentError(kModule, op, "resolution^d exceeds the 2^24 grid budget");
  }
}

// Greedy scan in fixed lexicographic order: a grid point joins the set unless
// some existing member's (n,delta)-ball contains it. The same rule yields the
// greedy cover (members' balls cover the grid) and the greedy maximal
// separated set, because ball membership is symmetric. Members are bucketed
// on half-delta cells so a candidate only walks orbits of members within
// delta of it; the candidate's own orbit is grown lazily and shared across
// those tests. Returns -1 if the count exceeds max_count (>= 0).
long long greedy_ball_set(const SystemSpec& system, long long n, double delta, long long resolution,
                          long long max_count) {
  const FastMap map(system);
  const Grid grid(system.dimension(), resolution);
  const int d = grid.d;

  const long long cells = std::max<long long>(1, static_cast<long long>(std::floor(2.0 / delta)));
  const double cell_scale = static_cast<double>(cells);
  long long cell_stride[kMaxDim];
  cell_stride[d - 1] = 1;
  for (int i = d - 2; i >= 0; --i) cell_stride[i] = cell_stride[i + 1] * cells;
  long long cell_total = 1;
  for (int i = 0; i < d; ++i) cell_total *= cells;

  std::vector<std::vector<std::int32_t>> buckets(static_cast<std::size_t>(cell_total));
  std::vector<double> orbits;  // flattened n x d blocks per member
  long long count = 0;

  std::vector<double> candidate_orbit(static_cast<std::size_t>(n) * d);
  double y[kMaxDim];

  for (long long g = 0; g < grid.total; ++g) {
    grid.coords(g, y);
    for (int i = 0; i < d; ++i) candidate_orbit[static_cast<std::size_t>(i)] = y[i];
    long long known_steps = 1;

    // Cell ranges intersecting the delta-box around y, per axis.
    long long lo[kMaxDim], len[kMaxDim];
    for (int i = 0; i < d; ++i) {
      const long long a = static_cast<long long>(std::floor((y[i] - delta) * cell_scale));
      const long long b = static_cast<long long>(std::floor((y[i] + delta) * cell_scale));
      lo[i] = a;
      len[i] = std::min(b - a + 1, cells);
    }

    bool inside_existing = false;
    long long offsets[kMaxDim] = {0, 0, 0, 0};
    for (;;) {
      long long bucket = 0;
      for (int i = 0; i < d; ++i) bucket += ((lo[i] + offsets[i]) % cells + cells) % cells * cell_stride[i];
      for (std::int32_t member : buckets[static_cast<std::size_t>(bucket)]) {
        const double* member_orbit = orbits.data() + static_cast<std::size_t>(member) * n * d;
        long long step = 0;
        for (; step < n; ++step) {
          if (step == known_steps) {
            double* next = candidate_orbit.data() + static_cast<std::size_t>(step) * d;
            const double* prev = next - d;
            for (int i = 0; i < d; ++i) next[i] = prev[i];
            map.step(next);
            ++known_steps;
          }
          if (max_circle_distance(member_orbit + step * d,
                                  candidate_orbit.data() + static_cast<std::size_t>(step) * d, d) > delta) {
            break;
          }
        }
        if (step == n) {
          inside_existing = true;
          break;
        }
      }
      if (inside_existing) break;
      int axis = d - 1;
      while (axis >= 0 && ++offsets[axis] == len[axis]) offsets[axis--] = 0;
      if (axis < 0) break;
    }

    if (!inside_existing) {
      if (max_count >= 0 && count >= max_count) return -1;
      // Complete and store the orbit, then register in the home cell.
      while (known_steps < n) {
        double* next = candidate_orbit.data() + static_cast<std::size_t>(known_steps) * d;
        const double* prev = next - d;
        for (int i = 0; i < d; ++i) next[i] = prev[i];
        map.step(next);
        ++known_steps;
      }
      orbits.insert(orbits.end(), candidate_orbit.begin(), candidate_orbit.end());
      long long home = 0;
      for (int i = 0; i < d; ++i) {
        const long long cell = std::min<long long>(cells - 1, static_cast<long long>(y[i] * cell_scale));
        home += cell * cell_stride[i];
      }
      buckets[static_cast<std::size_t>(home)].push_back(static_cast<std::int32_t>(count));
      ++count;
    }
  }
  return count;
}

}  // namespace

std::string to_string(CoverMethod method) {
  return method == CoverMethod::kSpanning ? "spanning" : "separated";
}

std::string to_string(BundleChoice bundle) {
  switch (bundle) {
    case BundleChoice::kMaxOverV: return "max_over_V";
    case BundleChoice::kMaxOverFi: return "max_over_F_i";
    case BundleChoice::kFixedFi: return "fixed_F_i";
  }
  return "unknown";
}

bool in_dynamical_ball(const SystemSpec& system, const DynamicalBallQuery& query, const TorusPoint& y) {
  if (query.center.dimension() != system.dimension() || y.dimension() != system.dimension()) {
    throw ArgumentError(kModule, "in_dynamical_ball", "dimension mismatch");
  }
  if (!(query.delta > 0.0) || !(query.delta < 0.5)) {
    throw ArgumentError(kModule, "in_dynamical_ball", "delta must lie in (0, 0.5)");
  }
  if (query.n < 1) throw ArgumentError(kModule, "in_dynamical_ball", "n must be >= 1");
  const FastMap map(system);
  double cx[kMaxDim], cy[kMaxDim];
  for (int i = 0; i < map.d; ++i) {
    cx[i] = query.center[i];
    cy[i] = y[i];
  }
  for (long long s = 0; s < query.n; ++s) {
    if (max_circle_distance(cx, cy, map.d) > query.delta) return false;
    map.step(cx);
    map.step(cy);
  }
  return true;
}

EntropyEstimate spanning_entropy(const SystemSpec& system, long long n, double delta,
                                 long long resolution) {
  validate_grid_query(system, n, delta, resolution, "spanning_entropy");
  EntropyEstimate est;
  est.n = n;
  est.delta = delta;
  est.cover_size = greedy_ball_set(system, n, delta, resolution, -1);
  est.method = CoverMethod::kSpanning;
  est.value = std::log(static_cast<double>(est.cover_size)) / static_cast<double>(n);
  return est;
}

EntropyEstimate separated_entropy(const SystemSpec& system, long long n, double delta,
                                  long long resolution) {
  validate_grid_query(system, n, delta, resolution, "separated_entropy");
  EntropyEstimate est;
  est.n = n;
  est.delta = delta;
  est.cover_size = greedy_ball_set(system, n, delta, resolution, -1);
  est.method = CoverMethod::kSeparated;
  est.value = std::log(static_cast<double>(est.cover_size)) / static_cast<double>(n);
  return est;
}

EntropyLadder entropy_rate_ladder(const SystemSpec& system, long long n_top, double delta,
                                  long long resolution, CoverMethod method) {
  validate_grid_query(system, n_top, delta, resolution, "entropy_rate_ladder");
  const Grid grid(system.dimension(), resolution);
  EntropyLadder ladder;
  ladder.requested_n = n_top;
  const long long cap =
      static_cast<long long>(ladder.saturation_fraction * static_cast<double>(grid.total)) + 1;

  for (long long n = 1; n <= n_top; ++n) {
    const long long count = greedy_ball_set(system, n, delta, resolution, cap);
    if (count < 0) {
      // Balls dropped below the grid pitch: counts from here on measure the
      // grid, not the dynamics.
      ladder.saturated = true;
      break;
    }
    EntropyEstimate est;
    est.n = n;
    est.delta = delta;
    est.cover_size = count;
    est.method = method;
    est.value = std::log(static_cast<double>(count)) / static_cast<double>(n);
    ladder.estimates.push_back(est);
  }

  std::vector<double> xs, ys;
  for (const EntropyEstimate& est : ladder.estimates) {
    if (est.n < 2) continue;
    ladder.window.push_back(est.n);
    xs.push_back(static_cast<double>(est.n));
    ys.push_back(std::log(static_cast<double>(est.cover_size)));
  }
  if (xs.size() < 2) {
    throw ConvergenceError(kModule, "entropy_rate_ladder",
                           "fewer than two usable rungs before grid saturation; refine the grid or delta");
  }
  ladder.rate = fit_line(xs, ys).slope;
  return ladder;
}

BallGrowthReport ball_volume_growth(const SystemSpec& system, const TorusPoint& center,
                                    const BallGrowthOptions& options) {
  if (options.n_values.empty()) {
    throw ArgumentError(kModule, "ball_volume_growth", "n_values must be nonempty");
  }
  for (std::size_t i = 0; i < options.n_values.size(); ++i) {
    if (options.n_values[i] < 1 || (i > 0 && options.n_values[i] <= options.n_values[i - 1])) {
      throw ArgumentError(kModule, "ball_volume_growth", "n_values must be strictly increasing");
    }
  }
  if (!(options.delta > 0.0) || !(options.delta < 0.5)) {
    throw ArgumentError(kModule, "ball_volume_growth", "delta must lie in (0, 0.5)");
  }
  if (options.mc_count < 100) {
    throw ArgumentError(kModule, "ball_volume_growth", "mc_count must be >= 100");
  }
  if (center.dimension() != system.dimension()) {
    throw ArgumentError(kModule, "ball_volume_growth", "center dimension mismatch");
  }

  const FastMap map(system);
  const int d = system.dimension();
  const long long n_max = options.n_values.back();
  const std::vector<double> center_orbit = store_orbit(map, center, n_max);
  const std::size_t slots = options.n_values.size();

  std::vector<int> dims = options.dims.empty() ? default_dims(system) : options.dims;
  const int stable_dim = options.stable_dim >= 0 ? options.stable_dim : dims.front();
  const int unstable_dim = options.unstable_dim >= 0 ? options.unstable_dim : dims.back();

  struct ChunkResult {
    std::vector<LogSumExp> lse;
    std::vector<std::int64_t> counts;
  };
  const std::int64_t chunk_size = 1 << 16;
  const std::int64_t num_chunks = (options.mc_count + chunk_size - 1) / chunk_size;
  std::vector<ChunkResult> partial(static_cast<std::size_t>(num_chunks));
  const rng::Prng prng(options.seed, rng::Stream::kBallSampler);

  // One pass: reject on the orbit-depth test only, then evaluate the
  // integrand incrementally for the accepted depths.
  for_chunks(options.mc_count, chunk_size, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    ChunkResult result;
    result.lse.resize(slots);
    result.counts.assign(slots, 0);
    double y[kMaxDim];
    for (std::int64_t i = begin; i < end; ++i) {
      for (int c = 0; c < d; ++c) {
        const double u = prng.uniform(static_cast<std::uint64_t>(i), static_cast<std::uint32_t>(c));
        y[c] = wrap_unit(center[c] + options.delta * (2.0 * u - 1.0));
      }
      double walker[kMaxDim];
      for (int c = 0; c < d; ++c) walker[c] = y[c];
      const long long depth = orbit_depth(map, center_orbit.data(), n_max, options.delta, walker);
      if (depth < options.n_values.front()) continue;

      Vec yv(d);
      for (int c = 0; c < d; ++c) yv[c] = y[c];
      const TorusPoint sample(yv);

      if (options.bundle == BundleChoice::kMaxOverV) {
        CocycleAccumulator cocycle(system, sample);
        long long at = 0;
        for (std::size_t s = 0; s < slots && options.n_values[s] <= depth; ++s) {
          cocycle.advance(options.n_values[s] - at);
          at = options.n_values[s];
          result.lse[s].add(max_subspace_log_det(cocycle.log_singular()));
          ++result.counts[s];
        }
      } else {
        SplittingOptions sopt;
        sopt.seed = options.seed;
        const SplittingFrame frame = estimate_splitting(system, sample, options.n_fwd, options.n_bwd,
                                                        dims, stable_dim, unstable_dim, sopt);
        const int l = frame.num_centers();
        std::vector<RestrictedLogDetAccumulator> accs;
        if (options.bundle == BundleChoice::kFixedFi) {
          accs.emplace_back(system, sample, frame.bundle_f(options.bundle_index));
        } else {
          for (int b = 0; b <= l; ++b) accs.emplace_back(system, sample, frame.bundle_f(b));
        }
        long long at = 0;
        for (std::size_t s = 0; s < slots && options.n_values[s] <= depth; ++s) {
          double value = -std::numeric_limits<double>::infinity();
          for (auto& acc : accs) {
            acc.advance(options.n_values[s] - at);
            value = std::max(value, acc.value());
          }
          at = options.n_values[s];
          result.lse[s].add(value);
          ++result.counts[s];
        }
      }
    }
    partial[static_cast<std::size_t>(chunk)] = std::move(result);
  });

  std::vector<LogSumExp> merged(slots);
  std::vector<std::int64_t> counts(slots, 0);
  for (const ChunkResult& part : partial) {
    for (std::size_t s = 0; s < slots; ++s) {
      merged[s].merge(part.lse[s]);
      counts[s] += part.counts[s];
    }
  }

  BallGrowthReport report;
  report.center = center;
  report.n_values = options.n_values;
  report.delta = options.delta;
  report.bundle = to_string(options.bundle);
  report.mc_count = options.mc_count;
  report.seed = options.seed;
  const double log_box = d * std::log(2.0 * options.delta);
  double min_fraction = 1.0;
  for (std::size_t s = 0; s < slots; ++s) {
    const double log_integral =
        counts[s] == 0 ? -std::numeric_limits<double>::infinity()
                       : log_box + merged[s].log_sum() - std::log(static_cast<double>(options.mc_count));
    report.log_integrals.push_back(log_integral);
    report.normalized_log_integrals.push_back(log_integral / static_cast<double>(options.n_values[s]));
    report.accepted_counts.push_back(counts[s]);
    const double fraction = static_cast<double>(counts[s]) / static_cast<double>(options.mc_count);
    report.accepted_fractions.push_back(fraction);
    min_fraction = std::min(min_fraction, fraction);
    report.unreliable.push_back(counts[s] < 10);
  }
  report.accepted_fraction = min_fraction;

  report.anchored_rates.assign(slots, 0.0);
  std::vector<double> xs, ys;
  const double anchor_log = report.log_integrals.front();
  const double anchor_n = static_cast<double>(options.n_values.front());
  for (std::size_t s = 0; s < slots; ++s) {
    if (s > 0 && std::isfinite(anchor_log) && std::isfinite(report.log_integrals[s])) {
      report.anchored_rates[s] =
          (report.log_integrals[s] - anchor_log) / (static_cast<double>(options.n_values[s]) - anchor_n);
    }
    if (!report.unreliable[s] && std::isfinite(report.log_integrals[s])) {
      xs.push_back(static_cast<double>(options.n_values[s]));
      ys.push_back(report.log_integrals[s]);
    }
  }
  report.fitted_rate = xs.size() >= 2 ? fit_line(xs, ys).slope : 0.0;
  return report;
}

}  // namespace volgrow
