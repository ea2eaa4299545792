#ifndef VOLGROW_BOWEN_HPP
#define VOLGROW_BOWEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "volgrow/splitting.hpp"
#include "volgrow/systems.hpp"

namespace volgrow {

struct DynamicalBallQuery {
  TorusPoint center;
  long long n = 1;
  double delta = 0.05;
};

// y is in B(x, n, delta) iff the orbits stay delta-close for steps 0..n-1.
bool in_dynamical_ball(const SystemSpec& system, const DynamicalBallQuery& query, const TorusPoint& y);

enum class CoverMethod { kSpanning, kSeparated };
std::string to_string(CoverMethod method);

struct EntropyEstimate {
  double value = 0.0;  // (1/n) log cover_size
  long long n = 1;
  double delta = 0.05;
  long long cover_size = 0;
  CoverMethod method = CoverMethod::kSpanning;
};

// Greedy (n,delta)-cover of the midpoint grid in fixed lexicographic scan
// order; deterministic. Requires delta * resolution >= 10 and
// resolution^d <= 2^24.
EntropyEstimate spanning_entropy(const SystemSpec& system, long long n, double delta, long long resolution);

// Greedy maximal (n,delta)-separated subset of the same grid.
EntropyEstimate separated_entropy(const SystemSpec& system, long long n, double delta, long long resolution);

// Cover counts for n = 1..n_top with the growth rate read off as the
// least-squares slope of log N(n) over the window where the grid still
// resolves the balls. The raw (1/n) log N values carry an O(log(1/delta^d)/n)
// offset and the counts clip once the balls drop below the grid pitch, so the
// slope is the quantity that estimates the entropy; rungs past the
// saturation fraction are recorded but excluded from the fit.
struct EntropyLadder {
  std::vector<EntropyEstimate> estimates;
  std::vector<long long> window;  // n values used in the fit
  double rate = 0.0;
  bool saturated = false;
  double saturation_fraction = 0.2;
  long long requested_n = 0;
};

EntropyLadder entropy_rate_ladder(const SystemSpec& system, long long n_top, double delta,
                                  long long resolution, CoverMethod method);

enum class BundleChoice { kMaxOverV, kMaxOverFi, kFixedFi };
std::string to_string(BundleChoice bundle);

struct BallGrowthOptions {
  std::vector<long long> n_values;
  double delta = 0.05;
  BundleChoice bundle = BundleChoice::kMaxOverV;
  int bundle_index = 0;  // for kFixedFi
  std::int64_t mc_count = 100000;
  std::uint64_t seed = 0;
  // Splitting estimation parameters, used when the integrand restricts to
  // sub-bundles.
  std::vector<int> dims;
  int stable_dim = -1;
  int unstable_dim = -1;
  long long n_fwd = 40;
  long long n_bwd = 40;
};

// Rejection-sampled integrals of the chosen determinant integrand over the
// dynamical balls B(x, n, delta), one pass for all n. Entries whose accepted
// count drops below 10 are flagged unreliable; an empty estimate records
// -infinity rather than raising.
struct BallGrowthReport {
  TorusPoint center;
  std::vector<long long> n_values;
  double delta = 0.05;
  std::string bundle;
  std::int64_t mc_count = 0;
  std::uint64_t seed = 0;
  std::vector<double> log_integrals;
  std::vector<double> normalized_log_integrals;  // (1/n) log integral
  // Constant-free growth diagnostics: (log I_n - log I_n0) / (n - n0)
  // against the first rung, and the least-squares slope of log I_n.
  std::vector<double> anchored_rates;
  double fitted_rate = 0.0;
  std::vector<std::int64_t> accepted_counts;
  std::vector<double> accepted_fractions;
  std::vector<bool> unreliable;
  double accepted_fraction = 0.0;  // min over n
};

BallGrowthReport ball_volume_growth(const SystemSpec& system, const TorusPoint& center,
                                    const BallGrowthOptions& options);

}  // namespace volgrow

#endif  // VOLGROW_BOWEN_HPP
