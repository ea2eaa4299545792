#include "volgrow/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace volgrow {

using nlohmann::json;

namespace {

std::string csv_real(double v) {
  char buffer[40];
  snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json to_json(const SystemSpec& system) {
  json j;
  j["kind"] = to_string(system.kind());
  j["dimension"] = system.dimension();
  j["matrix"] = matrix_json(system.matrix());
  j["epsilon"] = system.epsilon();
  if (system.exact_entropy()) {
    j["entropy_exact"] = *system.exact_entropy();
    j["entropy_note"] = system.entropy_note();
  }
  return j;
}

json to_json(const TorusPoint& point) {
  json j = json::array();
  for (int i = 0; i < point.dimension(); ++i) j.push_back(point[i]);
  return j;
}

json to_json(const GrowthCurve& curve) {
  json samples = json::array();
  for (const GrowthSample& s : curve.samples) {
    samples.push_back({{"n", s.n},
                       {"log_integral", s.log_integral},
                       {"normalized", s.normalized_log_integral},
                       {"stderr", s.standard_error}});
  }
  return json{{"samples", samples},
              {"fitted_rate", curve.fitted_rate},
              {"fit_residual", curve.fit_residual},
              {"liminf_proxy", curve.liminf_proxy},
              {"limsup_proxy", curve.limsup_proxy},
              {"proxy_gap_warning", curve.proxy_gap_warning},
              {"sample_count", curve.sample_count},
              {"seed", curve.seed}};
}

json to_json(const EntropyEstimate& estimate) {
  return json{{"n", estimate.n},
              {"delta", estimate.delta},
              {"cover_size", estimate.cover_size},
              {"value", estimate.value},
              {"method", to_string(estimate.method)}};
}

json to_json(const EntropyLadder& ladder) {
  json estimates = json::array();
  for (const EntropyEstimate& e : ladder.estimates) estimates.push_back(to_json(e));
  return json{{"estimates", estimates},
              {"window", ladder.window},
              {"rate", ladder.rate},
              {"saturated", ladder.saturated},
              {"saturation_fraction", ladder.saturation_fraction},
              {"requested_n", ladder.requested_n}};
}

json to_json(const LyapunovEstimate& estimate) {
  json exponents = json::array();
  for (Eigen::Index i = 0; i < estimate.exponents.size(); ++i) exponents.push_back(estimate.exponents[i]);
  return json{{"exponents", exponents},
              {"orbit_length", estimate.orbit_length},
              {"base_point", to_json(estimate.base_point)}};
}

json to_json(const DominationReport& report) {
  return json{{"passed", report.passed},
              {"empirical_lambda", report.empirical_lambda},
              {"iterate", report.iterate},
              {"worst_point", to_json(report.worst_point)},
              {"samples", report.samples},
              {"cone_invariant", report.cone_invariant},
              {"used_coordinate_fallback", report.used_coordinate_fallback}};
}

json to_json(const GrassmannGapStats& stats) {
  return json{{"max_gap", stats.max_gap},
              {"min_gap", stats.min_gap},
              {"mean_gap", stats.mean_gap},
              {"samples", stats.samples}};
}

json to_json(const BallGrowthReport& report) {
  json j;
  j["center"] = to_json(report.center);
  j["n_values"] = report.n_values;
  j["delta"] = report.delta;
  j["bundle"] = report.bundle;
  j["mc_count"] = report.mc_count;
  j["seed"] = report.seed;
  j["log_integrals"] = report.log_integrals;
  j["normalized_log_integrals"] = report.normalized_log_integrals;
  j["anchored_rates"] = report.anchored_rates;
  j["fitted_rate"] = report.fitted_rate;
  j["accepted_counts"] = report.accepted_counts;
  j["accepted_fractions"] = report.accepted_fractions;
  std::vector<bool> unreliable = report.unreliable;
  j["unreliable"] = unreliable;
  j["accepted_fraction"] = report.accepted_fraction;
  return j;
}

std::string growth_curve_csv(const GrowthCurve& curve) {
  std::ostringstream out;
  out << "n,log_integral,normalized,stderr\n";
  for (const GrowthSample& s : curve.samples) {
    out << s.n << ',' << csv_real(s.log_integral) << ',' << csv_real(s.normalized_log_integral) << ','
        << csv_real(s.standard_error) << '\n';
  }
  return out.str();
}

std::string entropy_ladder_csv(const EntropyLadder& ladder) {
  std::ostringstream out;
  out << "n,value,cover_size\n";
  for (const EntropyEstimate& e : ladder.estimates) {
    out << e.n << ',' << csv_real(e.value) << ',' << e.cover_size << '\n';
  }
  return out.str();
}

std::string lyapunov_csv(const std::vector<LyapunovEstimate>& estimates) {
  std::ostringstream out;
  out << "sample";
  if (!estimates.empty()) {
    for (Eigen::Index i = 0; i < estimates.front().exponents.size(); ++i) {
      out << ",exponent_" << (i + 1);
    }
  }
  out << '\n';
  for (std::size_t s = 0; s < estimates.size(); ++s) {
    out << s;
    for (Eigen::Index i = 0; i < estimates[s].exponents.size(); ++i) {
      out << ',' << csv_real(estimates[s].exponents[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string ball_growth_csv(const std::vector<BallGrowthReport>& reports) {
  std::ostringstream out;
  out << "center_index,n,log_integral,normalized,anchored_rate,accepted_count,accepted_fraction,unreliable\n";
  for (std::size_t c = 0; c < reports.size(); ++c) {
    const BallGrowthReport& r = reports[c];
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
      out << c << ',' << r.n_values[i] << ',' << csv_real(r.log_integrals[i]) << ','
          << csv_real(r.normalized_log_integrals[i]) << ',' << csv_real(r.anchored_rates[i]) << ','
          << r.accepted_counts[i] << ',' << csv_real(r.accepted_fractions[i]) << ','
          << (r.unreliable[i] ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

json error_json(const std::string& category, const std::string& module, const std::string& operation,
                const std::string& message) {
  return json{{"schema_version", kSchemaVersion},
              {"error", {{"category", category}, {"module", module}, {"operation", operation},
                         {"message", message}}}};
}

json error_json(const ConfigError& error) {
  json j = error_json("config", error.module_name(), error.operation(), error.what());
  json issues = json::array();
  for (const ConfigIssue& issue : error.issues()) {
    issues.push_back({{"line", issue.line}, {"key", issue.key}, {"message", issue.message}});
  }
  j["error"]["issues"] = issues;
  return j;
}

namespace {

json report_header(const ExperimentConfig& config, Command command, const SystemSpec& system) {
  return json{{"schema_version", kSchemaVersion},
              {"command", to_string(command)},
              {"seed", config.seed},
              {"system", to_json(system)}};
}

std::string brief(double v) {
  char buffer[32];
  snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

ExperimentResult run_entropy_volume(const ExperimentConfig& config, const SystemSpec& system) {
  SamplerSpec sampler;
  sampler.mode = config.sampler;
  sampler.count = config.samples;
  sampler.seed = config.seed;
  const GrowthCurve curve = growth_rate(system, config.n_list, sampler);

  ExperimentResult result;
  result.json_name = "volume_growth.json";
  result.report = report_header(config, Command::kEntropyVolume, system);
  result.report["sampler"] = {{"mode", config.sampler == SamplerMode::kMonteCarlo ? "monte_carlo" : "grid"},
                              {"count", config.samples}};
  result.report["growth_curve"] = to_json(curve);
  result.csv_files.emplace_back("volume_growth.csv", growth_curve_csv(curve));
  result.headline = "volume growth fitted_rate = " + brief(curve.fitted_rate);
  return result;
}

ExperimentResult run_entropy_bowen(const ExperimentConfig& config, const SystemSpec& system) {
  const EntropyLadder ladder =
      entropy_rate_ladder(system, config.n, config.delta, config.resolution, config.method);

  ExperimentResult result;
  result.json_name = "bowen.json";
  result.report = report_header(config, Command::kEntropyBowen, system);
  result.report["delta"] = config.delta;
  result.report["resolution"] = config.resolution;
  result.report["ladder"] = to_json(ladder);
  result.report["rate"] = ladder.rate;
  result.csv_files.emplace_back("bowen.csv", entropy_ladder_csv(ladder));
  result.headline = std::string(to_string(config.method)) + " entropy rate = " + brief(ladder.rate);
  return result;
}

ExperimentResult run_lyapunov(const ExperimentConfig& config, const SystemSpec& system) {
  rng::Prng prng(config.seed, rng::Stream::kLyapunovPoints);
  std::vector<LyapunovEstimate> estimates;
  Vec mean = Vec::Zero(system.dimension());
  for (std::int64_t s = 0; s < config.point_samples; ++s) {
    const TorusPoint x = sample_torus_point(prng, static_cast<std::uint64_t>(s), system.dimension());
    estimates.push_back(lyapunov_spectrum(system, x, config.orbit_length));
    mean += estimates.back().exponents;
  }
  mean /= static_cast<double>(config.point_samples);

  ExperimentResult result;
  result.json_name = "lyapunov.json";
  result.report = report_header(config, Command::kLyapunov, system);
  result.report["orbit_length"] = config.orbit_length;
  json per_point = json::array();
  for (const LyapunovEstimate& e : estimates) per_point.push_back(to_json(e));
  result.report["estimates"] = per_point;
  json mean_json = json::array();
  for (Eigen::Index i = 0; i < mean.size(); ++i) mean_json.push_back(mean[i]);
  result.report["mean_exponents"] = mean_json;
  result.csv_files.emplace_back("lyapunov.csv", lyapunov_csv(estimates));
  std::string exponents = "(";
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    if (i) exponents += ", ";
    exponents += brief(mean[i]);
  }
  exponents += ")";
  result.headline = "mean Lyapunov exponents = " + exponents;
  return result;
}

ExperimentResult run_domination(const ExperimentConfig& config, const SystemSpec& system) {
  const std::vector<int> dims = config.effective_dims();
  const int stable_dim = config.stable_dim >= 0 ? config.stable_dim : dims.front();
  const int unstable_dim = config.unstable_dim >= 0 ? config.unstable_dim : dims.back();
  DominationOptions options;
  options.alpha = config.alpha;
  options.iterate = config.iterate;
  options.samples = config.point_samples;
  options.seed = config.seed;
  options.n_fwd = config.n_fwd;
  options.n_bwd = config.n_bwd;
  options.coordinate_fallback = true;  // stagnation means no domination; report it, not an error
  const DominationReport report =
      verify_domination(system, dims, stable_dim, unstable_dim, config.cut, options);

  ExperimentResult result;
  result.json_name = "domination.json";
  result.report = report_header(config, Command::kDomination, system);
  result.report["alpha"] = config.alpha;
  result.report["cut"] = config.cut;
  result.report["dims"] = dims;
  result.report["report"] = to_json(report);
  result.headline = std::string("domination ") + (report.passed ? "passed" : "failed") +
                    ", empirical_lambda = " + brief(report.empirical_lambda);
  return result;
}

ExperimentResult run_grassmann(const ExperimentConfig& config, const SystemSpec& system) {
  GrassmannGapOptions options;
  options.point_samples = config.point_samples;
  options.frame_samples = config.frame_samples;
  options.seed = config.seed;
  options.cut = config.cut;
  options.dims = config.effective_dims();
  options.stable_dim = config.stable_dim;
  options.unstable_dim = config.unstable_dim;
  options.n_fwd = config.n_fwd;
  options.n_bwd = config.n_bwd;
  options.coordinate_fallback = true;
  const GrassmannGapStats stats = grassmann_gap_stats(system, config.n, options);

  ExperimentResult result;
  result.json_name = "grassmann.json";
  result.report = report_header(config, Command::kGrassmannCheck, system);
  result.report["n"] = config.n;
  result.report["cut"] = config.cut;
  result.report["point_samples"] = config.point_samples;
  result.report["frame_samples"] = config.frame_samples;
  result.report["gap_stats"] = to_json(stats);
  result.headline = "max Grassmannian gap = " + brief(stats.max_gap);
  return result;
}

ExperimentResult run_ball_growth(const ExperimentConfig& config, const SystemSpec& system) {
  BallGrowthOptions options;
  options.n_values = config.n_list;
  options.delta = config.delta;
  options.bundle = config.bundle;
  options.bundle_index = config.bundle_index;
  options.mc_count = config.mc_count;
  options.seed = config.seed;
  options.dims = config.effective_dims();
  options.stable_dim = config.stable_dim;
  options.unstable_dim = config.unstable_dim;
  options.n_fwd = config.n_fwd;
  options.n_bwd = config.n_bwd;

  std::vector<TorusPoint> centers;
  if (config.center) {
    Vec c(config.dimension);
    for (int i = 0; i < config.dimension; ++i) c[i] = (*config.center)[i];
    centers.emplace_back(c);
  } else {
    rng::Prng prng(config.seed, rng::Stream::kBallCenters);
    for (std::int64_t s = 0; s < config.centers; ++s) {
      centers.push_back(sample_torus_point(prng, static_cast<std::uint64_t>(s), config.dimension));
    }
  }

  std::vector<BallGrowthReport> reports;
  for (const TorusPoint& center : centers) {
    reports.push_back(ball_volume_growth(system, center, options));
  }

  ExperimentResult result;
  result.json_name = "ball_growth.json";
  result.report = report_header(config, Command::kBallGrowth, system);
  result.report["delta"] = config.delta;
  result.report["bundle"] = to_string(config.bundle);
  result.report["mc_count"] = config.mc_count;
  json centers_json = json::array();
  for (const BallGrowthReport& r : reports) centers_json.push_back(to_json(r));
  result.report["centers"] = centers_json;
  result.csv_files.emplace_back("ball_growth.csv", ball_growth_csv(reports));
  result.headline = "ball growth fitted_rate (center 0) = " + brief(reports.front().fitted_rate);
  return result;
}

ExperimentResult run_compare(const ExperimentConfig& config, const SystemSpec& system) {
  ExperimentResult volume = run_entropy_volume(config, system);
  ExperimentResult bowen = run_entropy_bowen(config, system);

  const double volume_rate = volume.report["growth_curve"]["fitted_rate"].get<double>();
  const double bowen_value = bowen.report["rate"].get<double>();

  json gaps;
  gaps["volume_vs_bowen"] = std::abs(volume_rate - bowen_value);
  bool pass = std::abs(volume_rate - bowen_value) <= config.tolerance;
  if (system.exact_entropy()) {
    const double exact = *system.exact_entropy();
    gaps["volume_vs_exact"] = std::abs(volume_rate - exact);
    gaps["bowen_vs_exact"] = std::abs(bowen_value - exact);
    pass = pass && std::abs(volume_rate - exact) <= config.tolerance &&
           std::abs(bowen_value - exact) <= config.tolerance;
  }

  ExperimentResult result;
  result.json_name = "compare.json";
  result.report = report_header(config, Command::kCompare, system);
  result.report["volume_rate"] = volume_rate;
  result.report["bowen_value"] = bowen_value;
  if (system.exact_entropy()) {
    result.report["exact_value"] = *system.exact_entropy();
    result.report["exact_note"] = system.entropy_note();
  }
  result.report["absolute_gaps"] = gaps;
  result.report["tolerance"] = config.tolerance;
  result.report["verdict"] = pass ? "pass" : "fail";
  result.report["volume_growth"] = volume.report["growth_curve"];
  result.report["bowen"] = bowen.report["ladder"];
  for (auto& csv : volume.csv_files) result.csv_files.push_back(std::move(csv));
  for (auto& csv : bowen.csv_files) result.csv_files.push_back(std::move(csv));
  result.headline = std::string("compare verdict: ") + (pass ? "pass" : "fail") +
                    " (volume " + brief(volume_rate) + ", bowen " + brief(bowen_value) + ")";
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, Command command) {
  const SystemSpec system = config.build_system();
  switch (command) {
    case Command::kEntropyVolume: return run_entropy_volume(config, system);
    case Command::kEntropyBowen: return run_entropy_bowen(config, system);
    case Command::kLyapunov: return run_lyapunov(config, system);
    case Command::kDomination: return run_domination(config, system);
    case Command::kGrassmannCheck: return run_grassmann(config, system);
    case Command::kBallGrowth: return run_ball_growth(config, system);
    case Command::kCompare: return run_compare(config, system);
  }
  throw ArgumentError("cli-reporting", "run", "unknown command");
}

}  // namespace volgrow
