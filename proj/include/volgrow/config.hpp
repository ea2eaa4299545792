#ifndef VOLGROW_CONFIG_HPP
#define VOLGROW_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "volgrow/bowen.hpp"
#include "volgrow/systems.hpp"
#include "volgrow/volume_growth.hpp"

namespace volgrow {

enum class Command {
  kEntropyVolume,
  kEntropyBowen,
  kLyapunov,
  kDomination,
  kGrassmannCheck,
  kBallGrowth,
  kCompare,
};

std::string to_string(Command command);
std::optional<Command> command_from_string(const std::string& name);

struct ConfigIssue {
  int line = 0;  // 0 when the failure is not tied to a line
  std::string key;
  std::string message;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string message, std::vector<ConfigIssue> issues)
      : Error("cli-reporting", "parse_config", std::move(message)), issues_(std::move(issues)) {}
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

// One experiment: a system, a command, and the numeric parameters the
// command's module requires. Parsing validates everything it can and reports
// every failure with its line number, not just the first.
struct ExperimentConfig {
  // [system]
  SystemKind kind = SystemKind::kLinearToral;
  int dimension = 2;
  std::vector<std::vector<long long>> matrix_rows;  // empty: kind default
  double epsilon = 0.0;
  std::optional<double> entropy_exact;
  std::string entropy_note;

  // [run]
  std::optional<Command> command;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::vector<long long> n_list;
  long long n = 12;
  double delta = 0.05;
  long long resolution = 1024;
  SamplerMode sampler = SamplerMode::kMonteCarlo;
  std::int64_t samples = 1024;
  CoverMethod method = CoverMethod::kSpanning;
  double tolerance = 0.1;
  std::int64_t mc_count = 1000000;
  BundleChoice bundle = BundleChoice::kMaxOverV;
  int bundle_index = 0;
  std::optional<std::vector<double>> center;
  std::int64_t centers = 1;
  double alpha = 1.0;
  long long iterate = 1;
  std::int64_t point_samples = 100;
  std::int64_t frame_samples = 20;
  std::vector<int> dims;  // empty: one block per dimension
  int stable_dim = -1;
  int unstable_dim = -1;
  int cut = 1;
  long long n_fwd = 40;
  long long n_bwd = 40;
  long long orbit_length = 10000;

  SystemSpec build_system() const;
  std::vector<int> effective_dims() const;
  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

// The grammar reference printed by `volgrow --help`.
std::string config_grammar();

}  // namespace volgrow

#endif  // VOLGROW_CONFIG_HPP
