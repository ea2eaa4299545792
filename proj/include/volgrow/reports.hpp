#ifndef VOLGROW_REPORTS_HPP
#define VOLGROW_REPORTS_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "volgrow/bowen.hpp"
#include "volgrow/config.hpp"
#include "volgrow/splitting.hpp"
#include "volgrow/volume_growth.hpp"

namespace volgrow {

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json to_json(const SystemSpec& system);
nlohmann::json to_json(const TorusPoint& point);
nlohmann::json to_json(const GrowthCurve& curve);
nlohmann::json to_json(const EntropyEstimate& estimate);
nlohmann::json to_json(const EntropyLadder& ladder);
nlohmann::json to_json(const LyapunovEstimate& estimate);
nlohmann::json to_json(const DominationReport& report);
nlohmann::json to_json(const GrassmannGapStats& stats);
nlohmann::json to_json(const BallGrowthReport& report);

std::string growth_curve_csv(const GrowthCurve& curve);
std::string entropy_ladder_csv(const EntropyLadder& ladder);
std::string lyapunov_csv(const std::vector<LyapunovEstimate>& estimates);
std::string ball_growth_csv(const std::vector<BallGrowthReport>& reports);

// JSON error object for the CLI's stderr; category is one of config,
// argument, numerical, convergence.
nlohmann::json error_json(const std::string& category, const std::string& module,
                          const std::string& operation, const std::string& message);
nlohmann::json error_json(const ConfigError& error);

struct ExperimentResult {
  std::string json_name;
  nlohmann::json report;
  std::vector<std::pair<std::string, std::string>> csv_files;  // name -> contents
  std::string headline;
};

// Executes the command against the config deterministically under the seed.
ExperimentResult run_experiment(const ExperimentConfig& config, Command command);

}  // namespace volgrow

#endif  // VOLGROW_REPORTS_HPP
