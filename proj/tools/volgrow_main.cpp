// volgrow: evaluates torus diffeomorphism entropy two ways (tangent-space
// volume growth and Bowen/Katok ball counts) plus the supporting splitting,
// domination, and Lyapunov diagnostics. See --help for the config grammar.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "volgrow/config.hpp"
#include "volgrow/reports.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitConvergence = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw volgrow::ConfigError("cannot open config file '" + path + "'", {});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_command(volgrow::Command command, const std::string& config_path,
                std::optional<std::uint64_t> seed_override, std::optional<std::string> out_override) {
  volgrow::ExperimentConfig config = volgrow::parse_config(read_file(config_path));
  if (config.command && *config.command != command) {
    throw volgrow::ConfigError("config names command '" + to_string(*config.command) +
                                   "' but the CLI invoked '" + to_string(command) + "'",
                               {{0, "command", "command mismatch"}});
  }
  if (seed_override) config.seed = *seed_override;
  if (out_override) config.out_dir = *out_override;

  const volgrow::ExperimentResult result = volgrow::run_experiment(config, command);

  std::filesystem::create_directories(config.out_dir);
  const auto write = [&](const std::string& name, const std::string& contents) {
    const std::filesystem::path path = std::filesystem::path(config.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) throw volgrow::NumericalError("cli-reporting", "run", "failed to write " + path.string());
    std::cout << "wrote " << path.string() << "\n";
  };
  write(result.json_name, result.report.dump(2) + "\n");
  for (const auto& [name, contents] : result.csv_files) write(name, contents);
  std::cout << result.headline << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volgrow: volume-growth and Bowen entropy estimators for torus diffeomorphisms"};
  app.footer(volgrow::config_grammar());

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  volgrow::Command selected = volgrow::Command::kCompare;
  bool have_command = false;

  const auto add_command = [&](const std::string& name, const std::string& description,
                               volgrow::Command command) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "path to the experiment config")->required();
    sub->add_option("--seed", [&seed_override](const std::vector<std::string>& values) {
      seed_override = std::stoull(values.front());
      return true;
    }, "override the config seed");
    sub->add_option("--out", [&out_override](const std::vector<std::string>& values) {
      out_override = values.front();
      return true;
    }, "override the report directory");
    sub->callback([&, command] {
      selected = command;
      have_command = true;
    });
  };

  add_command("entropy-volume", "growth rate of the tangent-volume integral", volgrow::Command::kEntropyVolume);
  add_command("entropy-bowen", "spanning/separated (n,delta)-ball entropy", volgrow::Command::kEntropyBowen);
  add_command("lyapunov", "Lyapunov spectrum along sampled orbits", volgrow::Command::kLyapunov);
  add_command("domination", "empirical domination / cone-field check", volgrow::Command::kDomination);
  add_command("grassmann-check", "max determinant gap over random subspaces", volgrow::Command::kGrassmannCheck);
  add_command("ball-growth", "integrals over dynamical balls", volgrow::Command::kBallGrowth);
  add_command("compare", "run both entropy estimators and compare", volgrow::Command::kCompare);
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  if (!have_command) {
    std::cerr << app.help() << "\n";
    return kExitConfig;
  }

  try {
    return run_command(selected, config_path, seed_override, out_override);
  } catch (const volgrow::ConfigError& e) {
    std::cerr << volgrow::error_json(e).dump(2) << "\n";
    return kExitConfig;
  } catch (const volgrow::ArgumentError& e) {
    std::cerr << volgrow::error_json("argument", e.module_name(), e.operation(), e.what()).dump(2) << "\n";
    return kExitConfig;
  } catch (const volgrow::ConvergenceError& e) {
    std::cerr << volgrow::error_json("convergence", e.module_name(), e.operation(), e.what()).dump(2)
              << "\n";
    return kExitConvergence;
  } catch (const volgrow::NumericalError& e) {
    std::cerr << volgrow::error_json("numerical", e.module_name(), e.operation(), e.what()).dump(2) << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << volgrow::error_json("numerical", "cli-reporting", "run", e.what()).dump(2) << "\n";
    return kExitNumerical;
  }
}
