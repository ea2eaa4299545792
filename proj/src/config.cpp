#include "volgrow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace volgrow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) parts.push_back(trim(item));
  return parts;
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

class Parser {
 public:
  explicit Parser(const std::string& text) {
    std::stringstream stream(text);
    std::string raw;
    int line = 0;
    std::string section;
    while (std::getline(stream, raw)) {
      ++line;
      std::string s = trim(raw);
      if (s.empty() || s[0] == '#') continue;
      if (s.front() == '[') {
        if (s.back() != ']') {
          issue(line, s, "malformed section header");
          continue;
        }
        section = trim(s.substr(1, s.size() - 2));
        if (section != "system" && section != "run") {
          issue(line, section, "unknown section '" + section + "' (expected [system] or [run])");
        }
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        issue(line, s, "expected 'key = value'");
        continue;
      }
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (section.empty()) {
        issue(line, key, "key outside any section; start with [system] or [run]");
        continue;
      }
      const std::string qualified = section + "." + key;
      if (entries_.count(qualified)) {
        issue(line, key, "duplicate key '" + key + "' in [" + section + "]");
        continue;
      }
      entries_[qualified] = RawEntry{value, line, false};
    }
  }

  void issue(int line, const std::string& key, const std::string& message) {
    issues_.push_back(ConfigIssue{line, key, message});
  }

  bool has(const std::string& qualified) const { return entries_.count(qualified) > 0; }

  const RawEntry* fetch(const std::string& qualified) {
    auto it = entries_.find(qualified);
    if (it == entries_.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  template <class Fn>
  void with(const std::string& qualified, Fn&& fn) {
    if (const RawEntry* entry = fetch(qualified)) fn(*entry);
  }

  double parse_real(const RawEntry& entry, const std::string& key, double fallback) {
    try {
      std::size_t used = 0;
      const double v = std::stod(entry.value, &used);
      if (used != entry.value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      issue(entry.line, key, "not a real number: '" + entry.value + "'");
      return fallback;
    }
  }

  long long parse_int(const RawEntry& entry, const std::string& key, long long fallback) {
    long long v = 0;
    const char* begin = entry.value.data();
    const char* end = begin + entry.value.size();
    const auto result = std::from_chars(begin, end, v);
    if (result.ec != std::errc() || result.ptr != end) {
      issue(entry.line, key, "not an integer: '" + entry.value + "'");
      return fallback;
    }
    return v;
  }

  void finish_unknown_keys() {
    for (const auto& [qualified, entry] : entries_) {
      if (!entry.consumed) {
        issue(entry.line, qualified, "unknown key '" + qualified + "'");
      }
    }
  }

  std::vector<ConfigIssue>& issues() { return issues_; }

 private:
  std::map<std::string, RawEntry> entries_;
  std::vector<ConfigIssue> issues_;
};

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::kEntropyVolume: return "entropy-volume";
    case Command::kEntropyBowen: return "entropy-bowen";
    case Command::kLyapunov: return "lyapunov";
    case Command::kDomination: return "domination";
    case Command::kGrassmannCheck: return "grassmann-check";
    case Command::kBallGrowth: return "ball-growth";
    case Command::kCompare: return "compare";
  }
  return "unknown";
}

std::optional<Command> command_from_string(const std::string& name) {
  if (name == "entropy-volume") return Command::kEntropyVolume;
  if (name == "entropy-bowen") return Command::kEntropyBowen;
  if (name == "lyapunov") return Command::kLyapunov;
  if (name == "domination") return Command::kDomination;
  if (name == "grassmann-check") return Command::kGrassmannCheck;
  if (name == "ball-growth") return Command::kBallGrowth;
  if (name == "compare") return Command::kCompare;
  return std::nullopt;
}

SystemSpec SystemSpec_from_config(const ExperimentConfig& config) {
  Mat matrix;
  if (!config.matrix_rows.empty()) {
    const int rows = static_cast<int>(config.matrix_rows.size());
    const int cols = static_cast<int>(config.matrix_rows.front().size());
    matrix.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) matrix(r, c) = static_cast<double>(config.matrix_rows[r][c]);
  }
  SystemSpec spec = [&] {
    switch (config.kind) {
      case SystemKind::kLinearToral:
        return config.matrix_rows.empty() ? SystemSpec::identity(config.dimension)
                                          : SystemSpec::linear_toral(matrix);
      case SystemKind::kSkewProduct:
        return config.matrix_rows.empty() ? SystemSpec::skew_product(config.epsilon)
                                          : SystemSpec::skew_product(config.epsilon, matrix);
      case SystemKind::kPerturbedCat:
        return config.matrix_rows.empty() ? SystemSpec::perturbed_cat(config.epsilon)
                                          : SystemSpec::perturbed_cat(config.epsilon, matrix);
    }
    throw ArgumentError("cli-reporting", "build_system", "unreachable kind");
  }();
  if (config.entropy_exact) spec.set_exact_entropy(*config.entropy_exact, config.entropy_note);
  return spec;
}

SystemSpec ExperimentConfig::build_system() const { return SystemSpec_from_config(*this); }

std::vector<int> ExperimentConfig::effective_dims() const {
  if (!dims.empty()) return dims;
  return std::vector<int>(static_cast<std::size_t>(dimension), 1);
}

ExperimentConfig parse_config(const std::string& text) {
  Parser parser(text);
  ExperimentConfig config;

  // [system]
  parser.with("system.kind", [&](const RawEntry& e) {
    if (e.value == "linear_toral") {
      config.kind = SystemKind::kLinearToral;
    } else if (e.value == "skew_product") {
      config.kind = SystemKind::kSkewProduct;
    } else if (e.value == "perturbed_cat") {
      config.kind = SystemKind::kPerturbedCat;
    } else {
      parser.issue(e.line, "kind", "unknown system kind '" + e.value + "'");
    }
  });
  if (!parser.has("system.kind")) {
    parser.issue(0, "kind", "missing required key [system] kind");
  }

  int dimension_line = 0;
  parser.with("system.dimension", [&](const RawEntry& e) {
    dimension_line = e.line;
    config.dimension = static_cast<int>(parser.parse_int(e, "dimension", 2));
  });
  if (config.kind == SystemKind::kSkewProduct) {
    if (parser.has("system.dimension") && config.dimension != 3) {
      parser.issue(dimension_line, "dimension", "skew_product is three dimensional");
    }
    config.dimension = 3;
  } else if (config.kind == SystemKind::kPerturbedCat) {
    if (parser.has("system.dimension") && config.dimension != 2) {
      parser.issue(dimension_line, "dimension", "perturbed_cat is two dimensional");
    }
    config.dimension = 2;
  }
  if (config.dimension < 1 || config.dimension > kMaxDim) {
    parser.issue(0, "dimension", "dimension must be in {1,...,4}");
    config.dimension = std::clamp(config.dimension, 1, static_cast<int>(kMaxDim));
  }

  const int matrix_dim = config.kind == SystemKind::kLinearToral ? config.dimension : 2;
  for (int r = 1; r <= kMaxDim; ++r) {
    const std::string key = "matrix_row_" + std::to_string(r);
    parser.with("system." + key, [&](const RawEntry& e) {
      if (r > matrix_dim) {
        parser.issue(e.line, key, "matrix has only " + std::to_string(matrix_dim) + " rows");
        return;
      }
      std::vector<long long> row;
      for (const std::string& part : split_list(e.value)) {
        long long v = 0;
        const auto result = std::from_chars(part.data(), part.data() + part.size(), v);
        if (result.ec != std::errc() || result.ptr != part.data() + part.size()) {
          parser.issue(e.line, key, "matrix entries must be integers, got '" + part + "'");
          return;
        }
        row.push_back(v);
      }
      if (static_cast<int>(row.size()) != matrix_dim) {
        parser.issue(e.line, key,
                     "expected " + std::to_string(matrix_dim) + " comma-separated integers");
        return;
      }
      config.matrix_rows.resize(static_cast<std::size_t>(matrix_dim));
      config.matrix_rows[static_cast<std::size_t>(r - 1)] = row;
    });
  }
  int matrix_header_line = 0;
  if (!config.matrix_rows.empty()) {
    for (std::size_t r = 0; r < config.matrix_rows.size(); ++r) {
      if (config.matrix_rows[r].empty()) {
        parser.issue(matrix_header_line, "matrix_row_" + std::to_string(r + 1),
                     "missing matrix row " + std::to_string(r + 1));
      }
    }
  }

  parser.with("system.epsilon",
              [&](const RawEntry& e) { config.epsilon = parser.parse_real(e, "epsilon", 0.0); });
  parser.with("system.entropy_exact", [&](const RawEntry& e) {
    config.entropy_exact = parser.parse_real(e, "entropy_exact", 0.0);
  });
  parser.with("system.entropy_note", [&](const RawEntry& e) { config.entropy_note = e.value; });

  // Structural validation that does not need the (possibly throwing)
  // SystemSpec constructor.
  const bool rows_complete =
      !config.matrix_rows.empty() &&
      std::none_of(config.matrix_rows.begin(), config.matrix_rows.end(),
                   [](const std::vector<long long>& row) { return row.empty(); });
  if (rows_complete) {
    Mat m(config.matrix_rows.size(), config.matrix_rows.front().size());
    for (std::size_t r = 0; r < config.matrix_rows.size(); ++r)
      for (std::size_t c = 0; c < config.matrix_rows[r].size(); ++c)
        m(static_cast<int>(r), static_cast<int>(c)) = static_cast<double>(config.matrix_rows[r][c]);
    const double det = m.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9) {
      parser.issue(0, "matrix", "unimodularity violated: |det A| must be 1, got det = " +
                                    std::to_string(det));
    }
  }
  if (config.epsilon < 0.0) parser.issue(0, "epsilon", "epsilon must be nonnegative");
  if (config.kind == SystemKind::kPerturbedCat && config.epsilon * kTwoPi >= 0.5) {
    parser.issue(0, "epsilon", "perturbed_cat requires eps * 2 pi < 0.5");
  }

  // System-dependent defaults.
  if (config.dimension >= 3) {
    config.delta = 0.08;
    config.resolution = 128;
  }
  if (config.dimension >= 4) {
    config.delta = 0.16;
    config.resolution = 64;
  }

  // [run]
  parser.with("run.command", [&](const RawEntry& e) {
    const auto cmd = command_from_string(e.value);
    if (!cmd) {
      parser.issue(e.line, "command", "unknown command '" + e.value + "'");
      return;
    }
    config.command = cmd;
  });
  parser.with("run.seed", [&](const RawEntry& e) {
    const long long v = parser.parse_int(e, "seed", 0);
    if (v < 0) {
      parser.issue(e.line, "seed", "seed must be nonnegative");
    } else {
      config.seed = static_cast<std::uint64_t>(v);
    }
  });
  parser.with("run.out_dir", [&](const RawEntry& e) { config.out_dir = e.value; });
  parser.with("run.n", [&](const RawEntry& e) {
    config.n = parser.parse_int(e, "n", config.n);
    if (config.n < 1) parser.issue(e.line, "n", "n must be >= 1");
  });
  parser.with("run.n_list", [&](const RawEntry& e) {
    std::vector<long long> values;
    for (const std::string& part : split_list(e.value)) {
      long long v = 0;
      const auto result = std::from_chars(part.data(), part.data() + part.size(), v);
      if (result.ec != std::errc() || result.ptr != part.data() + part.size()) {
        parser.issue(e.line, "n_list", "entries must be integers, got '" + part + "'");
        return;
      }
      values.push_back(v);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 1 || (i > 0 && values[i] <= values[i - 1])) {
        parser.issue(e.line, "n_list", "n_list must be strictly increasing and positive");
        return;
      }
    }
    config.n_list = values;
  });
  parser.with("run.delta", [&](const RawEntry& e) {
    config.delta = parser.parse_real(e, "delta", config.delta);
    if (!(config.delta > 0.0) || !(config.delta < 0.5)) {
      parser.issue(e.line, "delta", "delta must satisfy 0 < delta < 0.5");
    }
  });
  parser.with("run.resolution", [&](const RawEntry& e) {
    config.resolution = parser.parse_int(e, "resolution", config.resolution);
    if (config.resolution < 2) parser.issue(e.line, "resolution", "resolution must be >= 2");
    double total = 1.0;
    for (int i = 0; i < config.dimension; ++i) total *= static_cast<double>(config.resolution);
    if (total > static_cast<double>(1ll << 24)) {
      parser.issue(e.line, "resolution", "resolution^dimension exceeds the 2^24 grid budget");
    }
  });
  parser.with("run.sampler", [&](const RawEntry& e) {
    if (e.value == "monte_carlo") {
      config.sampler = SamplerMode::kMonteCarlo;
    } else if (e.value == "grid") {
      config.sampler = SamplerMode::kGrid;
    } else {
      parser.issue(e.line, "sampler", "sampler must be monte_carlo or grid");
    }
  });
  parser.with("run.samples", [&](const RawEntry& e) {
    config.samples = parser.parse_int(e, "samples", config.samples);
    if (config.samples < 1) parser.issue(e.line, "samples", "samples must be >= 1");
  });
  parser.with("run.method", [&](const RawEntry& e) {
    if (e.value == "spanning") {
      config.method = CoverMethod::kSpanning;
    } else if (e.value == "separated") {
      config.method = CoverMethod::kSeparated;
    } else {
      parser.issue(e.line, "method", "method must be spanning or separated");
    }
  });
  parser.with("run.tolerance", [&](const RawEntry& e) {
    config.tolerance = parser.parse_real(e, "tolerance", config.tolerance);
    if (!(config.tolerance > 0.0)) parser.issue(e.line, "tolerance", "tolerance must be positive");
  });
  parser.with("run.mc_count", [&](const RawEntry& e) {
    config.mc_count = parser.parse_int(e, "mc_count", config.mc_count);
    if (config.mc_count < 100) parser.issue(e.line, "mc_count", "mc_count must be >= 100");
  });
  parser.with("run.bundle", [&](const RawEntry& e) {
    if (e.value == "max_over_V") {
      config.bundle = BundleChoice::kMaxOverV;
    } else if (e.value == "max_over_F_i") {
      config.bundle = BundleChoice::kMaxOverFi;
    } else if (e.value == "fixed_F_i") {
      config.bundle = BundleChoice::kFixedFi;
    } else {
      parser.issue(e.line, "bundle", "bundle must be max_over_V, max_over_F_i, or fixed_F_i");
    }
  });
  parser.with("run.bundle_index", [&](const RawEntry& e) {
    config.bundle_index = static_cast<int>(parser.parse_int(e, "bundle_index", config.bundle_index));
    if (config.bundle_index < 0) parser.issue(e.line, "bundle_index", "bundle_index must be >= 0");
  });
  parser.with("run.center", [&](const RawEntry& e) {
    std::vector<double> coords;
    for (const std::string& part : split_list(e.value)) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(part, &used));
        if (used != part.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        parser.issue(e.line, "center", "center coordinates must be reals");
        return;
      }
    }
    if (static_cast<int>(coords.size()) != config.dimension) {
      parser.issue(e.line, "center", "center needs exactly " + std::to_string(config.dimension) +
                                         " coordinates");
      return;
    }
    config.center = coords;
  });
  parser.with("run.centers", [&](const RawEntry& e) {
    config.centers = parser.parse_int(e, "centers", config.centers);
    if (config.centers < 1) parser.issue(e.line, "centers", "centers must be >= 1");
  });
  parser.with("run.alpha", [&](const RawEntry& e) {
    config.alpha = parser.parse_real(e, "alpha", config.alpha);
    if (!(config.alpha > 0.0)) parser.issue(e.line, "alpha", "alpha must be positive");
  });
  parser.with("run.iterate", [&](const RawEntry& e) {
    config.iterate = parser.parse_int(e, "iterate", config.iterate);
    if (config.iterate < 1) parser.issue(e.line, "iterate", "iterate must be >= 1");
  });
  parser.with("run.point_samples", [&](const RawEntry& e) {
    config.point_samples = parser.parse_int(e, "point_samples", config.point_samples);
    if (config.point_samples < 1) parser.issue(e.line, "point_samples", "point_samples must be >= 1");
  });
  parser.with("run.frame_samples", [&](const RawEntry& e) {
    config.frame_samples = parser.parse_int(e, "frame_samples", config.frame_samples);
    if (config.frame_samples < 1) parser.issue(e.line, "frame_samples", "frame_samples must be >= 1");
  });
  parser.with("run.dims", [&](const RawEntry& e) {
    std::vector<int> dims;
    int total = 0;
    for (const std::string& part : split_list(e.value)) {
      int v = 0;
      const auto result = std::from_chars(part.data(), part.data() + part.size(), v);
      if (result.ec != std::errc() || result.ptr != part.data() + part.size() || v < 1) {
        parser.issue(e.line, "dims", "dims must be positive integers");
        return;
      }
      dims.push_back(v);
      total += v;
    }
    if (total != config.dimension) {
      parser.issue(e.line, "dims", "dims must sum to the system dimension");
      return;
    }
    config.dims = dims;
  });
  parser.with("run.stable_dim", [&](const RawEntry& e) {
    config.stable_dim = static_cast<int>(parser.parse_int(e, "stable_dim", config.stable_dim));
  });
  parser.with("run.unstable_dim", [&](const RawEntry& e) {
    config.unstable_dim = static_cast<int>(parser.parse_int(e, "unstable_dim", config.unstable_dim));
  });
  parser.with("run.cut", [&](const RawEntry& e) {
    config.cut = static_cast<int>(parser.parse_int(e, "cut", config.cut));
    const int blocks = static_cast<int>(config.effective_dims().size());
    if (config.cut < 1 || config.cut >= blocks) {
      parser.issue(e.line, "cut", "cut must split the blocks into two nonempty parts");
    }
  });
  parser.with("run.n_fwd", [&](const RawEntry& e) {
    config.n_fwd = parser.parse_int(e, "n_fwd", config.n_fwd);
    if (config.n_fwd < 1) parser.issue(e.line, "n_fwd", "n_fwd must be >= 1");
  });
  parser.with("run.n_bwd", [&](const RawEntry& e) {
    config.n_bwd = parser.parse_int(e, "n_bwd", config.n_bwd);
    if (config.n_bwd < 1) parser.issue(e.line, "n_bwd", "n_bwd must be >= 1");
  });
  parser.with("run.orbit_length", [&](const RawEntry& e) {
    config.orbit_length = parser.parse_int(e, "orbit_length", config.orbit_length);
    if (config.orbit_length < 1) parser.issue(e.line, "orbit_length", "orbit_length must be >= 1");
  });

  parser.finish_unknown_keys();

  // Cross-checks that need several fields at once.
  if (config.n_list.empty()) {
    config.n_list = {10, 20, 30, 40, 50};
  }
  if (parser.issues().empty()) {
    try {
      (void)config.build_system();
    } catch (const ArgumentError& e) {
      parser.issue(0, "system", e.what());
    }
  }

  if (!parser.issues().empty()) {
    std::string summary = std::to_string(parser.issues().size()) + " validation failure(s)";
    throw ConfigError(summary, parser.issues());
  }
  return config;
}

namespace {

std::string format_real(double v) {
  char buffer[32];
  snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[system]\n";
  out << "kind = " << to_string(config.kind) << "\n";
  out << "dimension = " << config.dimension << "\n";
  for (std::size_t r = 0; r < config.matrix_rows.size(); ++r) {
    out << "matrix_row_" << (r + 1) << " = ";
    for (std::size_t c = 0; c < config.matrix_rows[r].size(); ++c) {
      if (c) out << ", ";
      out << config.matrix_rows[r][c];
    }
    out << "\n";
  }
  out << "epsilon = " << format_real(config.epsilon) << "\n";
  if (config.entropy_exact) {
    out << "entropy_exact = " << format_real(*config.entropy_exact) << "\n";
    if (!config.entropy_note.empty()) out << "entropy_note = " << config.entropy_note << "\n";
  }

  out << "\n[run]\n";
  if (config.command) out << "command = " << to_string(*config.command) << "\n";
  out << "seed = " << config.seed << "\n";
  out << "out_dir = " << config.out_dir << "\n";
  out << "n = " << config.n << "\n";
  out << "n_list = ";
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (i) out << ", ";
    out << config.n_list[i];
  }
  out << "\n";
  out << "delta = " << format_real(config.delta) << "\n";
  out << "resolution = " << config.resolution << "\n";
  out << "sampler = " << (config.sampler == SamplerMode::kMonteCarlo ? "monte_carlo" : "grid") << "\n";
  out << "samples = " << config.samples << "\n";
  out << "method = " << to_string(config.method) << "\n";
  out << "tolerance = " << format_real(config.tolerance) << "\n";
  out << "mc_count = " << config.mc_count << "\n";
  out << "bundle = " << to_string(config.bundle) << "\n";
  out << "bundle_index = " << config.bundle_index << "\n";
  if (config.center) {
    out << "center = ";
    for (std::size_t i = 0; i < config.center->size(); ++i) {
      if (i) out << ", ";
      out << format_real((*config.center)[i]);
    }
    out << "\n";
  }
  out << "centers = " << config.centers << "\n";
  out << "alpha = " << format_real(config.alpha) << "\n";
  out << "iterate = " << config.iterate << "\n";
  out << "point_samples = " << config.point_samples << "\n";
  out << "frame_samples = " << config.frame_samples << "\n";
  if (!config.dims.empty()) {
    out << "dims = ";
    for (std::size_t i = 0; i < config.dims.size(); ++i) {
      if (i) out << ", ";
      out << config.dims[i];
    }
    out << "\n";
  }
  out << "stable_dim = " << config.stable_dim << "\n";
  out << "unstable_dim = " << config.unstable_dim << "\n";
  out << "cut = " << config.cut << "\n";
  out << "n_fwd = " << config.n_fwd << "\n";
  out << "n_bwd = " << config.n_bwd << "\n";
  out << "orbit_length = " << config.orbit_length << "\n";
  return out.str();
}

std::string config_grammar() {
  return R"(Config grammar: UTF-8 text, '#' comments, two sections.

[system]
  kind = linear_toral | skew_product | perturbed_cat   (required)
  dimension = 1..4            (skew_product: 3, perturbed_cat: 2)
  matrix_row_1 = 2, 1         integer rows; |det| must be 1
  matrix_row_2 = 1, 1         (linear_toral default: identity;
                               skew/perturbed default: [[2,1],[1,1]])
  epsilon = 0.05              perturbation amplitude (>= 0)
  entropy_exact = 0.96242365  optional known entropy
  entropy_note = ...          provenance of entropy_exact

[run]
  command = entropy-volume | entropy-bowen | lyapunov | domination |
            grassmann-check | ball-growth | compare
                              optional; must match the CLI subcommand
  seed = 0                    master seed; all randomness derives from it
  out_dir = .                 report directory (CLI --out overrides)
  n_list = 10, 20, 30, 40, 50 strictly increasing; volume/ball commands
  n = 12                      top orbit length; bowen commands
  delta = 0.05                metric radius, 0 < delta < 0.5
                              (default 0.05 for d=2, 0.08 for d=3)
  resolution = 1024           grid per axis; resolution^d <= 2^24
  sampler = monte_carlo | grid
  samples = 1024              monte_carlo count or grid points per axis
  method = spanning | separated
  tolerance = 0.1             compare verdict tolerance
  mc_count = 1000000          ball-growth rejection samples (>= 100)
  bundle = max_over_V | max_over_F_i | fixed_F_i
  bundle_index = 0            which F^i for fixed_F_i
  center = 0.3, 0.6           optional explicit ball center
  centers = 1                 number of sampled ball centers
  alpha = 1.0                 cone width (domination)
  iterate = 1                 domination iterate T
  point_samples = 100         domination / grassmann point samples
  frame_samples = 20          grassmann frame samples
  dims = 1, 1                 splitting block dimensions (sum = d)
  stable_dim = -1             -1: first block; 0: no stable block
  unstable_dim = -1           -1: last block; 0: no unstable block
  cut = 1                     E = blocks[0,cut), F = blocks[cut,...)
  n_fwd = 40                  forward flag iterations
  n_bwd = 40                  backward flag iterations
  orbit_length = 10000        lyapunov orbit length
)";
}

}  // namespace volgrow
