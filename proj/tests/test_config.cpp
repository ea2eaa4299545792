#include <doctest.h>

#include <algorithm>

#include "volgrow/config.hpp"

using namespace volgrow;

namespace {

const char* kCompareConfig = R"(# minimal cat-map comparison
[system]
kind = linear_toral
dimension = 2
matrix_row_1 = 2, 1
matrix_row_2 = 1, 1
entropy_exact = 0.9624236501192069
entropy_note = log of the leading eigenvalue of the matrix

[run]
command = compare
seed = 0
n_list = 10, 20, 30, 40, 50
n = 12
delta = 0.05
resolution = 1024
samples = 128
)";

bool has_issue(const ConfigError& error, const std::string& needle) {
  return std::any_of(error.issues().begin(), error.issues().end(), [&](const ConfigIssue& issue) {
    return issue.message.find(needle) != std::string::npos || issue.key.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("minimal compare config parses and builds") {
  const ExperimentConfig config = parse_config(kCompareConfig);
  CHECK(config.kind == SystemKind::kLinearToral);
  CHECK(config.dimension == 2);
  CHECK(config.command == Command::kCompare);
  CHECK(config.n_list.size() == 5);
  CHECK(config.delta == 0.05);
  CHECK(config.entropy_exact.has_value());
  const SystemSpec system = config.build_system();
  CHECK(system.kind() == SystemKind::kLinearToral);
  CHECK(system.exact_entropy().has_value());
}

TEST_CASE("non-unimodular matrices are rejected by name") {
  const std::string text = R"([system]
kind = linear_toral
dimension = 2
matrix_row_1 = 2, 0
matrix_row_2 = 0, 1
)";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_issue(e, "unimodularity"));
  }
}

TEST_CASE("delta limit is reported with its line") {
  const std::string text = R"([system]
kind = linear_toral
dimension = 2

[run]
delta = 0.6
)";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].key == "delta");
    CHECK(e.issues()[0].line == 6);
    CHECK(has_issue(e, "delta < 0.5"));
  }
}

TEST_CASE("all validation failures are reported, not just the first") {
  const std::string text = R"([system]
kind = linear_toral
dimension = 2
bogus_key = 1

[run]
delta = 0.6
samples = 0
n = -3
)";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.issues().size() >= 4);
    CHECK(has_issue(e, "bogus_key"));
    CHECK(has_issue(e, "delta"));
    CHECK(has_issue(e, "samples"));
    CHECK(has_issue(e, "n must be >= 1"));
  }
}

TEST_CASE("missing required kind is an error") {
  CHECK_THROWS_AS(parse_config("[run]\nseed = 1\n"), ConfigError);
}

TEST_CASE("unknown command and mismatch detection") {
  const std::string text = R"([system]
kind = linear_toral
dimension = 2

[run]
command = entropy-everything
)";
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("serialize - parse round trip is identity") {
  const ExperimentConfig config = parse_config(kCompareConfig);
  const std::string canonical = serialize_config(config);
  const ExperimentConfig reparsed = parse_config(canonical);
  CHECK(reparsed == config);
  CHECK(serialize_config(reparsed) == canonical);
}

TEST_CASE("skew and perturbed configs carry their shape constraints") {
  const std::string skew = R"([system]
kind = skew_product
epsilon = 0.1
)";
  const ExperimentConfig config = parse_config(skew);
  CHECK(config.dimension == 3);
  CHECK(config.delta == 0.08);       // dimension-3 default
  CHECK(config.resolution == 128);

  const std::string bad = R"([system]
kind = perturbed_cat
epsilon = 0.2
)";
  try {
    parse_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_issue(e, "eps * 2 pi"));
  }
}
