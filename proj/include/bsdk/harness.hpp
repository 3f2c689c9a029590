#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bsdk/dynamics.hpp"

namespace bsdk {

/// Configuration problem, reported with the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class InitKind { SampleBs, SampleInterior, Explicit };

struct InitSpec {
  InitKind kind = InitKind::SampleBs;
  std::uint64_t seed = 0;
  std::vector<Matrix> states;  // explicit mode only
};

struct OutputSpec {
  std::string csv;
  std::string jsonl;  // optional
};

struct CheckSpec {
  double tolerance = 1e-6;
  int transports = 100;
};

struct Scenario {
  int version = 1;
  ModelSpec model;
  int n_oscillators = 1;
  InitSpec init;
  IntegrationConfig integration;
  OutputSpec output;
  CheckSpec check;
};

Scenario parse_scenario(const nlohmann::json& j);
nlohmann::json serialize_scenario(const Scenario& s);
Scenario load_scenario_file(const std::string& path);

EnsembleState build_initial_state(const Scenario& s);

struct RunOptions {
  bool force = false;
  bool gnuplot_stub = false;
  int workers = 0;  // 0 = auto
};

/// Integrates the scenario and writes its outputs. Throws ScenarioError on
/// configuration problems and Error(DivergenceDetected) on blowup.
void run_scenario(const Scenario& s, const RunOptions& options, std::ostream& log);

struct CheckResult {
  bool ok = false;
  double max_discrepancy = 0.0;
  std::string detail;
};

CheckResult check_lift(const Scenario& s);
CheckResult check_reduction(const Scenario& s);
CheckResult check_rank(const Scenario& s);
CheckResult check_tangency(const Scenario& s);

std::string info_text(const DomainSpec& spec);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path);

/// Worker count from the BSD_KURAMOTO_THREADS environment variable
/// (0 or unset = auto).
int worker_count_from_env();

int cli_main(int argc, char** argv);

}  // namespace bsdk
