#pragma once

// Scenario files, batch execution and report writing behind the kerrecs CLI.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kerrecs/ecs.hpp"
#include "kerrecs/interferometer.hpp"

namespace kerrecs::cli {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating scenario file. line/column are 1-based and
/// zero when the error is structural rather than syntactic.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class OutputKind { fidelity_report, photon_dist, qfunc_grid, coefficients, entropy, quadrature_scan };

std::string_view to_string(OutputKind kind);

struct OutputSpec {
  OutputKind kind;
  Json params = Json::object();
};

struct Scenario {
  std::string name;
  PipelineKind pipeline = PipelineKind::mach_zehnder;
  InterferometerConfig config;
  std::vector<OutputSpec> outputs;
};

/// Parses the {"scenarios": [...]} document. Throws ParseError.
std::vector<Scenario> parse_scenarios(std::string_view text);
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

/// Scenario fields as they appear in a scenario file.
Json scenario_to_json(const Scenario& scenario);

struct ScenarioResult {
  std::string name;
  bool ok = false;
  std::string error;
  Json report;                               ///< per-scenario JSON document
  std::map<std::string, std::string> csv;    ///< file name -> contents
};

/// Runs every requested output. Errors are captured in the result.
ScenarioResult run_scenario(const Scenario& scenario);

/// Runs scenarios on up to `jobs` threads; results come back sorted by name.
std::vector<ScenarioResult> run_all(const std::vector<Scenario>& scenarios, unsigned jobs = 1);

/// Writes <name>.json and CSVs per scenario plus report.json. Returns 0 if
/// every scenario succeeded, 1 otherwise.
int write_reports(const std::vector<ScenarioResult>& results, const std::filesystem::path& out_dir);

/// One descriptor per reference case, each with a "scenario" block that
/// parses back through parse_scenarios.
Json list_reference_cases();

/// Reference cases as runnable scenarios (fidelity_report against the
/// transcribed closed form plus entropy).
std::vector<Scenario> reference_scenarios();

struct SqueezeCheckRow {
  double alpha;
  double eta;
  double chi;
  int n_max;
  double residual;
  double fidelity;            ///< approximate vs exact sheared state
  double min_variance_exact;
  double min_variance_approx;
};

/// Sweeps real alpha at fixed real eta (chi = eta / alpha^2). n_max defaults
/// to the truncation rule per alpha.
std::vector<SqueezeCheckRow> squeeze_check(const std::vector<double>& alphas, double eta,
                                           std::optional<int> n_max = std::nullopt);
std::string squeeze_check_csv(const std::vector<SqueezeCheckRow>& rows);

/// Amplitudes as [re, im] pairs; two-mode states as rows over mode a.
Json state_to_json(const ModeState& psi);
Json state_to_json(const TwoModeState& psi);

/// [{coeff: [re,im], alpha: [re,im]}] and the same with beta for two modes.
Json superposition_to_json(const CoherentSuperposition& sup);
Json superposition_to_json(const TwoModeCoherentSuperposition& sup);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace kerrecs::cli
