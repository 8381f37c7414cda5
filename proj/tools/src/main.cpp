// kerrecs command-line front end.
//
//   kerrecs run <config> [--out DIR] [--jobs N]
//   kerrecs cases [--json]
//   kerrecs squeeze-check --alpha A [A ...] --eta ETA [--nmax N] [--out FILE]
//
// Exit status: 0 ok, 1 scenario failure, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kerrecs_cli/runner.hpp"

namespace {

constexpr const char* kOutDirEnv = "KERRECS_OUT_DIR";
constexpr int kExitOk = 0;
constexpr int kExitScenario = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr-nonlinear interferometer and entangled coherent state simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "Run every scenario in a JSON config");
  run->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, std::string("Output directory (default: $") + kOutDirEnv + ")");
  run->add_option("--jobs", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);

  bool cases_json = false;
  auto* cases = app.add_subcommand("cases", "List the built-in reference cases");
  cases->add_flag("--json", cases_json, "Print full descriptors as JSON");

  std::vector<double> alphas;
  double eta = 1.0;
  std::optional<int> n_max;
  std::string csv_path;
  auto* squeeze = app.add_subcommand("squeeze-check", "Compare the squeezing approximation with exact evolution");
  squeeze->add_option("--alpha", alphas, "Coherent amplitudes (real, > 0)")->required()->expected(1, -1);
  squeeze->add_option("--eta", eta, "eta = chi alpha^2 (|eta| > 1/2)")->required();
  squeeze->add_option("--nmax", n_max, "Fock cutoff (default: truncation rule per alpha)");
  squeeze->add_option("--out", csv_path, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  namespace kc = kerrecs::cli;
  try {
    if (*run) {
      if (out_dir.empty()) {
        if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') out_dir = env;
      }
      if (out_dir.empty()) {
        std::cerr << "run: no output directory; pass --out or set " << kOutDirEnv << "\n";
        return kExitUsage;
      }
      const auto scenarios = kc::load_scenarios(config_path);
      const auto results = kc::run_all(scenarios, jobs);
      for (const auto& r : results) {
        if (!r.ok) std::cerr << r.error << "\n";
      }
      const int status = kc::write_reports(results, out_dir);
      return status == 0 ? kExitOk : kExitScenario;
    }
    if (*cases) {
      const auto list = kc::list_reference_cases();
      if (cases_json) {
        std::cout << list.dump(2) << "\n";
      } else {
        for (const auto& c : list) {
          std::cout << c["id"].get<std::string>() << "\t" << c["pipeline"].get<std::string>() << "\t"
                    << c["closed_form"].get<std::string>() << "\n";
        }
      }
      return kExitOk;
    }
    if (*squeeze) {
      const std::string csv = kc::squeeze_check_csv(kc::squeeze_check(alphas, eta, n_max));
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        if (!out) {
          std::cerr << "squeeze-check: cannot write " << csv_path << "\n";
          return kExitScenario;
        }
        out << csv;
      }
      return kExitOk;
    }
  } catch (const kc::ParseError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitScenario;
  }
  return kExitUsage;
}
