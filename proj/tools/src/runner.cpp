#include "kerrecs_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "kerrecs/ecs.hpp"
#include "kerrecs/elements.hpp"
#include "kerrecs/errors.hpp"
#include "kerrecs/squeezing.hpp"

namespace kerrecs::cli {

namespace {

constexpr std::array<OutputKind, 6> kAllKinds{OutputKind::fidelity_report, OutputKind::photon_dist,
                                              OutputKind::qfunc_grid,      OutputKind::coefficients,
                                              OutputKind::entropy,         OutputKind::quadrature_scan};

// ---------------------------------------------------------------- parsing

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

void check_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(where, "unknown field '" + key + "'");
  }
}

double get_real(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

Complex get_complex(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
  return {get_real(v[0], where + "[0]"), get_real(v[1], where + "[1]")};
}

ChiSpec get_chi(const Json& v, const std::string& where) {
  if (v.is_number()) return get_real(v, where);
  if (v.is_object()) {
    check_keys(v, where, {"r", "s"});
    if (!v.contains("r") || !v.contains("s") || !v["r"].is_number_integer() || !v["s"].is_number_integer()) {
      fail(where, "expected integer fields r and s");
    }
    const auto s = v["s"].get<std::int64_t>();
    if (s == 0) fail(where + ".s", "must be non-zero");
    return RationalChi(v["r"].get<std::int64_t>(), s);
  }
  fail(where, "expected a number or {\"r\": int, \"s\": int}");
}

bool same_chi(const ChiSpec& a, const ChiSpec& b) {
  const auto ra = as_rational(a);
  const auto rb = as_rational(b);
  if (ra && rb) return *ra == *rb;
  return chi_value(a) == chi_value(b);
}

std::optional<OutputKind> parse_output_kind(std::string_view name) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

Mode get_mode(const Json& params, const std::string& where) {
  if (!params.contains("mode")) return Mode::a;
  const Json& m = params["mode"];
  if (m == "a") return Mode::a;
  if (m == "b") return Mode::b;
  fail(where + ".mode", "expected \"a\" or \"b\"");
}

void validate_params(OutputKind kind, const Json& params, const std::string& where) {
  if (!params.is_object()) fail(where, "params must be an object");
  switch (kind) {
    case OutputKind::fidelity_report:
      check_keys(params, where, {"reference"});
      if (params.contains("reference")) {
        if (!params["reference"].is_string()) fail(where + ".reference", "expected a reference case id");
        try {
          parse_reference_case(params["reference"].get<std::string>());
        } catch (const std::invalid_argument& e) {
          fail(where + ".reference", e.what());
        }
      }
      break;
    case OutputKind::photon_dist:
    case OutputKind::coefficients:
    case OutputKind::entropy:
      check_keys(params, where, {});
      break;
    case OutputKind::qfunc_grid: {
      check_keys(params, where, {"mode", "center", "half_width", "resolution"});
      get_mode(params, where);
      for (const char* key : {"center", "half_width", "resolution"}) {
        if (!params.contains(key)) fail(where, std::string("qfunc_grid requires '") + key + "'");
      }
      get_complex(params["center"], where + ".center");
      if (get_real(params["half_width"], where + ".half_width") <= 0.0) fail(where + ".half_width", "must be > 0");
      if (!params["resolution"].is_number_integer() || params["resolution"].get<int>() < 2) {
        fail(where + ".resolution", "expected an integer >= 2");
      }
      break;
    }
    case OutputKind::quadrature_scan:
      check_keys(params, where, {"mode", "points"});
      get_mode(params, where);
      if (params.contains("points") && (!params["points"].is_number_integer() || params["points"].get<int>() < 1)) {
        fail(where + ".points", "expected a positive integer");
      }
      break;
  }
}

Scenario parse_scenario(const Json& s, const std::string& where) {
  if (!s.is_object()) fail(where, "expected an object");
  check_keys(s, where, {"name", "pipeline", "alpha", "beta", "chi1", "chi2", "delta", "tau", "n_max", "outputs"});
  Scenario out;

  if (!s.contains("name") || !s["name"].is_string()) fail(where, "missing string field 'name'");
  out.name = s["name"].get<std::string>();
  static const std::regex kName("[A-Za-z0-9_.-]+");
  if (!std::regex_match(out.name, kName)) fail(where + ".name", "must match [A-Za-z0-9_.-]+");
  const std::string at = where + " (" + out.name + ")";

  if (!s.contains("pipeline") || !s["pipeline"].is_string()) fail(at, "missing string field 'pipeline'");
  const auto kind = parse_pipeline_kind(s["pipeline"].get<std::string>());
  if (!kind) fail(at + ".pipeline", "expected mach_zehnder, single_cell or three_cell");
  out.pipeline = *kind;

  if (!s.contains("alpha")) fail(at, "missing field 'alpha'");
  out.config.alpha = get_complex(s["alpha"], at + ".alpha");
  if (s.contains("beta")) out.config.beta = get_complex(s["beta"], at + ".beta");

  if (!s.contains("chi1")) fail(at, "missing field 'chi1'");
  out.config.chi1 = get_chi(s["chi1"], at + ".chi1");
  if (s.contains("chi2")) {
    out.config.chi2 = get_chi(s["chi2"], at + ".chi2");
  } else if (out.pipeline == PipelineKind::mach_zehnder) {
    fail(at, "mach_zehnder requires 'chi2'");
  } else {
    out.config.chi2 = out.config.chi1;
  }
  if (out.pipeline != PipelineKind::mach_zehnder && !same_chi(out.config.chi1, out.config.chi2)) {
    fail(at + ".chi2", "cell pipelines use a single nonlinearity; chi2 must be absent or equal to chi1");
  }

  if (s.contains("delta")) out.config.delta = get_real(s["delta"], at + ".delta");
  if (s.contains("tau")) out.config.tau = get_real(s["tau"], at + ".tau");
  if (s.contains("n_max")) {
    if (!s["n_max"].is_number_integer() || s["n_max"].get<int>() < 0) fail(at + ".n_max", "expected an integer >= 0");
    out.config.n_max = s["n_max"].get<int>();
  }

  if (!s.contains("outputs") || !s["outputs"].is_array()) fail(at, "missing array field 'outputs'");
  for (std::size_t k = 0; k < s["outputs"].size(); ++k) {
    const Json& o = s["outputs"][k];
    const std::string ow = at + ".outputs[" + std::to_string(k) + "]";
    if (!o.is_object()) fail(ow, "expected an object");
    check_keys(o, ow, {"kind", "params"});
    if (!o.contains("kind") || !o["kind"].is_string()) fail(ow, "missing string field 'kind'");
    const auto ok = parse_output_kind(o["kind"].get<std::string>());
    if (!ok) fail(ow + ".kind", "unknown output kind '" + o["kind"].get<std::string>() + "'");
    OutputSpec spec{*ok, o.value("params", Json::object())};
    validate_params(spec.kind, spec.params, ow + ".params");
    out.outputs.push_back(std::move(spec));
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// ---------------------------------------------------------------- outputs

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json chi_json(const ChiSpec& chi) {
  if (const auto r = as_rational(chi)) return Json{{"r", r->r()}, {"s", r->s()}};
  return chi_value(chi);
}

struct Context {
  const Scenario& scenario;
  int n_max;
  TwoModeState numeric;
  std::optional<TwoModeCoherentSuperposition> analytic;
  std::string analytic_reason;
};

double normalized_fidelity(const TwoModeState& a, const TwoModeState& b) {
  return fidelity(a, b) / (a.norm_squared() * b.norm_squared());
}

std::string csv_name(const Scenario& s, OutputKind kind, int repeat) {
  std::string name = s.name + "_" + std::string(to_string(kind));
  if (repeat > 0) name += "_" + std::to_string(repeat);
  return name + ".csv";
}

Json fidelity_report(const Context& ctx, const Json& params) {
  Json out;
  out["n_max"] = ctx.n_max;
  out["norm"] = ctx.numeric.norm_squared();
  out["tail_loss"] = ctx.numeric.tail_loss();
  Json analytic;
  if (ctx.analytic) {
    analytic["available"] = true;
    analytic["terms"] = ctx.analytic->size();
    analytic["fidelity"] = normalized_fidelity(ctx.numeric, synthesize_fock(*ctx.analytic, ctx.n_max));
  } else {
    analytic["available"] = false;
    analytic["reason"] = ctx.analytic_reason;
  }
  out["analytic"] = analytic;
  if (params.contains("reference")) {
    const ReferenceCase id = parse_reference_case(params["reference"].get<std::string>());
    const TwoModeState ref = synthesize_fock(reference_output(id, ctx.scenario.config), ctx.n_max);
    out["reference"] = Json{{"case", params["reference"]},
                            {"closed_form", reference_case_info(id).closed_form},
                            {"fidelity", normalized_fidelity(ctx.numeric, ref)}};
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message), line_(line), column_(column) {}

std::string_view to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::fidelity_report:
      return "fidelity_report";
    case OutputKind::photon_dist:
      return "photon_dist";
    case OutputKind::qfunc_grid:
      return "qfunc_grid";
    case OutputKind::coefficients:
      return "coefficients";
    case OutputKind::entropy:
      return "entropy";
    case OutputKind::quadrature_scan:
      return "quadrature_scan";
  }
  return "unknown";
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Json state_to_json(const ModeState& psi) {
  Json out = Json::array();
  for (Eigen::Index n = 0; n < psi.amplitudes().size(); ++n) out.push_back(complex_json(psi.amplitudes()[n]));
  return out;
}

Json state_to_json(const TwoModeState& psi) {
  Json out = Json::array();
  const auto& m = psi.amplitudes();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json superposition_to_json(const CoherentSuperposition& sup) {
  Json out = Json::array();
  for (const auto& t : sup.terms()) out.push_back(Json{{"coeff", complex_json(t.coeff)}, {"alpha", complex_json(t.alpha)}});
  return out;
}

Json superposition_to_json(const TwoModeCoherentSuperposition& sup) {
  Json out = Json::array();
  for (const auto& t : sup.terms()) {
    out.push_back(
        Json{{"coeff", complex_json(t.coeff)}, {"alpha", complex_json(t.alpha)}, {"beta", complex_json(t.beta)}});
  }
  return out;
}

std::vector<Scenario> parse_scenarios(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": " << e.what();
    throw ParseError(msg.str(), line, column);
  }
  if (!doc.is_object()) fail("document", "expected an object with a 'scenarios' array");
  check_keys(doc, "document", {"scenarios"});
  if (!doc.contains("scenarios") || !doc["scenarios"].is_array()) fail("document", "missing array 'scenarios'");
  if (doc["scenarios"].empty()) fail("scenarios", "at least one scenario is required");

  std::vector<Scenario> out;
  std::set<std::string> names;
  for (std::size_t k = 0; k < doc["scenarios"].size(); ++k) {
    Scenario s = parse_scenario(doc["scenarios"][k], "scenarios[" + std::to_string(k) + "]");
    if (!names.insert(s.name).second) fail("scenarios[" + std::to_string(k) + "]", "duplicate name '" + s.name + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str());
}

Json scenario_to_json(const Scenario& s) {
  Json out;
  out["name"] = s.name;
  out["pipeline"] = to_string(s.pipeline);
  out["alpha"] = complex_json(s.config.alpha);
  out["beta"] = complex_json(s.config.beta);
  out["chi1"] = chi_json(s.config.chi1);
  out["chi2"] = chi_json(s.config.chi2);
  out["delta"] = s.config.delta;
  out["tau"] = s.config.tau;
  if (s.config.n_max) out["n_max"] = *s.config.n_max;
  Json outputs = Json::array();
  for (const auto& o : s.outputs) outputs.push_back(Json{{"kind", to_string(o.kind)}, {"params", o.params}});
  out["outputs"] = outputs;
  return out;
}

ScenarioResult run_scenario(const Scenario& scenario) {
  ScenarioResult result;
  result.name = scenario.name;
  try {
    Context ctx{scenario, scenario.config.effective_n_max(scenario.pipeline),
                simulate_numeric(scenario.config, scenario.pipeline), std::nullopt, {}};
    try {
      ctx.analytic = simulate_analytic(scenario.config, scenario.pipeline);
    } catch (const UnsupportedParameters& e) {
      ctx.analytic_reason = e.what();
    }

    Json outputs = Json::array();
    std::map<OutputKind, int> seen;
    for (const auto& spec : scenario.outputs) {
      const int repeat = seen[spec.kind]++;
      Json entry;
      entry["kind"] = to_string(spec.kind);
      switch (spec.kind) {
        case OutputKind::fidelity_report:
          entry.update(fidelity_report(ctx, spec.params));
          break;
        case OutputKind::photon_dist: {
          const auto pa = marginal_photon_distribution(ctx.numeric, Mode::a);
          const auto pb = marginal_photon_distribution(ctx.numeric, Mode::b);
          std::string csv = "n,p_a,p_b\n";
          double mean_a = 0.0;
          double mean_b = 0.0;
          for (std::size_t n = 0; n < pa.size(); ++n) {
            csv += std::to_string(n) + "," + format_double(pa[n]) + "," + format_double(pb[n]) + "\n";
            mean_a += static_cast<double>(n) * pa[n];
            mean_b += static_cast<double>(n) * pb[n];
          }
          const std::string file = csv_name(scenario, spec.kind, repeat);
          result.csv[file] = std::move(csv);
          entry["mean_photon_number"] = Json{{"a", mean_a}, {"b", mean_b}};
          entry["csv"] = file;
          break;
        }
        case OutputKind::qfunc_grid: {
          const Mode mode = get_mode(spec.params, "params");
          const Complex center = get_complex(spec.params["center"], "center");
          const double half = spec.params["half_width"].get<double>();
          const int res = spec.params["resolution"].get<int>();
          std::string csv = "re,im,q\n";
          double peak = -1.0;
          Complex peak_at{};
          for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
              const Complex beta = center + Complex{half * (2.0 * i / (res - 1) - 1.0), half * (2.0 * j / (res - 1) - 1.0)};
              const double q = husimi_q(ctx.numeric, mode, beta);
              csv += format_double(beta.real()) + "," + format_double(beta.imag()) + "," + format_double(q) + "\n";
              if (q > peak) {
                peak = q;
                peak_at = beta;
              }
            }
          }
          const std::string file = csv_name(scenario, spec.kind, repeat);
          result.csv[file] = std::move(csv);
          entry["mode"] = mode == Mode::a ? "a" : "b";
          entry["peak"] = Json{{"value", peak}, {"at", complex_json(peak_at)}};
          entry["csv"] = file;
          break;
        }
        case OutputKind::coefficients: {
          if (!ctx.analytic) throw UnsupportedParameters(ctx.analytic_reason);
          std::string csv = "index,coeff_re,coeff_im,alpha_re,alpha_im,beta_re,beta_im\n";
          for (std::size_t k = 0; k < ctx.analytic->size(); ++k) {
            const auto& t = ctx.analytic->terms()[k];
            csv += std::to_string(k);
            for (double x : {t.coeff.real(), t.coeff.imag(), t.alpha.real(), t.alpha.imag(), t.beta.real(),
                             t.beta.imag()}) {
              csv += "," + format_double(x);
            }
            csv += "\n";
          }
          const std::string file = csv_name(scenario, spec.kind, repeat);
          result.csv[file] = std::move(csv);
          entry["terms"] = superposition_to_json(*ctx.analytic);
          entry["csv"] = file;
          break;
        }
        case OutputKind::entropy:
          entry["entropy"] = entanglement_entropy(ctx.numeric);
          break;
        case OutputKind::quadrature_scan: {
          const Mode mode = get_mode(spec.params, "params");
          const int points = spec.params.value("points", 360);
          const QuadratureScan qs = quadrature_scan(ctx.numeric, mode, points);
          std::string csv = "theta,variance\n";
          for (std::size_t k = 0; k < qs.theta.size(); ++k) {
            csv += format_double(qs.theta[k]) + "," + format_double(qs.variance[k]) + "\n";
          }
          const std::string file = csv_name(scenario, spec.kind, repeat);
          result.csv[file] = std::move(csv);
          entry["mode"] = mode == Mode::a ? "a" : "b";
          entry["min_theta"] = qs.min_theta;
          entry["min_variance"] = qs.min_variance;
          entry["csv"] = file;
          break;
        }
      }
      outputs.push_back(std::move(entry));
    }

    result.report["name"] = scenario.name;
    result.report["status"] = "ok";
    result.report["scenario"] = scenario_to_json(scenario);
    result.report["outputs"] = std::move(outputs);
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = "scenario '" + scenario.name + "': " + e.what();
    result.csv.clear();
    result.report = Json{{"name", scenario.name}, {"status", "error"}, {"error", result.error}};
  }
  return result;
}

std::vector<ScenarioResult> run_all(const std::vector<Scenario>& scenarios, unsigned jobs) {
  std::vector<ScenarioResult> results(scenarios.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(scenarios.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < scenarios.size(); k = next++) results[k] = run_scenario(scenarios[k]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return results;
}

int write_reports(const std::vector<ScenarioResult>& results, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& file, const std::string& contents) {
    std::ofstream out(out_dir / file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / file).string());
    out << contents;
  };

  Json summary;
  Json entries = Json::array();
  int failed = 0;
  for (const auto& r : results) {
    write(r.name + ".json", r.report.dump(2) + "\n");
    Json files = Json::array();
    for (const auto& [file, contents] : r.csv) {
      write(file, contents);
      files.push_back(file);
    }
    Json e{{"name", r.name}, {"status", r.ok ? "ok" : "error"}, {"report", r.name + ".json"}};
    if (!r.ok) {
      e["error"] = r.error;
      ++failed;
    }
    e["csv"] = files;
    entries.push_back(std::move(e));
  }
  summary["scenarios"] = std::move(entries);
  summary["failed"] = failed;
  write("report.json", summary.dump(2) + "\n");
  return failed == 0 ? 0 : 1;
}

std::vector<Scenario> reference_scenarios() {
  std::vector<Scenario> out;
  for (const auto& info : reference_cases()) {
    Scenario s;
    s.name = std::string(info.key);
    s.pipeline = info.pipeline;
    s.config = info.config;
    s.outputs.push_back({OutputKind::fidelity_report, Json{{"reference", info.key}}});
    s.outputs.push_back({OutputKind::entropy, Json::object()});
    out.push_back(std::move(s));
  }
  return out;
}

Json list_reference_cases() {
  Json out = Json::array();
  const auto scenarios = reference_scenarios();
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& info = reference_cases()[k];
    out.push_back(Json{{"id", info.key},
                       {"pipeline", to_string(info.pipeline)},
                       {"closed_form", info.closed_form},
                       {"scenario", scenario_to_json(scenarios[k])}});
  }
  return out;
}

std::vector<SqueezeCheckRow> squeeze_check(const std::vector<double>& alphas, double eta, std::optional<int> n_max) {
  std::vector<SqueezeCheckRow> rows;
  for (double alpha : alphas) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("squeeze-check: alpha must be > 0");
    SqueezeCheckRow row{};
    row.alpha = alpha;
    row.eta = eta;
    row.chi = eta / (alpha * alpha);
    row.n_max = n_max.value_or(truncation_rule(alpha));
    row.residual = shear_residuals(alpha, row.chi).max();
    const ModeState exact = kerr_apply(KerrParams{row.chi, 0.0}, coherent_state(alpha, row.n_max));
    const ModeState approx = approx_sheared_state(alpha, row.chi, row.n_max);
    row.fidelity = fidelity(exact, approx) / (exact.norm_squared() * approx.norm_squared());
    row.min_variance_exact = quadrature_scan(exact).min_variance;
    row.min_variance_approx = quadrature_scan(approx).min_variance;
    rows.push_back(row);
  }
  return rows;
}

std::string squeeze_check_csv(const std::vector<SqueezeCheckRow>& rows) {
  std::string csv = "alpha,eta,chi,n_max,residual,fidelity,min_variance_exact,min_variance_approx\n";
  for (const auto& r : rows) {
    csv += format_double(r.alpha) + "," + format_double(r.eta) + "," + format_double(r.chi) + "," +
           std::to_string(r.n_max) + "," + format_double(r.residual) + "," + format_double(r.fidelity) + "," +
           format_double(r.min_variance_exact) + "," + format_double(r.min_variance_approx) + "\n";
  }
  return csv;
}

}  // namespace kerrecs::cli
