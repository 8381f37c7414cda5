#include "kerrecs/interferometer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kerrecs/elements.hpp"
#include "kerrecs/errors.hpp"

namespace kerrecs {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

RationalChi require_rational(const ChiSpec& chi, const char* which) {
  if (auto r = as_rational(chi)) return *r;
  throw UnsupportedParameters(std::string(which) +
                              " is not given as a rational multiple of pi; only numeric evolution is available");
}

TwoModeState input_state(const InterferometerConfig& config, int n_max) {
  return TwoModeState::product(coherent_state(config.alpha, n_max), coherent_state(config.beta, n_max));
}

InterferometerConfig mz_config(Complex alpha, ChiSpec chi1, ChiSpec chi2, double delta) {
  InterferometerConfig c;
  c.alpha = alpha;
  c.chi1 = chi1;
  c.chi2 = chi2;
  c.delta = delta;
  return c;
}

InterferometerConfig cell_config(Complex alpha, Complex beta, ChiSpec chi, double tau) {
  InterferometerConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.chi1 = chi;
  c.chi2 = chi;
  c.tau = tau;
  return c;
}

const std::array<ReferenceCaseInfo, 7>& case_table() {
  static const std::array<ReferenceCaseInfo, 7> table{{
      {ReferenceCase::linear_mz, "linear_mz", "|a(1-e^{iD})/2>_{a'} |ia(1+e^{iD})/2>_{b'}", PipelineKind::mach_zehnder,
       mz_config(2.0, RationalChi(0, 1), RationalChi(0, 1), kPi / 2)},
      {ReferenceCase::half_pi_arm, "half_pi_arm",
       "2^{-1/2} e^{-i pi/4} [|a(i-e^{iD})/2>|ia(i+e^{iD})/2> + i|-a(i+e^{iD})/2>|-ia(i-e^{iD})/2>]",
       PipelineKind::mach_zehnder, mz_config(2.0, RationalChi(1, 4), RationalChi(0, 1), kPi / 4)},
      {ReferenceCase::half_pi_ecs, "half_pi_ecs", "2^{-1/2} e^{-i pi/4} [|0>_{a'}|a>_{b'} + i|-ia>_{a'}|0>_{b'}]",
       PipelineKind::mach_zehnder, mz_config(2.0, RationalChi(1, 4), RationalChi(0, 1), kPi / 2)},
      {ReferenceCase::double_cat, "double_cat", "1/2 (|a> + |-a>)_{a'} |0>_{b'} + i/2 |0>_{a'} (|ia> + |-ia>)_{b'}",
       PipelineKind::mach_zehnder, mz_config(2.0, RationalChi(1, 4), RationalChi(1, 4), 0.0)},
      {ReferenceCase::three_cell_quarter_pi, "three_cell_quarter_pi",
       "1/2 [|a>_1 (|b> + |-b>)_2 + |-a>_1 (|b> - |-b>)_2]", PipelineKind::three_cell,
       cell_config(1.2, 1.2, RationalChi(1, 8), 0.0)},
      {ReferenceCase::single_cell_half_pi, "single_cell_half_pi", "-i/2 (|ia> + i|-ia>)_1 (|ib> + i|-ib>)_2",
       PipelineKind::single_cell, cell_config(1.2, 1.2, RationalChi(1, 4), 0.0)},
      {ReferenceCase::single_cell_quarter_pi, "single_cell_quarter_pi",
       "1/4 [i(|a> - |-a>)(|b> - |-b> - w|ib> - w|-ib>) + w*(|ia> + |-ia>)(|b> - |-b> + w|ib> + w|-ib>)], "
       "w = e^{i pi/4}, frame tau = chi",
       PipelineKind::single_cell, cell_config(1.2, 1.2, RationalChi(1, 8), kPi / 4)},
  }};
  return table;
}

}  // namespace

double chi_value(const ChiSpec& chi) {
  return std::visit(
      [](const auto& c) {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, double>) {
          return c;
        } else {
          return c.value();
        }
      },
      chi);
}

std::optional<RationalChi> as_rational(const ChiSpec& chi) {
  if (const auto* r = std::get_if<RationalChi>(&chi)) return *r;
  return std::nullopt;
}

std::string_view to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::mach_zehnder:
      return "mach_zehnder";
    case PipelineKind::single_cell:
      return "single_cell";
    case PipelineKind::three_cell:
      return "three_cell";
  }
  return "unknown";
}

std::optional<PipelineKind> parse_pipeline_kind(std::string_view name) {
  for (auto kind : {PipelineKind::mach_zehnder, PipelineKind::single_cell, PipelineKind::three_cell}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

int InterferometerConfig::effective_n_max(PipelineKind kind) const {
  if (n_max) return *n_max;
  // The interferometer can route all photons into one port; the cells only rotate amplitudes.
  const double reach = (kind == PipelineKind::mach_zehnder) ? std::sqrt(std::norm(alpha) + std::norm(beta))
                                                            : std::max(std::abs(alpha), std::abs(beta));
  return truncation_rule(reach);
}

void InterferometerConfig::validate(PipelineKind kind) const {
  if (!finite(alpha) || !finite(beta)) throw std::invalid_argument("config: non-finite amplitude");
  if (!std::isfinite(chi_value(chi1)) || !std::isfinite(chi_value(chi2)) || !std::isfinite(delta) ||
      !std::isfinite(tau)) {
    throw std::invalid_argument("config: non-finite chi, delta or tau");
  }
  if (n_max) {
    InterferometerConfig rule = *this;
    rule.n_max.reset();
    const int required = rule.effective_n_max(kind);
    if (*n_max < required) {
      throw std::invalid_argument("config: n_max " + std::to_string(*n_max) + " is below the truncation rule (" +
                                  std::to_string(required) + ")");
    }
  }
}

TwoModeState simulate_numeric(const InterferometerConfig& config, PipelineKind kind) {
  config.validate(kind);
  const int n_max = config.effective_n_max(kind);
  const TwoModeState in = input_state(config, n_max);
  const double chi = chi_value(config.chi1);

  switch (kind) {
    case PipelineKind::mach_zehnder: {
      TwoModeState psi = beamsplitter_apply(in);
      psi = delay_apply(DelayParams{config.delta}, psi);
      psi = kerr_apply(KerrParams{chi, config.tau}, psi, Mode::a);
      psi = kerr_apply(KerrParams{chi_value(config.chi2), config.tau}, psi, Mode::b);
      return beamsplitter_apply(psi);
    }
    case PipelineKind::single_cell:
      return two_mode_kerr_apply(KerrParams{chi, config.tau}, in);
    case PipelineKind::three_cell: {
      // Outer cells: exp(+i chi n(n-1)) on each mode, i.e. Kerr cells at -chi.
      TwoModeState psi = kerr_apply(KerrParams{-chi, 0.0}, in, Mode::a);
      psi = kerr_apply(KerrParams{-chi, 0.0}, psi, Mode::b);
      return two_mode_kerr_apply(KerrParams{chi, config.tau}, psi);
    }
  }
  throw std::invalid_argument("unknown pipeline kind");
}

TwoModeCoherentSuperposition simulate_analytic(const InterferometerConfig& config, PipelineKind kind) {
  config.validate(kind);
  switch (kind) {
    case PipelineKind::mach_zehnder: {
      if (config.beta != Complex{}) {
        throw UnsupportedParameters("analytic interferometer output requires a vacuum second input (beta = 0)");
      }
      const RationalChi chi1 = require_rational(config.chi1, "chi1");
      const RationalChi chi2 = require_rational(config.chi2, "chi2");
      return interferometer_output_analytic(config.alpha, chi1, chi2, config.delta, config.tau);
    }
    case PipelineKind::single_cell:
      return two_mode_coefficients(require_rational(config.chi1, "chi1"), TwoModeKind::full)
          .apply(config.alpha, config.beta, config.tau);
    case PipelineKind::three_cell:
      return two_mode_coefficients(require_rational(config.chi1, "chi1"), TwoModeKind::reduced)
          .apply(config.alpha, config.beta, config.tau);
  }
  throw std::invalid_argument("unknown pipeline kind");
}

std::span<const ReferenceCaseInfo> reference_cases() { return case_table(); }

const ReferenceCaseInfo& reference_case_info(ReferenceCase id) {
  for (const auto& info : case_table()) {
    if (info.id == id) return info;
  }
  throw std::invalid_argument("unknown reference case");
}

ReferenceCase parse_reference_case(std::string_view key) {
  for (const auto& info : case_table()) {
    if (info.key == key) return info.id;
  }
  throw std::invalid_argument("unknown reference case '" + std::string(key) + "'");
}

TwoModeCoherentSuperposition reference_output(ReferenceCase id, const InterferometerConfig& config) {
  const Complex a = config.alpha;
  const Complex b = config.beta;
  const Complex e = std::polar(1.0, config.delta);
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex w = std::polar(1.0, kPi / 4);
  const Complex w_conj = std::conj(w);
  std::vector<TwoModeCoherentTerm> t;

  switch (id) {
    case ReferenceCase::linear_mz:
      t = {{1.0, a * (1.0 - e) / 2.0, kI * a * (1.0 + e) / 2.0}};
      break;
    case ReferenceCase::half_pi_arm:
      t = {{h * w_conj, a * (kI - e) / 2.0, kI * a * (kI + e) / 2.0},
           {h * w_conj * kI, -a * (kI + e) / 2.0, -kI * a * (kI - e) / 2.0}};
      break;
    case ReferenceCase::half_pi_ecs:
      t = {{h * w_conj, 0.0, a}, {h * w_conj * kI, -kI * a, 0.0}};
      break;
    case ReferenceCase::double_cat:
      t = {{0.5, a, 0.0}, {0.5, -a, 0.0}, {0.5 * kI, 0.0, kI * a}, {0.5 * kI, 0.0, -kI * a}};
      break;
    case ReferenceCase::three_cell_quarter_pi:
      t = {{0.5, a, b}, {0.5, a, -b}, {0.5, -a, b}, {-0.5, -a, -b}};
      break;
    case ReferenceCase::single_cell_half_pi: {
      // -i/2 (|ia> + i|-ia>)(|ib> + i|-ib>)
      const Complex c = -0.5 * kI;
      t = {{c, kI * a, kI * b}, {c * kI, kI * a, -kI * b}, {c * kI, -kI * a, kI * b}, {c * kI * kI, -kI * a, -kI * b}};
      break;
    }
    case ReferenceCase::single_cell_quarter_pi: {
      // First bracket: i (|a> - |-a>) (|b> - |-b> - w|ib> - w|-ib>).
      const std::array<std::pair<Complex, Complex>, 4> mode_b_first{
          {{1.0, b}, {-1.0, -b}, {-w, kI * b}, {-w, -kI * b}}};
      // Second bracket: w* (|ia> + |-ia>) (|b> - |-b> + w|ib> + w|-ib>).
      const std::array<std::pair<Complex, Complex>, 4> mode_b_second{
          {{1.0, b}, {-1.0, -b}, {w, kI * b}, {w, -kI * b}}};
      for (const auto& [ca, amp_a] : std::array<std::pair<Complex, Complex>, 2>{{{1.0, a}, {-1.0, -a}}}) {
        for (const auto& [cb, amp_b] : mode_b_first) t.push_back({0.25 * kI * ca * cb, amp_a, amp_b});
      }
      for (const auto& [ca, amp_a] : std::array<std::pair<Complex, Complex>, 2>{{{1.0, kI * a}, {1.0, -kI * a}}}) {
        for (const auto& [cb, amp_b] : mode_b_second) t.push_back({0.25 * w_conj * ca * cb, amp_a, amp_b});
      }
      break;
    }
  }
  return TwoModeCoherentSuperposition(std::move(t));
}

TwoModeCoherentSuperposition reference_output(ReferenceCase id) {
  return reference_output(id, reference_case_info(id).config);
}

}  // namespace kerrecs
