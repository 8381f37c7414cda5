#pragma once

// End-to-end pipelines: the nonlinear Mach-Zehnder interferometer
// B S1 S2 Delta B, the single two-mode Kerr cell, and the three-cell
// arrangement whose outer cells undo the self-shear of each mode.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "kerrecs/ecs.hpp"
#include "kerrecs/fock.hpp"

namespace kerrecs {

/// A nonlinearity given either as a plain real or exactly as 2 pi r / s.
using ChiSpec = std::variant<double, RationalChi>;

double chi_value(const ChiSpec& chi);
std::optional<RationalChi> as_rational(const ChiSpec& chi);

enum class PipelineKind { mach_zehnder, single_cell, three_cell };

std::string_view to_string(PipelineKind kind);
std::optional<PipelineKind> parse_pipeline_kind(std::string_view name);

struct InterferometerConfig {
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
  ChiSpec chi1{0.0};  ///< arm 1 of the interferometer, or the cell nonlinearity
  ChiSpec chi2{0.0};  ///< arm 2 of the interferometer; unused by the cell pipelines
  double delta = 0.0;
  double tau = 0.0;
  std::optional<int> n_max;

  /// n_max if set, otherwise the truncation rule for the largest amplitude
  /// any mode can carry in `kind`.
  int effective_n_max(PipelineKind kind) const;

  /// Throws std::invalid_argument for non-finite parameters or an explicit
  /// n_max below the truncation rule.
  void validate(PipelineKind kind) const;
};

/// Exact evolution of |alpha>_a |beta>_b on the truncated Fock space.
TwoModeState simulate_numeric(const InterferometerConfig& config, PipelineKind kind);

/// Finite coherent-state form of the same output. Throws
/// UnsupportedParameters for irrational chi or, on the interferometer, for a
/// non-vacuum second input.
TwoModeCoherentSuperposition simulate_analytic(const InterferometerConfig& config, PipelineKind kind);

/// Closed-form outputs transcribed from the literature, used as regressions.
enum class ReferenceCase {
  linear_mz,                ///< chi1 = chi2 = 0, any delta
  half_pi_arm,              ///< chi1 = pi/2, chi2 = 0, any delta
  half_pi_ecs,              ///< chi1 = pi/2, chi2 = 0, delta = pi/2
  double_cat,               ///< chi1 = chi2 = pi/2, delta = 0
  three_cell_quarter_pi,    ///< cross-phase cell, chi = pi/4
  single_cell_half_pi,      ///< single cell, chi = pi/2: product state
  single_cell_quarter_pi,   ///< single cell, chi = pi/4, tau = chi frame
};

struct ReferenceCaseInfo {
  ReferenceCase id;
  std::string_view key;
  std::string_view closed_form;  ///< printed expression, in ket notation
  PipelineKind pipeline;
  InterferometerConfig config;  ///< parameters at which the case is checked
};

std::span<const ReferenceCaseInfo> reference_cases();
const ReferenceCaseInfo& reference_case_info(ReferenceCase id);
/// Throws std::invalid_argument for an unknown key.
ReferenceCase parse_reference_case(std::string_view key);

/// The transcribed superposition at the amplitudes and delay of `config`.
TwoModeCoherentSuperposition reference_output(ReferenceCase id, const InterferometerConfig& config);
TwoModeCoherentSuperposition reference_output(ReferenceCase id);

}  // namespace kerrecs
