#pragma once

// Weak-nonlinearity limit of the Kerr shear: for eta = chi alpha^2 with
// |eta| > 1/2 the sheared coherent state is approximated by a displaced,
// doubly squeezed vacuum
//
//   e^{-i Lambda} D(alpha + delta) S(eps) S(-e^{2 i sigma} eps) |0>.
//
// Parameters follow the closed-form solution of the linearized problem;
// shear_residuals reports how well they satisfy its defining equations.

#include <utility>
#include <vector>

#include "kerrecs/errors.hpp"
#include "kerrecs/fock.hpp"

namespace kerrecs {

struct ShearApproxParams {
  Complex eta;      ///< chi alpha^2
  Complex epsilon;  ///< squeeze parameter, direction eta*/|eta|
  double sigma;     ///< rotation angle, <= 0
  Complex rho;
  Complex delta;    ///< displacement correction
  double lambda;    ///< global phase
};

/// Throws DomainError when |chi alpha^2| <= 1/2 (or chi, alpha non-finite).
ShearApproxParams shear_params(ComplexAmplitude alpha, double chi);

/// Relative residuals of the three simultaneous equations the parameters solve:
///   sigma cosh 2|eps| = -4|eta|^2
///   sigma (eps/|eps|) sinh 2|eps| = -2 eta*
///   sigma (-rho* cosh|eps| - rho (eps/|eps|) sinh|eps|) = -2 alpha eta*
struct ShearResiduals {
  double rotation;
  double squeeze;
  double displacement;
  double max() const;
};

ShearResiduals shear_residuals(ComplexAmplitude alpha, double chi);

/// The approximate sheared state on 0..n_max.
ModeState approx_sheared_state(ComplexAmplitude alpha, double chi, int n_max);

/// Per-arm bundle for the interferometer with input |alpha>_a |0>_b.
struct ArmApproxParams {
  Complex omega;  ///< arm amplitude after the first beamsplitter
  ShearApproxParams shear;
  Complex gamma;  ///< printed output-port displacement
  Complex Gamma;  ///< printed auxiliary quantity behind gamma
};

/// omega_1 = alpha/sqrt2, omega_2 = i alpha/sqrt2, eta_i = chi_i omega_i^2.
/// gamma/Gamma follow the printed expressions, which reference arm 1's
/// squeeze and so are only meaningful for chi1 == chi2.
std::pair<ArmApproxParams, ArmApproxParams> arm_params(ComplexAmplitude alpha, double chi1, double chi2);

/// Output-port displacements obtained by carrying omega_i + delta_i through
/// the second beamsplitter: ((d1 + i d2)/sqrt2, (d2 + i d1)/sqrt2).
std::pair<Complex, Complex> transported_displacements(ComplexAmplitude alpha, double chi);

/// Interferometer output (chi1 = chi2 = chi, delta = 0) as a product of
/// displaced doubly squeezed states. Port a' carries S(eps1) S(-e^{2 i sigma} eps1),
/// port b' the orthogonal pair.
TwoModeState approx_interferometer_output(ComplexAmplitude alpha, double chi, int n_max);

/// Same product form assembled with the printed gamma_i instead of the
/// transported displacements. The printed values can be far outside any
/// practical n_max (|gamma_2| ~ 140 at alpha = 8).
TwoModeState printed_gamma_output(ComplexAmplitude alpha, double chi, int n_max);

/// |<0| T^dag D(-d1) D(d2) T |0>|^2 for T = S(eps) S(-e^{2 i sigma} eps),
/// evaluated through the Bogoliubov transform of T (no truncation).
double displaced_pair_fidelity(Complex d1, Complex d2, Complex eps, double sigma);

struct GammaCheck {
  std::pair<Complex, Complex> printed;
  std::pair<Complex, Complex> transported;
  double fidelity;  ///< between the printed-gamma and transported product states
  bool accepted;    ///< fidelity >= 1 - 1e-8
};

/// Validates the printed gamma_i against the transported displacements.
/// Both states share squeezes and global phase, so the fidelity is the
/// product of displaced_pair_fidelity over the two ports.
GammaCheck check_printed_gamma(ComplexAmplitude alpha, double chi);

/// Variance of x_theta = (a e^{-i theta} + a^dag e^{i theta})/2; vacuum gives 1/4.
/// The state is normalized internally.
double quadrature_variance(const ModeState& psi, double theta);
double quadrature_variance(const TwoModeState& psi, Mode mode, double theta);

struct QuadratureScan {
  std::vector<double> theta;
  std::vector<double> variance;
  double min_theta;
  double min_variance;
};

/// Variance on theta_k = pi k / points, k = 0..points-1 (x_{theta+pi} = -x_theta).
QuadratureScan quadrature_scan(const ModeState& psi, int points = 360);
QuadratureScan quadrature_scan(const TwoModeState& psi, Mode mode, int points = 360);

}  // namespace kerrecs
