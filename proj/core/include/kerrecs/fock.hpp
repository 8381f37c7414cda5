#pragma once

// Truncated Fock-space pure states for one and two optical modes.
//
// States are immutable values. Every state carries `tail_loss`, the squared
// norm known to have been pushed beyond the truncation by the operations
// that produced it; `truncation_warning()` compares it with a tolerance.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kerrecs/errors.hpp"

namespace kerrecs {

using Complex = std::complex<double>;

/// Default truncation tolerance on the squared-norm deficit.
inline constexpr double kTailTol = 1e-10;

/// Smallest n_max with a Poisson tail far below kTailTol for amplitude
/// magnitude `abs_alpha`: ceil(|a|^2 + 8|a| + 10).
int truncation_rule(double abs_alpha);

/// Coherent amplitude (alpha or beta). Rejects NaN and infinity.
class ComplexAmplitude {
 public:
  ComplexAmplitude(Complex value);  // NOLINT(google-explicit-constructor)
  ComplexAmplitude(double value) : ComplexAmplitude(Complex{value, 0.0}) {}  // NOLINT

  Complex value() const { return value_; }
  double abs() const { return std::abs(value_); }
  operator Complex() const { return value_; }  // NOLINT

 private:
  Complex value_;
};

enum class Mode { a, b };

class ModeState {
 public:
  /// Takes ownership of the amplitude vector; index n is the photon number.
  explicit ModeState(Eigen::VectorXcd amplitudes, double tail_loss = 0.0);

  static ModeState vacuum(int n_max);
  static ModeState fock(int n, int n_max);

  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_[n]; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  double tail_loss() const { return tail_loss_; }
  bool truncation_warning(double tol = kTailTol) const { return tail_loss_ > tol; }

 private:
  Eigen::VectorXcd amplitudes_;
  double tail_loss_;
};

class TwoModeState {
 public:
  /// Row index m is the photon number of mode a, column index n of mode b.
  explicit TwoModeState(Eigen::MatrixXcd amplitudes, double tail_loss = 0.0);

  static TwoModeState product(const ModeState& a, const ModeState& b);

  int n_max() const { return static_cast<int>(amplitudes_.rows()) - 1; }
  const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }
  Complex operator()(int m, int n) const { return amplitudes_(m, n); }

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  double tail_loss() const { return tail_loss_; }
  bool truncation_warning(double tol = kTailTol) const { return tail_loss_ > tol; }

 private:
  Eigen::MatrixXcd amplitudes_;
  double tail_loss_;
};

/// D(alpha)|0> from the Fock expansion. tail_loss is the exact norm deficit.
ModeState coherent_state(ComplexAmplitude alpha, int n_max);

/// Closed-form overlap <beta|alpha> = exp(-(|a|^2 + |b|^2)/2 + conj(b) a).
Complex coherent_overlap(Complex beta, Complex alpha);

/// D(alpha) = exp(alpha a^+ - conj(alpha) a), evaluated on a padded space.
ModeState apply_displacement(ComplexAmplitude alpha, const ModeState& psi);

/// Largest supported |epsilon| for apply_squeeze.
inline constexpr double kMaxSqueeze = 1.5;

/// S(eps) = exp[(conj(eps) a^2 - eps a^+^2) / 2], evaluated on a padded space.
/// Throws ConvergenceError when |eps| > kMaxSqueeze.
ModeState apply_squeeze(Complex epsilon, const ModeState& psi);

/// R(sigma) = exp(i sigma a^+ a).
ModeState apply_rotation(double sigma, const ModeState& psi);

Complex inner_product(const ModeState& psi, const ModeState& phi);
Complex inner_product(const TwoModeState& psi, const TwoModeState& phi);

/// |<psi|phi>|^2 without normalisation. Throws DimensionMismatch.
double fidelity(const ModeState& psi, const ModeState& phi);
double fidelity(const TwoModeState& psi, const TwoModeState& phi);

std::vector<double> photon_number_distribution(const ModeState& psi);
std::vector<double> marginal_photon_distribution(const TwoModeState& psi, Mode mode);
double mean_photon_number(const ModeState& psi);

/// Von Neumann entropy (natural log) of either reduced state, from the
/// singular values of the amplitude grid.
double entanglement_entropy(const TwoModeState& psi);

/// Q(beta) = <beta|rho|beta> / pi.
double husimi_q(const ModeState& psi, ComplexAmplitude beta);
/// Q-function of the reduced state of `mode`.
double husimi_q(const TwoModeState& psi, Mode mode, ComplexAmplitude beta);

}  // namespace kerrecs
