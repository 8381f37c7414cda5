#pragma once

// Finite coherent-state decompositions of Kerr-evolved coherent states for
// nonlinearities that are rational multiples of pi.
//
// For chi = 2 pi r / s the phase exp(-i chi n^2) is periodic in n with some
// minimal period N <= s, so the Kerr-evolved state is a discrete Fourier sum
// of N coherent states on a ring. All conventions here are the ones produced
// by kerr_apply (normal-ordered phase exp(-i chi n(n-1)), tau = 0 frame):
//
//   S(chi)|alpha> = sum_j c_j |alpha e^{i chi} e^{2 pi i j / N}>,
//   c_j = (1/N) sum_k exp(-2 pi i j k / N - i chi k^2).

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kerrecs/fock.hpp"

namespace kerrecs {

/// chi = 2 pi r / s, stored in lowest terms with s > 0.
class RationalChi {
 public:
  RationalChi(std::int64_t r, std::int64_t s);

  std::int64_t r() const { return r_; }
  std::int64_t s() const { return s_; }
  double value() const;
  /// Minimal period of exp(-i chi n^2) in n.
  int period() const { return period_; }

  /// exp(-i chi k) exactly, via integer reduction of r k mod s.
  Complex linear_phase(std::int64_t k) const;
  /// exp(-i chi k^2) exactly.
  Complex quadratic_phase(std::int64_t k) const;

  friend bool operator==(const RationalChi&, const RationalChi&) = default;

 private:
  std::int64_t r_;
  std::int64_t s_;
  int period_;
};

/// Smallest N >= 1 with (r/s)((n + N)^2 - n^2) an integer for every n,
/// found by scanning N = 1..s.
int minimal_period(std::int64_t r, std::int64_t s);

/// Coefficients below this magnitude are dropped from superpositions.
inline constexpr double kPruneThreshold = 1e-14;

struct CoherentTerm {
  Complex coeff;
  Complex alpha;
};

class CoherentSuperposition {
 public:
  CoherentSuperposition() = default;
  explicit CoherentSuperposition(std::vector<CoherentTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<CoherentTerm>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  double max_amplitude() const;

  /// Merges terms with coincident amplitudes and prunes small coefficients.
  CoherentSuperposition simplified() const;

 private:
  std::vector<CoherentTerm> terms_;
};

struct TwoModeCoherentTerm {
  Complex coeff;
  Complex alpha;  ///< amplitude in mode a (or 1, or a')
  Complex beta;   ///< amplitude in mode b (or 2, or b')
};

class TwoModeCoherentSuperposition {
 public:
  TwoModeCoherentSuperposition() = default;
  explicit TwoModeCoherentSuperposition(std::vector<TwoModeCoherentTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<TwoModeCoherentTerm>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  double max_amplitude() const;

  TwoModeCoherentSuperposition simplified() const;

 private:
  std::vector<TwoModeCoherentTerm> terms_;
};

/// Template decomposition of the tau = 0 sheared state for unit amplitude:
/// the term amplitudes are the ring points e^{i chi} e^{2 pi i j / N}.
CoherentSuperposition shear_coefficients(const RationalChi& chi);

/// exp(-i tau n - i chi n(n-1)) |alpha> as a finite coherent superposition.
CoherentSuperposition sheared_state_analytic(ComplexAmplitude alpha, const RationalChi& chi, double tau = 0.0);

/// Mach-Zehnder output for |alpha>_a |0>_b: double sum over both arms'
/// ring decompositions carried through the output beamsplitter. Terms are
/// (a', b') amplitudes.
TwoModeCoherentSuperposition interferometer_output_analytic(ComplexAmplitude alpha, const RationalChi& chi1,
                                                            const RationalChi& chi2, double delta,
                                                            double tau = 0.0);

enum class TwoModeKind { reduced, full };

/// N x N coefficients of a two-mode Kerr cell's output,
///   sum_{jl} c_jl |alpha w e^{2 pi i j/N}> |beta w e^{2 pi i l/N}>,
/// with w = 1 for the reduced operator exp(-4 i chi mn) and w = e^{i chi}
/// for the full operator.
struct TwoModeCoefficients {
  TwoModeKind kind;
  int period;
  Complex rotation;
  Eigen::MatrixXcd coeffs;

  TwoModeCoherentSuperposition apply(ComplexAmplitude alpha, ComplexAmplitude beta, double tau = 0.0) const;
};

TwoModeCoefficients two_mode_coefficients(const RationalChi& chi, TwoModeKind kind);

ModeState synthesize_fock(const CoherentSuperposition& sup, int n_max);
TwoModeState synthesize_fock(const TwoModeCoherentSuperposition& sup, int n_max);

struct BranchOverlap {
  size_t i;
  size_t j;
  double overlap_a;  ///< |<alpha_i|alpha_j>|
  double overlap_b;  ///< |<beta_i|beta_j>|
};

/// Closed-form pairwise branch overlaps, exp(-|x_i - x_j|^2 / 2) per mode.
/// Requires at least two terms.
std::vector<BranchOverlap> branch_overlaps(const TwoModeCoherentSuperposition& sup);

}  // namespace kerrecs
