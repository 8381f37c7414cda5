#include "kerrecs/ecs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace kerrecs {

namespace {

__extension__ typedef __int128 i128;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMergeTolerance = 1e-12;

std::int64_t floor_mod(i128 value, std::int64_t modulus) {
  i128 r = value % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::int64_t>(r);
}

// exp(2 pi i p / q) for integer p, with p reduced mod q first.
Complex root_of_unity(i128 p, std::int64_t q) {
  return std::polar(1.0, kTwoPi * static_cast<double>(floor_mod(p, q)) / static_cast<double>(q));
}

// e^{i chi} e^{2 pi i j / N} with chi = 2 pi r/s, reduced exactly over sN.
Complex rotated_ring_point(const RationalChi& chi, int j, int period) {
  const i128 denom = static_cast<i128>(chi.s()) * period;
  return root_of_unity(static_cast<i128>(chi.r()) * period + static_cast<i128>(j) * chi.s(),
                       static_cast<std::int64_t>(denom));
}

// Smallest N with s | 4 r N: the period of exp(-4 i chi m n) in either index.
int cross_phase_period(const RationalChi& chi) {
  for (std::int64_t n = 1; n <= chi.s(); ++n) {
    if (floor_mod(static_cast<i128>(4) * chi.r() * n, chi.s()) == 0) return static_cast<int>(n);
  }
  return static_cast<int>(chi.s());
}

}  // namespace

int minimal_period(std::int64_t r, std::int64_t s) {
  if (s < 1) throw std::invalid_argument("minimal_period: s must be >= 1");
  // (r/s)((n+N)^2 - n^2) = (r/s)(2nN + N^2) is affine in n, so n = 0 and n = 1 decide it.
  for (std::int64_t period = 1; period <= s; ++period) {
    const i128 at0 = static_cast<i128>(r) * period * period;
    const i128 at1 = static_cast<i128>(r) * (2 * period + static_cast<i128>(period) * period);
    if (floor_mod(at0, s) == 0 && floor_mod(at1, s) == 0) return static_cast<int>(period);
  }
  return static_cast<int>(s);
}

RationalChi::RationalChi(std::int64_t r, std::int64_t s) {
  if (s == 0) throw std::invalid_argument("RationalChi: denominator must be non-zero");
  if (s < 0) {
    r = -r;
    s = -s;
  }
  const std::int64_t g = std::gcd(r, s);
  r_ = (g == 0) ? 0 : r / g;
  s_ = (g == 0) ? 1 : s / g;
  if (r_ == 0) s_ = 1;
  period_ = minimal_period(r_, s_);
}

double RationalChi::value() const { return kTwoPi * static_cast<double>(r_) / static_cast<double>(s_); }

Complex RationalChi::linear_phase(std::int64_t k) const { return root_of_unity(-static_cast<i128>(r_) * k, s_); }

Complex RationalChi::quadratic_phase(std::int64_t k) const {
  return root_of_unity(-static_cast<i128>(r_) * k * k, s_);
}

double CoherentSuperposition::max_amplitude() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.alpha));
  return m;
}

CoherentSuperposition CoherentSuperposition::simplified() const {
  std::vector<CoherentTerm> merged;
  for (const auto& t : terms_) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const CoherentTerm& m) { return std::abs(m.alpha - t.alpha) < kMergeTolerance; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const CoherentTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  return CoherentSuperposition(std::move(merged));
}

double TwoModeCoherentSuperposition::max_amplitude() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max({m, std::abs(t.alpha), std::abs(t.beta)});
  return m;
}

TwoModeCoherentSuperposition TwoModeCoherentSuperposition::simplified() const {
  std::vector<TwoModeCoherentTerm> merged;
  for (const auto& t : terms_) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const TwoModeCoherentTerm& m) {
      return std::abs(m.alpha - t.alpha) < kMergeTolerance && std::abs(m.beta - t.beta) < kMergeTolerance;
    });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const TwoModeCoherentTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  return TwoModeCoherentSuperposition(std::move(merged));
}

CoherentSuperposition shear_coefficients(const RationalChi& chi) {
  const int period = chi.period();
  std::vector<CoherentTerm> terms;
  terms.reserve(period);
  for (int j = 0; j < period; ++j) {
    Complex c{};
    for (int k = 0; k < period; ++k) {
      c += root_of_unity(-static_cast<i128>(j) * k, period) * chi.quadratic_phase(k);
    }
    terms.push_back({c / static_cast<double>(period), rotated_ring_point(chi, j, period)});
  }
  std::erase_if(terms, [](const CoherentTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  return CoherentSuperposition(std::move(terms));
}

CoherentSuperposition sheared_state_analytic(ComplexAmplitude alpha, const RationalChi& chi, double tau) {
  const Complex base = alpha.value() * std::polar(1.0, -tau);
  const CoherentSuperposition ring = shear_coefficients(chi);
  std::vector<CoherentTerm> terms;
  for (const auto& t : ring.terms()) terms.push_back({t.coeff, base * t.alpha});
  return CoherentSuperposition(std::move(terms)).simplified();
}

TwoModeCoherentSuperposition interferometer_output_analytic(ComplexAmplitude alpha, const RationalChi& chi1,
                                                            const RationalChi& chi2, double delta, double tau) {
  const Complex i{0.0, 1.0};
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Complex frame = std::polar(1.0, -tau);
  const Complex arm1 = frame * alpha.value() * inv_sqrt2;
  const Complex arm2 = frame * std::polar(1.0, delta) * i * alpha.value() * inv_sqrt2;

  const CoherentSuperposition ring1 = shear_coefficients(chi1);
  const CoherentSuperposition ring2 = shear_coefficients(chi2);
  std::vector<TwoModeCoherentTerm> terms;
  terms.reserve(ring1.size() * ring2.size());
  for (const auto& t1 : ring1.terms()) {
    for (const auto& t2 : ring2.terms()) {
      const Complex u = arm1 * t1.alpha;
      const Complex v = arm2 * t2.alpha;
      terms.push_back({t1.coeff * t2.coeff, (u + i * v) * inv_sqrt2, (v + i * u) * inv_sqrt2});
    }
  }
  return TwoModeCoherentSuperposition(std::move(terms)).simplified();
}

TwoModeCoefficients two_mode_coefficients(const RationalChi& chi, TwoModeKind kind) {
  const int period = (kind == TwoModeKind::reduced) ? cross_phase_period(chi) : chi.period();
  auto target = [&](std::int64_t k, std::int64_t l) {
    const i128 r = chi.r();
    const i128 e = (kind == TwoModeKind::reduced) ? 4 * r * k * l : r * (k * k + l * l + 4 * k * l);
    return root_of_unity(-e, chi.s());
  };

  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(period, period);
  for (int j = 0; j < period; ++j) {
    for (int l = 0; l < period; ++l) {
      Complex c{};
      for (int k = 0; k < period; ++k) {
        for (int q = 0; q < period; ++q) {
          c += root_of_unity(-(static_cast<i128>(j) * k + static_cast<i128>(l) * q), period) * target(k, q);
        }
      }
      coeffs(j, l) = c / static_cast<double>(period * period);
    }
  }
  const Complex rotation = (kind == TwoModeKind::reduced) ? Complex{1.0, 0.0} : chi.linear_phase(-1);
  return {kind, period, rotation, std::move(coeffs)};
}

TwoModeCoherentSuperposition TwoModeCoefficients::apply(ComplexAmplitude alpha, ComplexAmplitude beta,
                                                        double tau) const {
  const Complex frame = rotation * std::polar(1.0, -tau);
  std::vector<TwoModeCoherentTerm> terms;
  for (int j = 0; j < period; ++j) {
    const Complex ring_j = frame * root_of_unity(j, period);
    for (int l = 0; l < period; ++l) {
      const Complex ring_l = frame * root_of_unity(l, period);
      terms.push_back({coeffs(j, l), alpha.value() * ring_j, beta.value() * ring_l});
    }
  }
  return TwoModeCoherentSuperposition(std::move(terms)).simplified();
}

ModeState synthesize_fock(const CoherentSuperposition& sup, int n_max) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  double tail_bound = 0.0;
  for (const auto& t : sup.terms()) {
    const ModeState term = coherent_state(t.alpha, n_max);
    v += t.coeff * term.amplitudes();
    tail_bound += std::abs(t.coeff) * std::sqrt(term.tail_loss());
  }
  return ModeState(std::move(v), tail_bound * tail_bound);
}

TwoModeState synthesize_fock(const TwoModeCoherentSuperposition& sup, int n_max) {
  Eigen::MatrixXcd grid = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  double tail_bound = 0.0;
  for (const auto& t : sup.terms()) {
    const ModeState a = coherent_state(t.alpha, n_max);
    const ModeState b = coherent_state(t.beta, n_max);
    grid.noalias() += t.coeff * (a.amplitudes() * b.amplitudes().transpose());
    tail_bound += std::abs(t.coeff) * std::sqrt(a.tail_loss() + b.tail_loss());
  }
  return TwoModeState(std::move(grid), tail_bound * tail_bound);
}

std::vector<BranchOverlap> branch_overlaps(const TwoModeCoherentSuperposition& sup) {
  if (sup.size() < 2) throw std::invalid_argument("branch_overlaps: need at least two terms");
  std::vector<BranchOverlap> out;
  const auto& terms = sup.terms();
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      out.push_back({i, j, std::exp(-0.5 * std::norm(terms[i].alpha - terms[j].alpha)),
                     std::exp(-0.5 * std::norm(terms[i].beta - terms[j].beta))});
    }
  }
  return out;
}

}  // namespace kerrecs
