#include "kerrecs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chebyshev.hpp"
#include "kerrecs/errors.hpp"

namespace kerrecs {

namespace {

void require_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
}

void require_same_size(int lhs, int rhs) {
  if (lhs != rhs) {
    throw DimensionMismatch("state truncations differ: n_max " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs));
  }
}

// Zero-pads (or returns) `v` to dimension `dim`.
Eigen::VectorXcd padded(const Eigen::VectorXcd& v, Eigen::Index dim) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(std::max(dim, v.size()));
  out.head(v.size()) = v;
  return out;
}

// Projects a padded result back to n_max, folding the discarded weight into tail_loss.
ModeState project(const Eigen::VectorXcd& full, int n_max, double tail_loss) {
  const Eigen::Index keep = n_max + 1;
  const double lost = full.size() > keep ? full.tail(full.size() - keep).squaredNorm() : 0.0;
  return ModeState(full.head(keep), tail_loss + lost);
}

}  // namespace

int truncation_rule(double abs_alpha) {
  return static_cast<int>(std::ceil(abs_alpha * abs_alpha + 8.0 * abs_alpha + 10.0));
}

ComplexAmplitude::ComplexAmplitude(Complex value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw std::invalid_argument("coherent amplitude must be finite");
  }
}

ModeState::ModeState(Eigen::VectorXcd amplitudes, double tail_loss)
    : amplitudes_(std::move(amplitudes)), tail_loss_(tail_loss) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("ModeState: empty amplitude vector");
  require_finite(amplitudes_, "ModeState");
}

ModeState ModeState::vacuum(int n_max) { return fock(0, n_max); }

ModeState ModeState::fock(int n, int n_max) {
  if (n_max < 0 || n < 0 || n > n_max) throw std::invalid_argument("fock: need 0 <= n <= n_max");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  v[n] = 1.0;
  return ModeState(std::move(v));
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amplitudes, double tail_loss)
    : amplitudes_(std::move(amplitudes)), tail_loss_(tail_loss) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("TwoModeState: empty amplitude grid");
  if (amplitudes_.rows() != amplitudes_.cols()) {
    throw DimensionMismatch("TwoModeState: both modes must share n_max");
  }
  require_finite(amplitudes_, "TwoModeState");
}

TwoModeState TwoModeState::product(const ModeState& a, const ModeState& b) {
  require_same_size(a.n_max(), b.n_max());
  return TwoModeState(a.amplitudes() * b.amplitudes().transpose(), a.tail_loss() + b.tail_loss());
}

ModeState coherent_state(ComplexAmplitude alpha, int n_max) {
  if (n_max < 0) throw std::invalid_argument("coherent_state: n_max must be >= 0");
  const Complex a = alpha.value();
  const double r = std::abs(a);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  if (r == 0.0) {
    v[0] = 1.0;
    return ModeState(std::move(v));
  }
  const double log_r = std::log(r);
  const double arg = std::arg(a);
  for (int n = 0; n <= n_max; ++n) {
    const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
    v[n] = std::polar(std::exp(log_mag), n * arg);
  }
  // Deficit from the Poisson tail, summed directly rather than as 1 - sum.
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double p = std::exp(-r * r + 2.0 * n * log_r - std::lgamma(n + 1.0));
    tail += p;
    if (n > r * r && p < 1e-300 + tail * 1e-17) break;
  }
  return ModeState(std::move(v), tail);
}

Complex coherent_overlap(Complex beta, Complex alpha) {
  return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) + std::conj(beta) * alpha);
}

ModeState apply_displacement(ComplexAmplitude alpha, const ModeState& psi) {
  const Complex a = alpha.value();
  if (a == Complex{}) return psi;
  const int n_max = psi.n_max();
  const int work_max =
      std::max(n_max, truncation_rule(std::sqrt(static_cast<double>(n_max)) + std::abs(a)));
  const Eigen::Index dim = work_max + 1;

  // H = i (a a^+ - conj(a) a), so D = exp(-i H).
  const Complex ia = Complex{0.0, 1.0} * a;
  const Complex ia_conj = Complex{0.0, 1.0} * std::conj(a);
  const Eigen::VectorXd root = Eigen::VectorXd::LinSpaced(dim + 1, 0.0, static_cast<double>(dim)).cwiseSqrt();
  auto apply_h = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      Complex acc{};
      if (n > 0) acc += ia * root[n] * in[n - 1];
      if (n + 1 < dim) acc -= ia_conj * root[n + 1] * in[n + 1];
      out[n] = acc;
    }
  };
  const double bound = 2.0 * std::abs(a) * std::sqrt(static_cast<double>(dim));
  const Eigen::VectorXcd full = detail::expm_action(apply_h, bound, 1.0, padded(psi.amplitudes(), dim));
  return project(full, n_max, psi.tail_loss());
}

ModeState apply_squeeze(Complex epsilon, const ModeState& psi) {
  if (!std::isfinite(epsilon.real()) || !std::isfinite(epsilon.imag())) {
    throw std::invalid_argument("apply_squeeze: non-finite epsilon");
  }
  const double r = std::abs(epsilon);
  if (r == 0.0) return psi;
  if (r > kMaxSqueeze) {
    throw ConvergenceError("apply_squeeze: |epsilon| = " + std::to_string(r) +
                           " exceeds the supported maximum " + std::to_string(kMaxSqueeze));
  }
  const int n_max = psi.n_max();
  // Stretch by e^{2r} plus room for the geometric tanh(r)^n tail of a squeezed vacuum.
  const double tail_room = 40.0 / std::max(1e-3, -std::log(std::tanh(r)));
  const Eigen::Index dim =
      static_cast<Eigen::Index>(std::ceil(n_max * std::exp(2.0 * r) + tail_room)) + 21;

  // H = (i/2)(conj(eps) a^2 - eps a^+^2), so S = exp(-i H).
  const Complex ie = Complex{0.0, 0.5} * epsilon;
  const Complex ie_conj = Complex{0.0, 0.5} * std::conj(epsilon);
  // pair[n] = sqrt(n (n - 1)), the a^2 matrix element <n-2|a^2|n>.
  Eigen::VectorXd pair(dim + 2);
  for (Eigen::Index n = 0; n < pair.size(); ++n) pair[n] = std::sqrt(static_cast<double>(n * (n - 1 < 0 ? 0 : n - 1)));
  auto apply_h = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      Complex acc{};
      if (n + 2 < dim) acc += ie_conj * pair[n + 2] * in[n + 2];
      if (n >= 2) acc -= ie * pair[n] * in[n - 2];
      out[n] = acc;
    }
  };
  const double bound = r * static_cast<double>(dim + 1);
  const Eigen::VectorXcd full = detail::expm_action(apply_h, bound, 1.0, padded(psi.amplitudes(), dim));
  return project(full, n_max, psi.tail_loss());
}

ModeState apply_rotation(double sigma, const ModeState& psi) {
  Eigen::VectorXcd v = psi.amplitudes();
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    const long double phase =
        std::fmod(static_cast<long double>(sigma) * n, 2.0L * std::numbers::pi_v<long double>);
    v[n] *= std::polar(1.0, static_cast<double>(phase));
  }
  return ModeState(std::move(v), psi.tail_loss());
}

Complex inner_product(const ModeState& psi, const ModeState& phi) {
  require_same_size(psi.n_max(), phi.n_max());
  return psi.amplitudes().dot(phi.amplitudes());  // Eigen's dot conjugates the left operand.
}

Complex inner_product(const TwoModeState& psi, const TwoModeState& phi) {
  require_same_size(psi.n_max(), phi.n_max());
  return (psi.amplitudes().conjugate().cwiseProduct(phi.amplitudes())).sum();
}

double fidelity(const ModeState& psi, const ModeState& phi) { return std::norm(inner_product(psi, phi)); }

double fidelity(const TwoModeState& psi, const TwoModeState& phi) {
  return std::norm(inner_product(psi, phi));
}

std::vector<double> photon_number_distribution(const ModeState& psi) {
  std::vector<double> p(psi.amplitudes().size());
  for (size_t n = 0; n < p.size(); ++n) p[n] = std::norm(psi[static_cast<int>(n)]);
  return p;
}

std::vector<double> marginal_photon_distribution(const TwoModeState& psi, Mode mode) {
  const Eigen::MatrixXd probs = psi.amplitudes().cwiseAbs2();
  const Eigen::VectorXd marginal =
      (mode == Mode::a) ? Eigen::VectorXd(probs.rowwise().sum()) : Eigen::VectorXd(probs.colwise().sum().transpose());
  return {marginal.data(), marginal.data() + marginal.size()};
}

double mean_photon_number(const ModeState& psi) {
  double mean = 0.0;
  for (int n = 0; n <= psi.n_max(); ++n) mean += n * std::norm(psi[n]);
  return mean;
}

double entanglement_entropy(const TwoModeState& psi) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(psi.amplitudes());
  const Eigen::VectorXd s2 = svd.singularValues().array().square();
  const double total = s2.sum();
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < s2.size(); ++i) {
    const double p = s2[i] / total;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::max(entropy, 0.0);
}

double husimi_q(const ModeState& psi, ComplexAmplitude beta) {
  const ModeState probe = coherent_state(beta, psi.n_max());
  return std::norm(inner_product(probe, psi)) / std::numbers::pi;
}

double husimi_q(const TwoModeState& psi, Mode mode, ComplexAmplitude beta) {
  const Eigen::VectorXcd probe = coherent_state(beta, psi.n_max()).amplitudes().conjugate();
  // Contract the probe with the selected mode; what remains is a vector over the other mode.
  const Eigen::VectorXcd rest = (mode == Mode::a) ? Eigen::VectorXcd(psi.amplitudes().transpose() * probe)
                                                  : Eigen::VectorXcd(psi.amplitudes() * probe);
  return rest.squaredNorm() / std::numbers::pi;
}

}  // namespace kerrecs
