#include "kerrecs/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kerrecs/errors.hpp"

namespace kerrecs {

namespace {

constexpr Complex kI{0.0, 1.0};

double relative(double residual, double scale) { return residual / std::max(scale, 1e-300); }

// S(eps) S(-e^{2 i sigma} eps) |0>, displaced by d, with global phase e^{-i lambda}.
ModeState displaced_double_squeeze(Complex d, Complex eps, double sigma, double lambda, int n_max) {
  ModeState psi = ModeState::vacuum(n_max);
  psi = apply_squeeze(-std::polar(1.0, 2.0 * sigma) * eps, psi);
  psi = apply_squeeze(eps, psi);
  psi = apply_displacement(d, psi);
  return ModeState(std::polar(1.0, -lambda) * psi.amplitudes(), psi.tail_loss());
}

struct Moments {
  Complex a;   // <a>
  Complex a2;  // <a^2>
  double n;    // <a^dag a>
};

double variance_from(const Moments& m, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  const double mean = (rot * m.a).real();
  const double second = 0.25 * (2.0 * (rot * rot * m.a2).real() + 2.0 * m.n + 1.0);
  return second - mean * mean;
}

Moments moments(const ModeState& psi) {
  const auto& v = psi.amplitudes();
  const double norm = v.squaredNorm();
  if (norm <= 0.0) throw std::invalid_argument("quadrature_variance: zero state");
  Moments m{0.0, 0.0, 0.0};
  const Eigen::Index dim = v.size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double kd = static_cast<double>(k);
    m.n += kd * std::norm(v[k]);
    if (k + 1 < dim) m.a += std::conj(v[k]) * std::sqrt(kd + 1.0) * v[k + 1];
    if (k + 2 < dim) m.a2 += std::conj(v[k]) * std::sqrt((kd + 1.0) * (kd + 2.0)) * v[k + 2];
  }
  m.a /= norm;
  m.a2 /= norm;
  m.n /= norm;
  return m;
}

Moments moments(const TwoModeState& psi, Mode mode) {
  // Work with mode-major rows so the same loop serves both modes.
  const Eigen::MatrixXcd& raw = psi.amplitudes();
  const Eigen::MatrixXcd m_rows = (mode == Mode::a) ? raw : Eigen::MatrixXcd(raw.transpose());
  const double norm = m_rows.squaredNorm();
  if (norm <= 0.0) throw std::invalid_argument("quadrature_variance: zero state");
  Moments m{0.0, 0.0, 0.0};
  const Eigen::Index dim = m_rows.rows();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double kd = static_cast<double>(k);
    m.n += kd * m_rows.row(k).squaredNorm();
    if (k + 1 < dim) m.a += std::sqrt(kd + 1.0) * m_rows.row(k).dot(m_rows.row(k + 1));
    if (k + 2 < dim) {
      m.a2 += std::sqrt((kd + 1.0) * (kd + 2.0)) * m_rows.row(k).dot(m_rows.row(k + 2));
    }
  }
  m.a /= norm;
  m.a2 /= norm;
  m.n /= norm;
  return m;
}

QuadratureScan scan(const Moments& m, int points) {
  if (points < 1) throw std::invalid_argument("quadrature_scan: points must be positive");
  QuadratureScan out;
  out.theta.reserve(points);
  out.variance.reserve(points);
  out.min_theta = 0.0;
  out.min_variance = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double theta = std::numbers::pi * k / points;
    const double v = variance_from(m, theta);
    out.theta.push_back(theta);
    out.variance.push_back(v);
    if (v < out.min_variance) {
      out.min_variance = v;
      out.min_theta = theta;
    }
  }
  return out;
}

}  // namespace

ShearApproxParams shear_params(ComplexAmplitude alpha_in, double chi) {
  if (!std::isfinite(chi)) throw DomainError("shear_params: chi must be finite");
  const Complex alpha = alpha_in;
  const Complex eta = chi * alpha * alpha;
  const double abs_eta = std::abs(eta);
  if (!(abs_eta > 0.5)) {
    std::ostringstream msg;
    msg << "shear_params: requires |eta| = |chi alpha^2| > 1/2, got " << abs_eta;
    throw DomainError(msg.str());
  }
  ShearApproxParams p;
  p.eta = eta;
  const Complex dir_eta_conj = std::conj(eta) / abs_eta;
  p.epsilon = 0.5 * dir_eta_conj * std::atanh(1.0 / (2.0 * abs_eta));
  p.sigma = -4.0 * abs_eta * abs_eta * std::sqrt(1.0 - 1.0 / (4.0 * abs_eta * abs_eta));

  const double r = std::abs(p.epsilon);
  const Complex u = p.epsilon / r;
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  p.rho = (2.0 * std::conj(alpha) * eta / p.sigma) * ch - (2.0 * alpha * std::conj(eta) / p.sigma) * std::conj(u) * sh;
  p.delta = ch * p.rho * (1.0 - std::polar(1.0, p.sigma)) -
            u * sh * std::conj(p.rho) * (1.0 - std::polar(1.0, -p.sigma));
  p.lambda = chi * std::pow(std::norm(alpha), 2) + p.sigma * (sh * sh + std::norm(alpha)) +
             std::norm(p.rho) * std::sin(p.sigma) - (alpha * std::conj(p.delta)).imag();
  return p;
}

double ShearResiduals::max() const { return std::max({rotation, squeeze, displacement}); }

ShearResiduals shear_residuals(ComplexAmplitude alpha_in, double chi) {
  const ShearApproxParams p = shear_params(alpha_in, chi);
  const Complex alpha = alpha_in;
  const double abs_eta = std::abs(p.eta);
  const double r = std::abs(p.epsilon);
  const Complex u = p.epsilon / r;
  ShearResiduals out;
  out.rotation = relative(std::abs(p.sigma * std::cosh(2.0 * r) + 4.0 * abs_eta * abs_eta), 4.0 * abs_eta * abs_eta);
  out.squeeze = relative(std::abs(p.sigma * u * std::sinh(2.0 * r) + 2.0 * std::conj(p.eta)), 2.0 * abs_eta);
  out.displacement =
      relative(std::abs(p.sigma * (-std::conj(p.rho) * std::cosh(r) - p.rho * u * std::sinh(r)) +
                        2.0 * alpha * std::conj(p.eta)),
               2.0 * std::abs(alpha) * abs_eta);
  return out;
}

ModeState approx_sheared_state(ComplexAmplitude alpha_in, double chi, int n_max) {
  const ShearApproxParams p = shear_params(alpha_in, chi);
  const Complex alpha = alpha_in;
  return displaced_double_squeeze(alpha + p.delta, p.epsilon, p.sigma, p.lambda, n_max);
}

std::pair<ArmApproxParams, ArmApproxParams> arm_params(ComplexAmplitude alpha_in, double chi1, double chi2) {
  const Complex alpha = alpha_in;
  ArmApproxParams arm1;
  ArmApproxParams arm2;
  arm1.omega = alpha / std::numbers::sqrt2;
  arm2.omega = kI * alpha / std::numbers::sqrt2;
  arm1.shear = shear_params(arm1.omega, chi1);
  arm2.shear = shear_params(arm2.omega, chi2);

  const Complex eps1 = arm1.shear.epsilon;
  const double r = std::abs(eps1);
  const Complex u = eps1 / r;
  const Complex u_rot = std::polar(1.0, arm1.shear.sigma) * u;
  const double ch = std::cosh(r);
  const double sh2 = std::sinh(r) * std::sinh(r);
  const Complex d1 = arm1.omega + arm1.shear.delta;
  const Complex d2 = arm2.omega + arm2.shear.delta;
  const Complex part1 = ch * d1 + u * std::conj(d1);
  const Complex part2 = ch * d2 + u_rot * std::conj(d2);
  arm1.Gamma = (part1 + kI * part2) / sh2;
  arm2.Gamma = (kI * part1 + part2) / sh2;
  arm1.gamma = (ch * arm1.Gamma - u * std::conj(arm1.Gamma)) / std::numbers::sqrt2;
  arm2.gamma = (ch * arm2.Gamma - u * std::conj(arm2.Gamma)) / std::numbers::sqrt2;
  return {arm1, arm2};
}

std::pair<Complex, Complex> transported_displacements(ComplexAmplitude alpha, double chi) {
  const auto [arm1, arm2] = arm_params(alpha, chi, chi);
  const Complex d1 = arm1.omega + arm1.shear.delta;
  const Complex d2 = arm2.omega + arm2.shear.delta;
  return {(d1 + kI * d2) / std::numbers::sqrt2, (d2 + kI * d1) / std::numbers::sqrt2};
}

namespace {

TwoModeState product_output(const ArmApproxParams& arm1, const ArmApproxParams& arm2, Complex g1, Complex g2,
                            int n_max) {
  const Complex eps = arm1.shear.epsilon;
  const double sigma = arm1.shear.sigma;
  // Port b' carries S(-eps) S(e^{2 i sigma} eps); the global phase sits on port a'.
  const ModeState port_a = displaced_double_squeeze(g1, eps, sigma, arm1.shear.lambda + arm2.shear.lambda, n_max);
  const ModeState port_b = displaced_double_squeeze(g2, -eps, sigma, 0.0, n_max);
  return TwoModeState::product(port_a, port_b);
}

}  // namespace

TwoModeState approx_interferometer_output(ComplexAmplitude alpha, double chi, int n_max) {
  const auto [arm1, arm2] = arm_params(alpha, chi, chi);
  const auto [g1, g2] = transported_displacements(alpha, chi);
  return product_output(arm1, arm2, g1, g2, n_max);
}

TwoModeState printed_gamma_output(ComplexAmplitude alpha, double chi, int n_max) {
  const auto [arm1, arm2] = arm_params(alpha, chi, chi);
  return product_output(arm1, arm2, arm1.gamma, arm2.gamma, n_max);
}

double displaced_pair_fidelity(Complex d1, Complex d2, Complex eps, double sigma) {
  // S(e)^dag a S(e) = cosh|e| a - e^{i arg e} sinh|e| a^dag, written (mu, nu).
  auto bogoliubov = [](Complex e) {
    const double r = std::abs(e);
    const Complex dir = (r > 0.0) ? e / r : Complex{1.0, 0.0};
    return std::pair<Complex, Complex>{std::cosh(r), -dir * std::sinh(r)};
  };
  const auto [mu1, nu1] = bogoliubov(eps);
  const auto [mu2, nu2] = bogoliubov(-std::polar(1.0, 2.0 * sigma) * eps);
  const Complex mu = mu1 * mu2 + nu1 * std::conj(nu2);
  const Complex nu = mu1 * nu2 + nu1 * std::conj(mu2);
  const Complex beta = d2 - d1;
  const Complex transformed = beta * std::conj(mu) - std::conj(beta) * nu;
  return std::exp(-std::norm(transformed));
}

GammaCheck check_printed_gamma(ComplexAmplitude alpha, double chi) {
  const auto [arm1, arm2] = arm_params(alpha, chi, chi);
  GammaCheck out;
  out.printed = {arm1.gamma, arm2.gamma};
  out.transported = transported_displacements(alpha, chi);
  const Complex eps = arm1.shear.epsilon;
  const double sigma = arm1.shear.sigma;
  out.fidelity = displaced_pair_fidelity(out.printed.first, out.transported.first, eps, sigma) *
                 displaced_pair_fidelity(out.printed.second, out.transported.second, -eps, sigma);
  out.accepted = out.fidelity >= 1.0 - 1e-8;
  return out;
}

double quadrature_variance(const ModeState& psi, double theta) { return variance_from(moments(psi), theta); }

double quadrature_variance(const TwoModeState& psi, Mode mode, double theta) {
  return variance_from(moments(psi, mode), theta);
}

QuadratureScan quadrature_scan(const ModeState& psi, int points) { return scan(moments(psi), points); }

QuadratureScan quadrature_scan(const TwoModeState& psi, Mode mode, int points) {
  return scan(moments(psi, mode), points);
}

}  // namespace kerrecs
