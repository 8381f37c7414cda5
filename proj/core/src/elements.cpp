#include "kerrecs/elements.hpp"

#include <cmath>
#include <numbers>

#include "chebyshev.hpp"

namespace kerrecs {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

Complex unit_phase(long double angle) { return std::polar(1.0, reduce_angle(angle)); }

long double self_shear(long double chi, long long n) { return chi * static_cast<long double>(n * (n - 1)); }

}  // namespace

double reduce_angle(long double angle) {
  long double r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  return static_cast<double>(r);
}

TwoModeState beamsplitter_apply(const TwoModeState& psi) {
  const int n_max = psi.n_max();
  const Eigen::MatrixXcd& in = psi.amplitudes();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  double lost = 0.0;

  // Block N holds |m, N-m>. On it a^+ b + a b^+ is tridiagonal with
  // off-diagonal sqrt((m+1)(N-m)) and spectrum {-N, -N+2, ..., N}.
  for (int total = 0; total <= 2 * n_max; ++total) {
    const int lo = std::max(0, total - n_max);
    const int hi = std::min(total, n_max);
    Eigen::VectorXcd block = Eigen::VectorXcd::Zero(total + 1);
    for (int m = lo; m <= hi; ++m) block[m] = in(m, total - m);
    if (block.squaredNorm() == 0.0) continue;

    Eigen::VectorXd coupling(total);
    for (int m = 0; m < total; ++m) coupling[m] = std::sqrt(static_cast<double>((m + 1) * (total - m)));
    auto apply_k = [&](const Eigen::VectorXcd& v, Eigen::VectorXcd& w) {
      for (int m = 0; m <= total; ++m) {
        Complex acc{};
        if (m > 0) acc += coupling[m - 1] * v[m - 1];
        if (m < total) acc += coupling[m] * v[m + 1];
        w[m] = acc;
      }
    };
    // exp(i pi/4 K) = exp(-i t K) with t = -pi/4.
    const Eigen::VectorXcd rotated =
        detail::expm_action(apply_k, static_cast<double>(total), -std::numbers::pi / 4.0, block);
    for (int m = 0; m <= total; ++m) {
      if (m >= lo && m <= hi) {
        out(m, total - m) = rotated[m];
      } else {
        lost += std::norm(rotated[m]);
      }
    }
  }
  return TwoModeState(std::move(out), psi.tail_loss() + lost);
}

TwoModeState delay_apply(const DelayParams& params, const TwoModeState& psi) {
  Eigen::MatrixXcd out = psi.amplitudes();
  for (Eigen::Index n = 0; n < out.cols(); ++n) {
    out.col(n) *= unit_phase(static_cast<long double>(params.delta) * n);
  }
  return TwoModeState(std::move(out), psi.tail_loss());
}

ModeState kerr_apply(const KerrParams& params, const ModeState& psi) {
  Eigen::VectorXcd out = psi.amplitudes();
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    out[n] *= unit_phase(-static_cast<long double>(params.tau) * n - self_shear(params.chi, n));
  }
  return ModeState(std::move(out), psi.tail_loss());
}

TwoModeState kerr_apply(const KerrParams& params, const TwoModeState& psi, Mode mode) {
  Eigen::MatrixXcd out = psi.amplitudes();
  for (Eigen::Index k = 0; k < out.rows(); ++k) {
    const Complex phase = unit_phase(-static_cast<long double>(params.tau) * k - self_shear(params.chi, k));
    if (mode == Mode::a) {
      out.row(k) *= phase;
    } else {
      out.col(k) *= phase;
    }
  }
  return TwoModeState(std::move(out), psi.tail_loss());
}

TwoModeState two_mode_kerr_apply(const KerrParams& params, const TwoModeState& psi) {
  Eigen::MatrixXcd out = psi.amplitudes();
  const long double chi = params.chi;
  const long double tau = params.tau;
  for (Eigen::Index m = 0; m < out.rows(); ++m) {
    for (Eigen::Index n = 0; n < out.cols(); ++n) {
      const long double angle = -tau * static_cast<long double>(m + n) - self_shear(chi, m) - self_shear(chi, n) -
                                4.0L * chi * static_cast<long double>(m * n);
      out(m, n) *= unit_phase(angle);
    }
  }
  return TwoModeState(std::move(out), psi.tail_loss());
}

TwoModeState reduced_two_mode_kerr_apply(double chi, const TwoModeState& psi) {
  Eigen::MatrixXcd out = psi.amplitudes();
  for (Eigen::Index m = 0; m < out.rows(); ++m) {
    for (Eigen::Index n = 0; n < out.cols(); ++n) {
      out(m, n) *= unit_phase(-4.0L * static_cast<long double>(chi) * static_cast<long double>(m * n));
    }
  }
  return TwoModeState(std::move(out), psi.tail_loss());
}

}  // namespace kerrecs
