#include "chebyshev.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "kerrecs/errors.hpp"

namespace kerrecs::detail {

std::vector<double> bessel_j_sequence(double x, int k_max) {
  std::vector<double> j(static_cast<size_t>(k_max) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  // Start well above both k_max and x so the seed error has decayed.
  const int start = std::max(k_max, static_cast<int>(x)) + 40 +
                    static_cast<int>(10.0 * std::cbrt(x));
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= k_max) j[k] = cur;
    norm += (k == 0) ? cur : ((k % 2 == 0) ? 2.0 * cur : 0.0);
    const double prev = (k > 0) ? (2.0 * k / x) * cur - next : 0.0;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      for (auto& v : j) v *= 1e-250;
      next *= 1e-250;
      cur *= 1e-250;
      norm *= 1e-250;
    }
  }
  for (auto& v : j) v /= norm;
  return j;
}

Eigen::VectorXcd expm_action(const HermitianMatVec& apply_h, double bound, double t,
                             const Eigen::VectorXcd& v) {
  const double x = std::abs(t) * bound;
  if (x == 0.0) return v;

  constexpr double kCut = 1e-17;
  const int window = static_cast<int>(std::ceil(x)) + 60 + static_cast<int>(12.0 * std::cbrt(x));
  const std::vector<double> bessel = bessel_j_sequence(x, window);

  int terms = -1;
  for (int k = static_cast<int>(std::ceil(x)); k + 1 < window; ++k) {
    if (std::abs(bessel[k]) < kCut && std::abs(bessel[k + 1]) < kCut) {
      terms = k;
      break;
    }
  }
  if (terms < 0) {
    throw ConvergenceError("Chebyshev series for exp(-itH) did not converge (t*|H| = " +
                           std::to_string(x) + ")");
  }

  // exp(-i s y) = J0(s) + 2 sum_k (-i)^k J_k(s) T_k(y), with s = t*bound, y = H/bound.
  const double sign = (t >= 0.0) ? 1.0 : -1.0;
  const double inv_bound = 1.0 / bound;
  const std::complex<double> minus_i{0.0, -sign};

  Eigen::VectorXcd prev = v;
  Eigen::VectorXcd cur(v.size());
  apply_h(v, cur);
  cur *= inv_bound;

  Eigen::VectorXcd result = bessel[0] * prev + (2.0 * bessel[1]) * minus_i * cur;
  std::complex<double> phase = minus_i;
  Eigen::VectorXcd scratch(v.size());
  for (int k = 2; k <= terms; ++k) {
    apply_h(cur, scratch);
    scratch = (2.0 * inv_bound) * scratch - prev;
    prev.swap(cur);
    cur.swap(scratch);
    phase *= minus_i;
    result += (2.0 * bessel[k]) * phase * cur;
  }
  return result;
}

}  // namespace kerrecs::detail
