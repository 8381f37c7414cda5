#pragma once

// Reference computations for the tests. None of these call into the library
// under test; they use dense matrices, recurrences and closed forms instead.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd annihilation(int dim) {
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Coherent amplitudes by the ratio recurrence c_n = c_{n-1} alpha / sqrt(n).
inline VectorXcd coherent(Complex alpha, int dim) {
  VectorXcd v(dim);
  v[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

/// Dense D(alpha) = exp(alpha a^dag - alpha* a) on `dim` levels.
inline MatrixXcd displacement(Complex alpha, int dim) {
  const MatrixXcd a = annihilation(dim);
  const MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

/// Dense S(eps) = exp((eps* a^2 - eps a^dag^2)/2).
inline MatrixXcd squeeze(Complex eps, int dim) {
  const MatrixXcd a = annihilation(dim);
  const MatrixXcd gen = 0.5 * (std::conj(eps) * a * a - eps * a.adjoint() * a.adjoint());
  return gen.exp();
}

/// S(eps)|0> from the textbook expansion over even photon numbers.
inline VectorXcd squeezed_vacuum(Complex eps, int dim) {
  const double r = std::abs(eps);
  const Complex dir = r > 0 ? eps / r : Complex{1.0, 0.0};
  VectorXcd v = VectorXcd::Zero(dim);
  const Complex ratio = -dir * std::tanh(r);
  Complex c = 1.0 / std::sqrt(std::cosh(r));
  for (int m = 0; 2 * m < dim; ++m) {
    v[2 * m] = c;
    // sqrt((2m+2)!)/(2^{m+1}(m+1)!) over sqrt((2m)!)/(2^m m!) = sqrt((2m+1)(2m+2)) / (2(m+1))
    c *= ratio * std::sqrt((2.0 * m + 1.0) * (2.0 * m + 2.0)) / (2.0 * (m + 1.0));
  }
  return v;
}

/// Two-mode operator on row-major vec(M) with M(m, n) -> index m * dim + n.
inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline VectorXcd flatten(const MatrixXcd& grid) {
  VectorXcd v(grid.size());
  for (Eigen::Index m = 0; m < grid.rows(); ++m) {
    for (Eigen::Index n = 0; n < grid.cols(); ++n) v[m * grid.cols() + n] = grid(m, n);
  }
  return v;
}

inline MatrixXcd unflatten(const VectorXcd& v, int dim) {
  MatrixXcd grid(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) grid(m, n) = v[m * dim + n];
  }
  return grid;
}

/// Dense exp(i pi/4 (a^dag b + a b^dag)) on dim x dim levels.
inline MatrixXcd beamsplitter_dense(int dim) {
  const MatrixXcd a = annihilation(dim);
  const MatrixXcd id = MatrixXcd::Identity(dim, dim);
  const MatrixXcd A = kron(a, id);
  const MatrixXcd B = kron(id, a);
  const MatrixXcd gen = Complex{0.0, std::numbers::pi / 4} * (A.adjoint() * B + A * B.adjoint());
  return gen.exp();
}

/// Beamsplitter output for |m, n> by expanding
/// ((a^dag + i b^dag)/sqrt2)^m ((b^dag + i a^dag)/sqrt2)^n |0,0> / sqrt(m! n!).
/// Exact polynomial algebra; fine for small m + n.
inline MatrixXcd beamsplitter_fock(int m, int n, int dim) {
  const int total = m + n;
  // poly[k] = coefficient of a^dag^k b^dag^(total-k)
  std::vector<Complex> poly(total + 1, 0.0);
  const Complex i{0.0, 1.0};
  std::vector<double> binom_m(m + 1), binom_n(n + 1);
  for (int k = 0; k <= m; ++k) binom_m[k] = std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0));
  for (int k = 0; k <= n; ++k) binom_n[k] = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
  for (int j = 0; j <= m; ++j) {      // j factors of a^dag from the first product
    for (int l = 0; l <= n; ++l) {    // l factors of i a^dag from the second product
      const Complex c = binom_m[j] * std::pow(i, m - j) * binom_n[l] * std::pow(i, l);
      poly[j + l] += c;
    }
  }
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  const double norm = std::pow(2.0, -0.5 * total) / std::sqrt(std::tgamma(m + 1.0) * std::tgamma(n + 1.0));
  for (int k = 0; k <= total; ++k) {
    if (k < dim && total - k < dim) {
      out(k, total - k) = norm * poly[k] * std::sqrt(std::tgamma(k + 1.0) * std::tgamma(total - k + 1.0));
    }
  }
  return out;
}

/// Smallest N with r((n+N)^2 - n^2) = 0 mod s for every n in 0..2s.
inline int period_scan(std::int64_t r, std::int64_t s) {
  for (std::int64_t N = 1; N <= s; ++N) {
    bool ok = true;
    for (std::int64_t n = 0; n <= 2 * s && ok; ++n) {
      const std::int64_t diff = r * ((n + N) * (n + N) - n * n);
      ok = ((diff % s) + s) % s == 0;
    }
    if (ok) return static_cast<int>(N);
  }
  return static_cast<int>(s);
}

inline double fidelity(const VectorXcd& x, const VectorXcd& y) {
  return std::norm(x.dot(y)) / (x.squaredNorm() * y.squaredNorm());
}

inline double fidelity(const MatrixXcd& x, const MatrixXcd& y) {
  return std::norm((x.conjugate().cwiseProduct(y)).sum()) / (x.squaredNorm() * y.squaredNorm());
}

/// exp(-i chi n(n-1)) applied elementwise with plain double arithmetic.
inline VectorXcd kerr(const VectorXcd& v, double chi, double tau = 0.0) {
  VectorXcd out = v;
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    const double nd = static_cast<double>(n);
    out[n] *= std::polar(1.0, -tau * nd - chi * nd * (nd - 1.0));
  }
  return out;
}

/// Von Neumann entropy of mode a from the eigenvalues of M M^dag.
inline double entropy(const MatrixXcd& grid) {
  const MatrixXcd rho = grid * grid.adjoint() / grid.squaredNorm();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()[k];
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

}  // namespace oracle
