#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace kerrecs::detail {

/// Bessel J_0..J_{k_max}(x) for x >= 0 by Miller's backward recurrence,
/// normalised with J_0 + 2 sum J_{2k} = 1.
std::vector<double> bessel_j_sequence(double x, int k_max);

using HermitianMatVec = std::function<void(const Eigen::VectorXcd& in, Eigen::VectorXcd& out)>;

/// exp(-i t H) v for Hermitian H whose spectrum lies in [-bound, bound].
/// Chebyshev expansion with Bessel weights; the series is cut once the
/// weights fall below 1e-17 past the order t*bound. Throws ConvergenceError
/// if that does not happen within the recurrence window.
Eigen::VectorXcd expm_action(const HermitianMatVec& apply_h, double bound, double t,
                             const Eigen::VectorXcd& v);

}  // namespace kerrecs::detail
