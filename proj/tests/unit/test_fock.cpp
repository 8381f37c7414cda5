#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "kerrecs/ecs.hpp"
#include "kerrecs/elements.hpp"
#include "kerrecs/errors.hpp"
#include "kerrecs/fock.hpp"
#include "oracles.hpp"

using namespace kerrecs;
using Complex = std::complex<double>;

namespace {

double nf(const ModeState& a, const ModeState& b) { return fidelity(a, b) / (a.norm_squared() * b.norm_squared()); }

}  // namespace

TEST(TruncationRule, MatchesPoissonMargin) {
  EXPECT_EQ(truncation_rule(0.0), 10);
  EXPECT_EQ(truncation_rule(2.0), 30);
  EXPECT_EQ(truncation_rule(1.5), static_cast<int>(std::ceil(2.25 + 12 + 10)));
}

TEST(ComplexAmplitude, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ComplexAmplitude(Complex{nan, 0.0}), std::invalid_argument);
  EXPECT_THROW(ComplexAmplitude(Complex{0.0, inf}), std::invalid_argument);
  EXPECT_THROW(coherent_state(Complex{nan, 1.0}, 10), std::invalid_argument);
  EXPECT_NO_THROW(ComplexAmplitude(Complex{1.0, -2.0}));
}

TEST(ModeState, RejectsNonFiniteAmplitudes) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
  v[1] = Complex{std::numeric_limits<double>::infinity(), 0.0};
  EXPECT_THROW(ModeState{v}, std::invalid_argument);
}

TEST(CoherentState, VacuumIsUnitVector) {
  const ModeState psi = coherent_state(0.0, 10);
  ASSERT_EQ(psi.n_max(), 10);
  EXPECT_EQ(psi[0], Complex(1.0, 0.0));
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(psi[n], Complex(0.0, 0.0));
}

TEST(CoherentState, MatchesRecurrenceOracle) {
  for (Complex alpha : {Complex{2.0, 0.0}, Complex{-1.3, 0.7}, Complex{0.0, 4.5}}) {
    const int n_max = truncation_rule(std::abs(alpha));
    const ModeState psi = coherent_state(alpha, n_max);
    const Eigen::VectorXcd ref = oracle::coherent(alpha, n_max + 1);
    EXPECT_LT((psi.amplitudes() - ref).norm(), 1e-13) << alpha;
  }
}

TEST(CoherentState, NormDeficitAndMean) {
  const ModeState psi = coherent_state(2.0, 40);
  EXPECT_LT(1.0 - psi.norm_squared(), 1e-12);
  EXPECT_NEAR(mean_photon_number(psi), 4.0, 1e-10);
  EXPECT_NEAR(psi.norm_squared() + psi.tail_loss(), 1.0, 1e-14);
  EXPECT_FALSE(psi.truncation_warning());
}

TEST(CoherentState, DeficitDecreasesWithCutoff) {
  double previous = 1.0;
  for (int n_max = 2; n_max <= 40; n_max += 2) {
    const double deficit = coherent_state(3.0, n_max).tail_loss();
    EXPECT_LE(deficit, previous);
    previous = deficit;
  }
}

TEST(CoherentState, TruncationWarningWhenCutoffTooSmall) {
  EXPECT_TRUE(coherent_state(3.0, 5).truncation_warning());
}

TEST(CoherentOverlap, ClosedFormAgainstFock) {
  const Complex alpha{1.0, 0.0};
  const Complex beta{0.0, 1.0};
  const Complex ref = std::exp(-(std::norm(alpha) + std::norm(beta)) / 2.0 + std::conj(beta) * alpha);
  EXPECT_LT(std::abs(inner_product(coherent_state(beta, 30), coherent_state(alpha, 30)) - ref), 1e-12);
  EXPECT_LT(std::abs(coherent_overlap(beta, alpha) - ref), 1e-15);
}

TEST(Fidelity, BasicProperties) {
  const ModeState a = coherent_state(0.0, 40);
  const ModeState b = coherent_state(3.0, 40);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(a, b), std::exp(-9.0), 1e-10);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-16);
  EXPECT_EQ(fidelity(ModeState::fock(0, 5), ModeState::fock(1, 5)), 0.0);
  const ModeState bp(std::polar(1.0, 0.8) * b.amplitudes());
  const ModeState ap(std::polar(1.0, 0.8) * a.amplitudes());
  EXPECT_NEAR(fidelity(ap, bp), fidelity(a, b), 1e-16);
  EXPECT_THROW(fidelity(a, coherent_state(0.0, 39)), DimensionMismatch);
}

TEST(Displacement, ZeroIsIdentity) {
  const ModeState psi = coherent_state(Complex{0.3, -0.4}, 20);
  EXPECT_LT((apply_displacement(0.0, psi).amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(Displacement, OnVacuumGivesCoherent) {
  const ModeState d = apply_displacement(1.5, ModeState::vacuum(40));
  EXPECT_LT((d.amplitudes() - coherent_state(1.5, 40).amplitudes()).norm(), 1e-10);
}

TEST(Displacement, MatchesDenseExponential) {
  // The dense oracle runs on a large space and is projected back.
  const int n_max = 25;
  const int big = 120;
  const Complex alpha{0.8, -1.1};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(big);
  for (int n = 0; n <= n_max; ++n) v[n] = Complex{std::sin(1.0 + n), std::cos(2.0 * n)} / (1.0 + n);
  v /= v.norm();
  const Eigen::VectorXcd ref = (oracle::displacement(alpha, big) * v).head(n_max + 1);
  const ModeState got = apply_displacement(alpha, ModeState(v.head(n_max + 1)));
  EXPECT_LT((got.amplitudes() - ref).norm(), 1e-11);
}

TEST(Displacement, InverseComposition) {
  const ModeState psi = coherent_state(0.5, 30);
  const ModeState back = apply_displacement(-1.0, apply_displacement(1.0, psi));
  EXPECT_GE(nf(back, psi), 1.0 - 1e-10);
}

TEST(Displacement, ComposesToCoherentShift) {
  const ModeState psi = apply_displacement(Complex{0.0, 1.0}, coherent_state(1.0, 40));
  EXPECT_GE(nf(psi, coherent_state(Complex{1.0, 1.0}, 40)), 1.0 - 1e-10);
}

TEST(Squeeze, ZeroIsIdentity) {
  const ModeState psi = coherent_state(0.7, 20);
  EXPECT_LT((apply_squeeze(0.0, psi).amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(Squeeze, VacuumMatchesClosedForm) {
  for (Complex eps : {Complex{0.3, 0.0}, std::polar(0.5, std::numbers::pi / 3), std::polar(1.2, -2.0)}) {
    const int n_max = 60;
    const ModeState s = apply_squeeze(eps, ModeState::vacuum(n_max));
    const Eigen::VectorXcd ref = oracle::squeezed_vacuum(eps, n_max + 1);
    EXPECT_LT((s.amplitudes() - ref).norm(), 1e-10) << eps;
  }
}

TEST(Squeeze, MatchesDenseExponentialOnGeneralState) {
  const int n_max = 20;
  const int big = 160;
  const Complex eps = std::polar(0.4, 0.9);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(big);
  for (int n = 0; n <= n_max; ++n) v[n] = Complex{std::cos(0.3 * n), std::sin(1.7 * n)} / (1.0 + n * n);
  v /= v.norm();
  const Eigen::VectorXcd ref = (oracle::squeeze(eps, big) * v).head(n_max + 1);
  const ModeState got = apply_squeeze(eps, ModeState(v.head(n_max + 1)));
  EXPECT_LT((got.amplitudes() - ref).norm(), 1e-10);
}

TEST(Squeeze, EvenSupportOnVacuum) {
  const auto p = photon_number_distribution(apply_squeeze(0.3, ModeState::vacuum(40)));
  for (std::size_t n = 1; n < p.size(); n += 2) EXPECT_LT(p[n], 1e-14);
}

TEST(Squeeze, InverseComposition) {
  const ModeState vac = ModeState::vacuum(40);
  EXPECT_GE(nf(apply_squeeze(-0.3, apply_squeeze(0.3, vac)), vac), 1.0 - 1e-10);
}

TEST(Squeeze, RejectsLargeParameter) {
  EXPECT_THROW(apply_squeeze(kMaxSqueeze + 0.1, ModeState::vacuum(10)), ConvergenceError);
}

TEST(Rotation, Properties) {
  const ModeState psi = coherent_state(1.0, 30);
  EXPECT_LT((apply_rotation(0.0, psi).amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_LT((apply_rotation(2.0 * std::numbers::pi, psi).amplitudes() - psi.amplitudes()).norm(), 1e-12);
  EXPECT_GE(nf(apply_rotation(0.7, psi), coherent_state(std::polar(1.0, 0.7), 30)), 1.0 - 1e-10);
  const auto p0 = photon_number_distribution(psi);
  const auto p1 = photon_number_distribution(apply_rotation(1.234, psi));
  for (std::size_t n = 0; n < p0.size(); ++n) EXPECT_NEAR(p0[n], p1[n], 1e-15);
}

TEST(PhotonDistribution, VacuumAndEvenCat) {
  const auto pv = photon_number_distribution(ModeState::vacuum(5));
  EXPECT_EQ(pv[0], 1.0);
  // (|a> + |-a>) normalized: odd populations vanish and even weights go as a^{4n}/(2n)!.
  const double a = 1.2;
  const ModeState cat = synthesize_fock(CoherentSuperposition({{1.0, a}, {1.0, -a}}), 40);
  const auto p = photon_number_distribution(cat);
  double total = 0.0;
  for (double x : p) total += x;
  for (std::size_t n = 1; n < p.size(); n += 2) EXPECT_LT(p[n] / total, 1e-12);
  for (int n = 1; n < 8; ++n) {
    const double ratio = p[2 * n] / p[0];
    const double ref = std::pow(a, 4.0 * n) / std::tgamma(2.0 * n + 1.0);
    EXPECT_NEAR(ratio / ref, 1.0, 1e-12) << n;
  }
}

TEST(PhotonDistribution, ShearLeavesCoherentStatistics) {
  const ModeState psi = coherent_state(1.5, 40);
  const auto p0 = photon_number_distribution(psi);
  const auto p1 = photon_number_distribution(kerr_apply(KerrParams{0.3, 0.0}, psi));
  for (std::size_t n = 0; n < p0.size(); ++n) EXPECT_NEAR(p0[n], p1[n], 1e-16);
}

TEST(TwoModeState, ProductAndMarginals) {
  const TwoModeState psi = TwoModeState::product(coherent_state(1.0, 25), coherent_state(Complex{0, 2}, 25));
  const auto pa = marginal_photon_distribution(psi, Mode::a);
  const auto pb = marginal_photon_distribution(psi, Mode::b);
  const auto ra = photon_number_distribution(coherent_state(1.0, 25));
  double sum_b = 0.0;
  for (std::size_t n = 0; n < pa.size(); ++n) {
    EXPECT_NEAR(pa[n] / psi.norm_squared(), ra[n] / coherent_state(1.0, 25).norm_squared(), 1e-14);
    sum_b += pb[n];
  }
  EXPECT_NEAR(sum_b, psi.norm_squared(), 1e-14);
  EXPECT_THROW(TwoModeState(Eigen::MatrixXcd::Zero(3, 4)), DimensionMismatch);
}

TEST(Entropy, ProductAndBellStates) {
  const TwoModeState prod = TwoModeState::product(coherent_state(1.0, 25), coherent_state(Complex{0, 1.5}, 25));
  EXPECT_LT(entanglement_entropy(prod), 1e-10);
  Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(3, 3);
  bell(0, 1) = bell(1, 0) = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(entanglement_entropy(TwoModeState(bell)), std::numbers::ln2, 1e-10);
}

TEST(Entropy, MatchesEigenvalueOracle) {
  Eigen::MatrixXcd m(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m(i, j) = Complex{std::sin(1.0 + i * j), std::cos(i - 2.0 * j)};
  }
  m /= m.norm();
  EXPECT_NEAR(entanglement_entropy(TwoModeState(m)), oracle::entropy(m), 1e-12);
}

TEST(Husimi, CoherentPeakAndTail) {
  const ModeState psi = coherent_state(1.0, 30);
  EXPECT_NEAR(husimi_q(psi, 1.0), 1.0 / std::numbers::pi, 1e-10);
  EXPECT_NEAR(husimi_q(psi, 0.0), std::exp(-1.0) / std::numbers::pi, 1e-10);
  const TwoModeState two = TwoModeState::product(psi, coherent_state(0.0, 30));
  EXPECT_NEAR(husimi_q(two, Mode::a, 1.0), 1.0 / std::numbers::pi, 1e-10);
  EXPECT_NEAR(husimi_q(two, Mode::b, 0.0), 1.0 / std::numbers::pi, 1e-10);
}

TEST(Husimi, CatSymmetry) {
  const ModeState cat = kerr_apply(KerrParams{std::numbers::pi / 2, 0.0}, coherent_state(2.0, 40));
  EXPECT_NEAR(husimi_q(cat, Complex{0, 2}), husimi_q(cat, Complex{0, -2}), 1e-8);
}
