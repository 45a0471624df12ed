#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "imagunit/deformed.hpp"
#include "imagunit/eigenstates.hpp"
#include "imagunit/random_fields.hpp"

using namespace imagunit;
constexpr double kPi = std::numbers::pi;

TEST(Deformed, ThetaZeroIsStandardEvolution) {
  const Grid1D g = Grid1D::periodic(32, 2 * kPi);
  Rng rng = make_rng(1, "theta0");
  const ComplexField psi = random_complex_field(g, rng);
  const ComplexField V = map(random_real_field(g, rng), [](double v) { return Complex(v); });
  const DeformedSetup s{ThetaField::constant(0.0), V, 1.0, 1.0};
  const ComplexField expected = map(apply_hamiltonian_c(psi, V, 1.0, 1.0), [](Complex v) { return -kI * v; });
  EXPECT_LE(max_abs_diff(deformed_rhs(psi, s, 0.0), expected), 1e-13);
}

TEST(Deformed, StabilityBoundEnforced) {
  const Grid1D g = Grid1D::box(33, 1.0);
  const DeformedSetup s{ThetaField::constant(0.3), ComplexField(g), 1.0, 1.0};
  const ComplexField psi(g, Complex(1.0));
  EXPECT_THROW(step_deformed(psi, s, 0.0, 1.01 * stability_bound(g, 1.0, 1.0)), ConfigurationError);
  EXPECT_NO_THROW(step_deformed(psi, s, 0.0, stability_bound(g, 1.0, 1.0)));
}

TEST(Deformed, DecayRateOfEigenstate) {
  const Grid1D g = Grid1D::box(64, 1.0);
  const auto e = box_eigenstates(g, 1.0, 1.0, 1)[0];
  for (double theta : {0.1, 0.3, 1.0, 4.0}) {
    const DeformedSetup s{ThetaField::constant(theta), ComplexField(g), 1.0, 1.0};
    EXPECT_NEAR(ln_norm_rate(e.state, deformed_rhs(e.state, s, 0.0)), amplitude_decay(e.energy, theta), 1e-9);
  }
}

TEST(Deformed, AnsatzMagnitude) {
  const Grid1D g = Grid1D::periodic(16, 1.0);
  const ComplexField phi(g, Complex(1.0));
  EXPECT_NEAR(std::abs(ansatz_wavefunction(phi, 2.0, kPi / 6, 0.5)[3]), std::exp(-0.5), 1e-15);
}

TEST(Deformed, GaugeParityForArbitraryPsiT) {
  const Grid1D g = Grid1D::periodic(64, 2 * kPi / 0.3);
  Rng rng = make_rng(2, "gauge");
  const DeformedSetup s{ThetaField::linear(0.1, 0.7, 0.3), random_complex_field(g, rng), 1.0, 1.0};
  const GaugeReport r = gauge_transform(random_complex_field(g, rng), random_complex_field(g, rng), s, 0.2);
  EXPECT_LE(r.parity, 1e-9);
  EXPECT_GT(r.max_residual_psi, 1e-3);
}

TEST(Deformed, ContinuityBudgetsConverge) {
  Rng rng = make_rng(3, "budget");
  const Grid1D g0 = Grid1D::periodic(64, 2 * kPi);
  const ComplexSeries psi = ComplexSeries::random(g0, rng, 3, 1.0, 0.5);
  const ComplexSeries V = ComplexSeries::random(g0, rng, 2, 1.0, 0.5);
  const ThetaField th = ThetaField::sine(0.3, 0.4, 1.0, 0.2, 0.5);
  double prev_d = 0, prev_a = 0;
  for (std::size_t n : {64u, 128u}) {
    const Grid1D g = Grid1D::periodic(n, 2 * kPi);
    const DeformedSetup s{th, V.sample(g), 1.0, 1.0};
    const double d = continuity_deformed(psi.sample(g), s, 0.2).max_residual;
    const double a = continuity_ansatz(psi.sample(g), s, 0.2).max_residual;
    if (prev_d > 0) {
      EXPECT_NEAR(prev_d / d, 4.0, 0.5);
      EXPECT_NEAR(prev_a / a, 4.0, 0.5);
    }
    prev_d = d;
    prev_a = a;
  }
}

TEST(Deformed, BetaForRealPotential) {
  const Grid1D g = Grid1D::periodic(32, 2 * kPi);
  Rng rng = make_rng(4, "beta");
  const RealField V = random_real_field(g, rng);
  const DeformedSetup s{ThetaField::constant(0.8), map(V, [](double v) { return Complex(v); }), 1.0, 1.0};
  const ContinuityReport r = continuity_ansatz(random_complex_field(g, rng), s, 0.0);
  EXPECT_LE(max_abs_diff(r.term("beta").values, beta_real_potential(r.term("rho").values, V, RealField(g, 0.8), 1.0)),
            1e-13);
}

TEST(Deformed, CommutatorPrintedVersusDerived) {
  const Grid1D g = Grid1D::box(129, 1.0);
  const ComplexField psi = ComplexField::generate(g, [](double x) { return std::exp(-(x - 0.5) * (x - 0.5) / 0.01); });
  const CommutatorReport r = commutator_residual_c(psi, 0.7, 1.0);
  EXPECT_LE(r.derived_residual, 1e-2);
  EXPECT_NEAR(r.mismatch, std::abs(std::polar(1.0, -0.7) - kI * std::polar(1.0, 0.7)), 1e-2);
}

TEST(Deformed, MomentumAtThetaZeroIsNotStandardMomentum) {
  const Grid1D g = Grid1D::periodic(256, 2 * kPi);
  const ComplexField psi = ComplexField::generate(g, [](double x) { return std::polar(1.0, x); });
  const MomentumReport r = generalized_momentum_c(psi, RealField(g, 0.0), 1.0);
  // -hbar d/dx e^{ix} = -i e^{ix}, while p = -i hbar d/dx gives e^{ix}
  EXPECT_NEAR(std::abs(r.value[5] - (-kI) * psi[5]), 0.0, 1e-3);
}

TEST(Deformed, LogThetaCoefficients) {
  const LogTheta f = LogTheta::make(1.0, 2.0, 0.0, 0.5);
  EXPECT_NEAR(std::abs(f.log_coefficient()), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(f.printed_log_coefficient(1.0), std::sqrt(0.75), 1e-14);
  EXPECT_THROW(LogTheta::make(2.0, 1.0, 0.0, 0.5), DomainError);
}

TEST(Deformed, ChiConstantThetaModulus) {
  EXPECT_NEAR(std::abs(build_chi(ConstTheta{1.5, 0.4}, 2.0)), std::exp(-std::sin(0.4) * 3.0), 1e-14);
}
