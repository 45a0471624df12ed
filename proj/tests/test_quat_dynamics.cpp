#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "imagunit/eigenstates.hpp"
#include "imagunit/quat_dynamics.hpp"
#include "imagunit/random_fields.hpp"

using namespace imagunit;
constexpr double kPi = std::numbers::pi;

namespace {

struct Sample {
  Grid1D g = Grid1D::periodic(64, 2 * kPi);
  Rng rng = make_rng(11, "quat-dynamics");
  QuatField psi = random_quat_field(g, rng, 3, 1.0, 0.5);
  QuatPotential pot{random_real_field(g, rng, 2, 0.5), random_complex_field(g, rng, 2, 0.5),
                    random_complex_field(g, rng, 2), random_complex_field(g, rng, 2)};
  RealField xi = random_real_field(g, rng, 2, 1.0, 1.0);
  QuatField eta = eta_field(xi);
};

}  // namespace

TEST(QuatDynamics, ReducesToComplexHamiltonian) {
  const Grid1D g = Grid1D::periodic(32, 2 * kPi);
  Rng rng = make_rng(1, "reduce");
  const ComplexField psi = random_complex_field(g, rng);
  const ComplexField V = random_complex_field(g, rng);
  EXPECT_LE(max_abs_diff(apply_hamiltonian_q(to_quat(psi), QuatPotential::scalar(V), 1.0, 1.0),
                         to_quat(apply_hamiltonian_c(psi, V, 1.0, 1.0))),
            1e-12);
}

TEST(QuatDynamics, EtaMustBeUnit) {
  const Grid1D g = Grid1D::periodic(16, 1.0);
  const QuatField bad(g, Quaternion(0.0, 0.0, 2.0, 0.0));
  EXPECT_THROW(step_quaternionic(QuatField(g, Quaternion(1.0)), QuatPotential::zero(g), bad, 1e-4), PreconditionError);
}

TEST(QuatDynamics, ObservablesAreReal) {
  Sample s;
  EXPECT_LE(imag_ratio(density_quaternion(s.psi)), 1e-14);
  EXPECT_LE(imag_ratio(current_quaternion(s.psi, s.pot, s.eta, 1.0, 1.0)), 1e-14);
  EXPECT_LE(imag_ratio(source_B_quaternion(s.psi, s.pot, s.eta, 1.0)), 1e-14);
  EXPECT_LE(imag_ratio(source_G_quaternion(s.psi, s.pot, s.eta, grad(s.xi), 1.0, 1.0)), 1e-14);
  EXPECT_GT(imag_ratio(current_quaternion_printed_order(s.psi, s.pot, s.eta, 1.0, 1.0)), 1e-3);
}

TEST(QuatDynamics, SourceBVanishesForRealScalarPotential) {
  Sample s;
  const ComplexField V = map(s.pot.V, [](Complex v) { return Complex(v.real()); });
  EXPECT_LE(max_abs(source_B(s.psi, QuatPotential::scalar(V), s.eta)), 1e-14);
  EXPECT_GT(max_abs(source_B(s.psi, s.pot, s.eta)), 1e-3);
}

TEST(QuatDynamics, SourceGVanishesForConstantXi) {
  Sample s;
  const QuatField eta(s.g, make_eta(0.4));
  EXPECT_EQ(max_abs(source_G(s.psi, s.pot, eta, RealField(s.g, 0.0))), 0.0);
}

TEST(QuatDynamics, ContinuityClosesWithDerivedSign) {
  Sample s;
  const RealField xg = RealField::generate(s.g, [&](double) { return 0.0; });
  double prev = 0;
  Rng rng = make_rng(12, "budget-q");
  const QuatSeries psi = QuatSeries::random(s.g, rng, 3, 1.0, 0.5);
  const FourierSeries xi = FourierSeries::random(s.g, rng, 2, 1.0);
  const ComplexSeries W = ComplexSeries::random(s.g, rng, 2);
  for (std::size_t n : {64u, 128u}) {
    const Grid1D g = Grid1D::periodic(n, 2 * kPi);
    const QuatPotential pot{RealField(g, 0.0), ComplexField(g), ComplexField(g, Complex(0.3)), W.sample(g)};
    const RealField dxi = RealField::generate(g, [&](double x) { return xi.d1(x); });
    const QuatContinuityReport r = continuity_q(psi.sample(g), pot, eta_field(xi.sample(g)), dxi);
    EXPECT_GT(r.printed_residual, 10 * r.report.max_residual);
    if (prev > 0) {
      EXPECT_NEAR(prev / r.report.max_residual, 4.0, 0.5);
    }
    prev = r.report.max_residual;
  }
}

TEST(QuatDynamics, StationaryEvolutionReturnsAfterOnePeriod) {
  const Grid1D g = Grid1D::box(32, 1.0);
  const auto e = box_eigenstates(g, 1.0, 1.0, 1)[0];
  const double T = 2 * kPi / e.energy;
  const long n = static_cast<long>(std::ceil(T / (0.5 * stability_bound(g, 1.0, 1.0))));
  const double dt = T / n;
  const QuatField eta(g, make_eta(-1.0));
  const QuatField psi0 = right_mul(to_quat(e.state), stationary_lambda(-e.energy, 0.5, -0.5, 0.0));
  QuatField psi = psi0;
  for (long k = 0; k < n; ++k) psi = step_quaternionic(psi, QuatPotential::zero(g), eta, dt);
  EXPECT_LE(max_abs_diff(psi, psi0), 1e-9);
}

TEST(QuatDynamics, StepRejectsUnstableDt) {
  const Grid1D g = Grid1D::box(32, 1.0);
  EXPECT_THROW(step_quaternionic(QuatField(g), QuatPotential::zero(g), QuatField(g, Quaternion::j()),
                                 2 * stability_bound(g, 1.0, 1.0)),
               ConfigurationError);
}

TEST(QuatDynamics, EigenShiftSign) {
  EXPECT_DOUBLE_EQ(eigen_shift_energy(2.0, 5.0, 1.0, 1.0), -4.5);
  EXPECT_DOUBLE_EQ(eigen_shift_energy_printed(2.0, 5.0), 3.0);
}

TEST(QuatDynamics, CommutatorConverges) {
  Rng rng = make_rng(13, "commutator-q");
  const FourierSeries xi = FourierSeries::random(Grid1D::box(65, 1.0), rng, 3, 2.0);
  auto residual = [&](std::size_t n) {
    const Grid1D g = Grid1D::box(n, 1.0);
    const QuatField psi = to_quat(ComplexField::generate(g, [](double x) { return std::exp(-(x - 0.5) * (x - 0.5) / 0.0128); }));
    return commutator_residual_q(psi, eta_field(xi.sample(g)));
  };
  EXPECT_NEAR(residual(65) / residual(129), 4.0, 0.3);
}
