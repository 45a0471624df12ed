#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "imagunit/random_fields.hpp"
#include "imagunit/schedule.hpp"

using namespace imagunit;
constexpr double kPi = std::numbers::pi;

TEST(Schedule, ConstantPhasesDerivative) {
  const AngleSchedule s = make_schedule(ConstantPhases{1.3, 0.2, -0.7}, 0.9);
  EXPECT_LE(lambda_dot_identity(s, Vec3{}, 0.8, 1e-6), 1e-9);
  const ScheduleJet j = s.at(Vec3{}, 0.8);
  EXPECT_LE((lambda_dot(j) - (1.3 / 0.9) * (j.lambda() * j.eta())).norm(), 1e-14);
}

TEST(Schedule, ClosedFormMatchesDirectDerivative) {
  const AngleSchedule s{trig_angle(0.1, 0.7, 0.4, 1.1, Vec3{}, 0.3), trig_angle(-0.2, 0.5, 0.3, 0.9, Vec3{}, 1.0),
                        trig_angle(0.4, -0.6, 0.5, 1.7, Vec3{}, -0.5)};
  for (double t : {0.0, 0.5, 2.0}) {
    const ScheduleJet j = s.at(Vec3{}, t);
    EXPECT_LE((lambda_dot(j) - lambda_dot_closed_form(j)).norm(), 1e-14);
    EXPECT_LE(lambda_eta_conj(j).residual, 1e-14);
  }
}

TEST(Schedule, ConstantPhasesConjugationIsReal) {
  const EtaConjugation e = lambda_eta_conj(make_schedule(ConstantPhases{2.0, 0.3, 1.1}, 1.0), Vec3{}, 0.4);
  EXPECT_NEAR(e.value.w(), -2.0, 1e-14);
  EXPECT_LE(e.value.imag().norm(), 1e-14);
}

TEST(Schedule, FDrivenRemovesJComponent) {
  FDriven fam{1.0, [](const Vec3&, double t) { return 0.5 + 0.2 * std::cos(t); }, 0.1, 0.2};
  const auto path = integrate_fdriven(fam, Vec3{}, {0.0, 0.3, 0.6, 0.9}, 1.0);
  for (const auto& p : path) {
    const EtaConjugation e = lambda_eta_conj(fdriven_jet(fam, Vec3{}, p, 1.0));
    EXPECT_LE(e.j_component(), 1e-12);
  }
}

TEST(Schedule, SingularFGuard) {
  SingularF fam{1.0, 0.5, 0.0, 0.0};
  EXPECT_THROW(integrate_fdriven(fam, {0.1, kPi / 2 + 0.1}, 1.0), SingularityError);
  EXPECT_NO_THROW(integrate_fdriven(fam, {0.1, 1.4}, 1.0));
}

TEST(Schedule, IntegratorRejectsBadTimeGrid) {
  FDriven fam{1.0, [](const Vec3&, double) { return 1.0; }, 0.0, 0.0};
  EXPECT_THROW(integrate_fdriven(fam, Vec3{}, {0.5, 0.2}, 1.0), DomainError);
}

TEST(Schedule, StationaryLambdaPeriod) {
  const double E = 0.8, hbar = 1.1;
  const Quaternion a = stationary_lambda(E, 0.3, -0.4, 0.2, hbar);
  const Quaternion b = stationary_lambda(E, 0.3, -0.4, 0.2 + 2 * kPi * hbar / E, hbar);
  EXPECT_LE((a - b).norm(), 1e-14);
  EXPECT_LE((stationary_lambda(E, 0.3, -0.4, 0.0, hbar) - Quaternion(std::polar(1.0, 0.3))).norm(), 1e-16);
}

TEST(Schedule, SpaceLinearRequiresOrthogonalVectors) {
  EXPECT_THROW(SpaceLinear::make(1.0, Vec3{{1, 0, 0}}, Vec3{{1, 1, 0}}), PreconditionError);
  const SpaceLinear s = SpaceLinear::make(1.0, Vec3{{0, 1, 0}}, Vec3{{0, 0, 2}});
  const EigenReduction r = eigen_reduction_check(s, Vec3{{0.1, 0.2, 0.3}}, 0.5);
  EXPECT_NEAR(r.K, 5.0, 1e-12);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(Schedule, GradientAndLaplacianAgainstDifferences) {
  Rng rng = make_rng(5, "schedule-spatial");
  const AngleSchedule s{trig_angle(0.2, 0.3, 0.5, 0.7, Vec3{{0.4, -0.2, 0.9}}, 0.1),
                        linear_angle(0.1, 0.2, Vec3{{0.3, 0.1, 0}}), trig_angle(0, 0, 0.6, 1, Vec3{{-0.5, 0.2, 0.1}}, 0)};
  const Vec3 x{{uniform(rng), uniform(rng), uniform(rng)}};
  const ScheduleJet j = s.at(x, 0.4);
  const auto g = lambda_gradient(j).assemble(j);
  const double h = 1e-5;
  Quaternion lap_fd;
  for (std::size_t d = 0; d < 3; ++d) {
    Vec3 e{};
    e[d] = h;
    EXPECT_LE(((s.lambda(x + e, 0.4) - s.lambda(x - e, 0.4)) / (2 * h) - g[d]).norm(), 1e-9);
    e[d] = 1e-3;
    lap_fd = lap_fd + (s.lambda(x + e, 0.4) - 2.0 * s.lambda(x, 0.4) + s.lambda(x - e, 0.4)) / 1e-6;
  }
  EXPECT_LE((lap_fd - lambda_laplacian(j).assemble(j)).norm(), 1e-5);
}
