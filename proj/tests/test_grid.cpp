#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "imagunit/csv.hpp"
#include "imagunit/eigenstates.hpp"
#include "imagunit/grid.hpp"
#include "imagunit/rk4.hpp"

using namespace imagunit;
constexpr double kPi = std::numbers::pi;

TEST(Grid, Geometry) {
  const Grid1D p = Grid1D::periodic(64, 2 * kPi);
  EXPECT_DOUBLE_EQ(p.dx(), 2 * kPi / 64);
  EXPECT_DOUBLE_EQ(p.length(), 2 * kPi);
  const Grid1D b = Grid1D::box(65, 1.0);
  EXPECT_DOUBLE_EQ(b.dx(), 1.0 / 64);
  EXPECT_DOUBLE_EQ(b.coordinate(64), 1.0);
  EXPECT_THROW(Grid1D::box(4, 1.0), PreconditionError);
}

TEST(Grid, MismatchedGridsRejected) {
  const RealField a(Grid1D::periodic(16, 1.0), 1.0);
  const RealField b(Grid1D::periodic(32, 1.0), 1.0);
  EXPECT_THROW(a + b, PreconditionError);
}

TEST(Grid, PeriodicStencilsSecondOrder) {
  double prev_g = 0, prev_l = 0;
  for (std::size_t n : {32u, 64u, 128u}) {
    const Grid1D g = Grid1D::periodic(n, 2 * kPi);
    const RealField f = RealField::generate(g, [](double x) { return std::sin(2 * x); });
    const double eg = max_abs_diff(grad(f), RealField::generate(g, [](double x) { return 2 * std::cos(2 * x); }));
    const double el = max_abs_diff(laplace(f), RealField::generate(g, [](double x) { return -4 * std::sin(2 * x); }));
    if (prev_g > 0) {
      EXPECT_NEAR(prev_g / eg, 4.0, 0.1);
      EXPECT_NEAR(prev_l / el, 4.0, 0.1);
    }
    prev_g = eg;
    prev_l = el;
  }
}

TEST(Grid, DirichletWallsUseStoredValues) {
  const Grid1D g = Grid1D::box(9, 1.0);
  const RealField f = RealField::generate(g, [](double x) { return x > 0.0 && x < 1.0 ? 1.0 : 0.0; });
  const RealField l = laplace(f);
  EXPECT_EQ(l[0], 0.0);
  EXPECT_DOUBLE_EQ(l[1], -1.0 / (g.dx() * g.dx()));
  EXPECT_DOUBLE_EQ(l[4], 0.0);
}

TEST(Grid, IntegrateIsExactForTrigOnPeriodicGrid) {
  const Grid1D g = Grid1D::periodic(50, 2 * kPi);
  const RealField f = RealField::generate(g, [](double x) { return 1.0 + std::cos(3 * x); });
  EXPECT_NEAR(integrate(f), 2 * kPi, 1e-13);
}

TEST(Grid, SymplecticSplitCompose) {
  const Grid1D g = Grid1D::periodic(16, 1.0);
  const ComplexField a = ComplexField::generate(g, [](double x) { return Complex(x, 1 - x); });
  const ComplexField b = ComplexField::generate(g, [](double x) { return Complex(2 * x, -x); });
  const auto [a2, b2] = split(compose(a, b));
  EXPECT_EQ(max_abs_diff(a, a2), 0.0);
  EXPECT_EQ(max_abs_diff(b, b2), 0.0);
}

TEST(Eigenstates, FreeBoxMatchesDiscreteSpectrum) {
  const Grid1D g = Grid1D::box(65, 1.0);
  const auto st = box_eigenstates(g, 1.0, 1.0, 3);
  const double dx = g.dx();
  for (int n = 1; n <= 3; ++n) {
    const double discrete = (2.0 - 2.0 * std::cos(n * kPi * dx)) / (2.0 * dx * dx);
    EXPECT_NEAR(st[n - 1].energy, discrete, 1e-9);
    EXPECT_NEAR(integrate(abs2(st[n - 1].state)), 1.0, 1e-12);
    EXPECT_EQ(st[n - 1].state[0], Complex(0.0));
  }
}

TEST(Eigenstates, ResidualOfDiscreteHamiltonian) {
  const Grid1D g = Grid1D::box(101, 2.0);
  const RealField V = RealField::generate(g, [](double x) { return 3.0 * (x - 1.0) * (x - 1.0); });
  for (const auto& e : box_eigenstates(V, 0.7, 1.3, 4)) {
    const ComplexField h = map_indexed(e.state, [&](std::size_t i, Complex v) { return V[i] * v; });
    const ComplexField H = (-0.7 * 0.7 / 2.6) * laplace(e.state) + h;
    EXPECT_LE(max_abs(H - e.energy * e.state, 1, g.size() - 1), 1e-9);
  }
}

TEST(Eigenstates, RejectsPeriodicGrid) {
  EXPECT_THROW(box_eigenstates(RealField(Grid1D::periodic(16, 1.0), 0.0), 1.0, 1.0, 1), PreconditionError);
}

TEST(Rk4, ExponentialIsFourthOrder) {
  auto err = [](int n) {
    double y = 1.0;
    const double dt = 1.0 / n;
    for (int k = 0; k < n; ++k) y = rk4_step(y, k * dt, dt, [](double, double v) { return -v; });
    return std::abs(y - std::exp(-1.0));
  };
  EXPECT_NEAR(std::log2(err(20) / err(40)), 4.0, 0.1);
}

TEST(Csv, SeventeenDigitsAndHeader) {
  EXPECT_EQ(csv::number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv::number(std::nan("")), "nan");
  std::ostringstream os;
  csv::write_field(os, RealField(Grid1D::periodic(8, 1.0), 2.0));
  EXPECT_EQ(os.str().substr(0, 14), "x,value\n0,2\n0.");
}
