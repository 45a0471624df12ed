#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "imagunit/quaternion.hpp"
#include "imagunit/random_fields.hpp"

using namespace imagunit;

namespace {

Quaternion draw(Rng& rng) {
  return {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
}

void expect_near(const Quaternion& a, const Quaternion& b, double tol) { EXPECT_LE((a - b).norm(), tol) << a << " vs " << b; }

}  // namespace

TEST(Quaternion, HamiltonTable) {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  expect_near(i * i, Quaternion(-1.0), 0.0);
  expect_near(j * j, Quaternion(-1.0), 0.0);
  expect_near(k * k, Quaternion(-1.0), 0.0);
  expect_near(i * j, k, 0.0);
  expect_near(j * i, -1.0 * k, 0.0);
  expect_near(j * k, i, 0.0);
  expect_near(k * i, j, 0.0);
}

TEST(Quaternion, SymplecticProductRule) {
  Rng rng = make_rng(1, "symplectic");
  for (int s = 0; s < 200; ++s) {
    const Quaternion p = draw(rng), q = draw(rng);
    const Complex a = p.a(), b = p.b(), c = q.a(), d = q.b();
    expect_near(p * q, Quaternion::from_symplectic(a * c - b * std::conj(d), a * d + b * std::conj(c)), 1e-15);
  }
}

TEST(Quaternion, JConjugatesComplexScalars) {
  const Complex z(0.3, -1.7);
  expect_near(Quaternion::j() * Quaternion(z), Quaternion(std::conj(z)) * Quaternion::j(), 1e-16);
}

TEST(Quaternion, ConjugateAndInverse) {
  Rng rng = make_rng(2, "inverse");
  for (int s = 0; s < 100; ++s) {
    const Quaternion q = draw(rng);
    expect_near(q * quat_inverse(q), Quaternion(1.0), 1e-14);
    EXPECT_NEAR((q * quat_conj(q)).w(), q.norm2(), 1e-15);
  }
}

TEST(Eta, SquaresToMinusOne) {
  Rng rng = make_rng(3, "eta");
  for (int s = 0; s < 1000; ++s) {
    const Quaternion eta = make_eta(uniform(rng, -10, 10));
    expect_near(eta * eta, Quaternion(-1.0), 1e-15);
    EXPECT_NEAR(eta.norm(), 1.0, 1e-15);
    EXPECT_EQ(eta.w(), 0.0);
  }
}

TEST(Eta, ComplexCandidateFails) {
  const Complex e = complex_eta(std::numbers::pi / 4);
  EXPECT_NEAR(std::abs(e * e + 1.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(e), 1.0, 1e-15);
  const Complex z = complex_eta(0.0);
  EXPECT_NEAR(std::abs(z * z + 1.0), 0.0, 1e-15);
}

TEST(Eta, RejectsNonFiniteAngle) {
  EXPECT_THROW(make_eta(std::nan("")), DomainError);
  EXPECT_THROW(make_lambda(0.1, INFINITY, 0.0), DomainError);
}

TEST(Lambda, UnitNormAndAngleRoundTrip) {
  Rng rng = make_rng(4, "lambda");
  for (int s = 0; s < 200; ++s) {
    const Quaternion l = make_lambda(uniform(rng, 0.05, 1.5), uniform(rng, -3, 3), uniform(rng, -3, 3));
    EXPECT_NEAR(l.norm(), 1.0, 1e-15);
    const LambdaAngles a = lambda_angles(l);
    expect_near(make_lambda(a.theta, a.gamma, a.omega), l, 1e-14);
  }
}
