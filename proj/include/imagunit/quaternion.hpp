#pragma once

// Quaternion algebra with the Hamilton convention i·j = k.
//
// Every quaternion also has a symplectic view q = a + b·j with complex
// a = w + x·i and b = y + z·i. The product is evaluated in that view:
//
//   (a + b j)(c + d j) = (a c − b d̄) + (a d + b c̄) j
//
// which follows from j·c = c̄·j and j² = −1.

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include "imagunit/errors.hpp"

namespace imagunit {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}
  // NOLINTNEXTLINE(google-explicit-constructor): reals and complexes embed in ℍ
  constexpr Quaternion(double w) : w_(w) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  constexpr Quaternion(Complex a) : w_(a.real()), x_(a.imag()) {}

  /// q = a + b·j
  static constexpr Quaternion from_symplectic(Complex a, Complex b) {
    return {a.real(), a.imag(), b.real(), b.imag()};
  }

  constexpr double w() const { return w_; }
  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }

  /// Complex part a of q = a + b·j.
  constexpr Complex a() const { return {w_, x_}; }
  /// j-coefficient b of q = a + b·j.
  constexpr Complex b() const { return {y_, z_}; }

  constexpr double real() const { return w_; }
  constexpr Quaternion imag() const { return {0.0, x_, y_, z_}; }

  constexpr double norm2() const { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }
  double norm() const { return std::sqrt(norm2()); }

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  double w_ = 0.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

constexpr Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  return {p.w() + q.w(), p.x() + q.x(), p.y() + q.y(), p.z() + q.z()};
}
constexpr Quaternion operator-(const Quaternion& p, const Quaternion& q) {
  return {p.w() - q.w(), p.x() - q.x(), p.y() - q.y(), p.z() - q.z()};
}
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w(), -q.x(), -q.y(), -q.z()}; }
constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.w(), s * q.x(), s * q.y(), s * q.z()};
}
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) {
  return {q.w() / s, q.x() / s, q.y() / s, q.z() / s};
}

/// Hamilton product, non-commutative.
constexpr Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
  const Complex a = p.a();
  const Complex b = p.b();
  const Complex c = q.a();
  const Complex d = q.b();
  return Quaternion::from_symplectic(a * c - b * std::conj(d), a * d + b * std::conj(c));
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }

constexpr Quaternion quat_conj(const Quaternion& q) { return {q.w(), -q.x(), -q.y(), -q.z()}; }

/// q⁻¹ = q̄ / |q|²
inline Quaternion quat_inverse(const Quaternion& q) { return quat_conj(q) / q.norm2(); }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ')';
}

namespace detail {
inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}
}  // namespace detail

/// Quaternionic imaginary unit η = e^{iΞ}·j = cosΞ·j + sinΞ·k.
inline Quaternion make_eta(double xi) {
  detail::require_finite(xi, "make_eta: Xi");
  return Quaternion::from_symplectic(0.0, std::polar(1.0, xi));
}

/// Λ = cosΘ·e^{iΓ} + sinΘ·e^{iΩ}·j, a unit quaternion for every real triple.
inline Quaternion make_lambda(double theta, double gamma, double omega) {
  detail::require_finite(theta, "make_lambda: Theta");
  detail::require_finite(gamma, "make_lambda: Gamma");
  detail::require_finite(omega, "make_lambda: Omega");
  return Quaternion::from_symplectic(std::cos(theta) * std::polar(1.0, gamma),
                                     std::sin(theta) * std::polar(1.0, omega));
}

/// The complex candidate e^{iθ}·i. Unimodular, but its square is −e^{2iθ}.
inline Complex complex_eta(double theta) { return std::polar(1.0, theta) * kI; }

struct LambdaAngles {
  double theta;
  double gamma;
  double omega;
};

/// Inverse of make_lambda on unit quaternions, branch Θ ∈ [0, π/2].
/// Ω is pinned to 0 when Θ = 0 and Γ to 0 when Θ = π/2.
inline LambdaAngles lambda_angles(const Quaternion& q) {
  const Complex a = q.a();
  const Complex b = q.b();
  const double ra = std::abs(a);
  const double rb = std::abs(b);
  LambdaAngles out{std::atan2(rb, ra), 0.0, 0.0};
  if (ra > 0.0) out.gamma = std::arg(a);
  if (rb > 0.0) out.omega = std::arg(b);
  return out;
}

}  // namespace imagunit
