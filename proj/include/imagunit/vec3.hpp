#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace imagunit {

/// Spatial position or gradient. The grids are one-dimensional (along x),
/// but angle schedules live in three dimensions so orthogonal gradients can
/// be represented.
template <class T>
struct Vec3T {
  std::array<T, 3> c{};

  constexpr T& operator[](std::size_t i) { return c[i]; }
  constexpr const T& operator[](std::size_t i) const { return c[i]; }

  friend constexpr Vec3T operator+(const Vec3T& a, const Vec3T& b) {
    return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
  }
  friend constexpr Vec3T operator-(const Vec3T& a, const Vec3T& b) {
    return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
  }
  template <class S>
  friend constexpr Vec3T operator*(const S& s, const Vec3T& a) {
    return {{s * a[0], s * a[1], s * a[2]}};
  }
  friend constexpr bool operator==(const Vec3T&, const Vec3T&) = default;
};

using Vec3 = Vec3T<double>;
using CVec3 = Vec3T<std::complex<double>>;

constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
constexpr double norm2(const Vec3& a) { return dot(a, a); }

}  // namespace imagunit
