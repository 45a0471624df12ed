#pragma once

// Uniform 1-D grid and the fields that live on it.
//
// Periodic grids hold n points x_i = origin + i·dx with period n·dx.
// Dirichlet grids hold n points whose first and last entries are the walls;
// the difference operators return 0 at the walls and use the stored wall
// values as the stencil neighbours of the first and last interior points.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "imagunit/errors.hpp"
#include "imagunit/quaternion.hpp"

namespace imagunit {

enum class Boundary { Periodic, Dirichlet };

inline const char* to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "dirichlet"; }

class Grid1D {
 public:
  Grid1D(std::size_t n, double dx, double origin = 0.0, Boundary boundary = Boundary::Periodic)
      : n_(n), dx_(dx), origin_(origin), boundary_(boundary) {
    if (n < 8) throw PreconditionError("Grid1D: need at least 8 points, got " + std::to_string(n));
    if (!(dx > 0.0) || !std::isfinite(dx)) throw PreconditionError("Grid1D: dx must be positive and finite");
    if (!std::isfinite(origin)) throw PreconditionError("Grid1D: origin must be finite");
  }

  /// Periodic grid covering [origin, origin + length).
  static Grid1D periodic(std::size_t n, double length, double origin = 0.0) {
    return {n, length / static_cast<double>(n), origin, Boundary::Periodic};
  }
  /// Dirichlet box with walls at origin and origin + length.
  static Grid1D box(std::size_t n, double length, double origin = 0.0) {
    return {n, length / static_cast<double>(n - 1), origin, Boundary::Dirichlet};
  }

  std::size_t size() const { return n_; }
  double dx() const { return dx_; }
  double origin() const { return origin_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::Periodic; }

  double coordinate(std::size_t i) const { return origin_ + static_cast<double>(i) * dx_; }
  /// Domain length: the period for periodic grids, wall-to-wall for boxes.
  double length() const {
    return periodic() ? static_cast<double>(n_) * dx_ : static_cast<double>(n_ - 1) * dx_;
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_;
  double dx_;
  double origin_;
  Boundary boundary_;
};

template <class T>
class Field {
 public:
  using value_type = T;

  Field(Grid1D grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw PreconditionError("Field: sample count " + std::to_string(values_.size()) +
                              " does not match grid size " + std::to_string(grid_.size()));
  }
  explicit Field(Grid1D grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}

  /// Samples f(x_i).
  template <class Fn>
  static Field generate(const Grid1D& grid, Fn&& f) {
    std::vector<T> v;
    v.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v.push_back(static_cast<T>(f(grid.coordinate(i))));
    return Field(grid, std::move(v));
  }

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }
  std::span<const T> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  Grid1D grid_;
  std::vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;
using QuatField = Field<Quaternion>;

inline void require_same_grid(const Grid1D& a, const Grid1D& b, const char* where) {
  if (!(a == b)) throw PreconditionError(std::string(where) + ": fields live on different grids");
}

/// Pointwise map.
template <class T, class Fn>
auto map(const Field<T>& f, Fn&& fn) {
  using R = std::decay_t<decltype(fn(f[0]))>;
  std::vector<R> out;
  out.reserve(f.size());
  for (const auto& v : f) out.push_back(fn(v));
  return Field<R>(f.grid(), std::move(out));
}

/// Pointwise map with the grid index.
template <class T, class Fn>
auto map_indexed(const Field<T>& f, Fn&& fn) {
  using R = std::decay_t<decltype(fn(std::size_t{0}, f[0]))>;
  std::vector<R> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(fn(i, f[i]));
  return Field<R>(f.grid(), std::move(out));
}

template <class A, class B, class Fn>
auto zip(const Field<A>& a, const Field<B>& b, Fn&& fn) {
  require_same_grid(a.grid(), b.grid(), "zip");
  using R = std::decay_t<decltype(fn(a[0], b[0]))>;
  std::vector<R> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(fn(a[i], b[i]));
  return Field<R>(a.grid(), std::move(out));
}

template <class T>
Field<T> operator+(const Field<T>& a, const Field<T>& b) {
  return zip(a, b, [](const T& u, const T& v) -> T { return u + v; });
}
template <class T>
Field<T> operator-(const Field<T>& a, const Field<T>& b) {
  return zip(a, b, [](const T& u, const T& v) -> T { return u - v; });
}
template <class T>
Field<T> operator*(double s, const Field<T>& a) {
  return map(a, [s](const T& u) -> T { return s * u; });
}

/// Embeds a complex field as the a-part of a quaternion field.
inline QuatField to_quat(const ComplexField& f) {
  return map(f, [](const Complex& c) { return Quaternion(c); });
}

/// Symplectic view of a quaternion field: Ψ = Ψ₀ + Ψ₁·j.
inline std::pair<ComplexField, ComplexField> split(const QuatField& f) {
  return {map(f, [](const Quaternion& q) { return q.a(); }),
          map(f, [](const Quaternion& q) { return q.b(); })};
}

inline QuatField compose(const ComplexField& a, const ComplexField& b) {
  return zip(a, b, [](Complex u, Complex v) { return Quaternion::from_symplectic(u, v); });
}

/// Central difference (f[i+1] − f[i−1]) / 2dx.
template <class T>
Field<T> grad(const Field<T>& f) {
  const Grid1D& g = f.grid();
  const std::size_t n = g.size();
  const double inv = 1.0 / (2.0 * g.dx());
  std::vector<T> out(n, T{});
  if (g.periodic()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = inv * (f[(i + 1) % n] - f[(i + n - 1) % n]);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = inv * (f[i + 1] - f[i - 1]);
  }
  return Field<T>(g, std::move(out));
}

/// Three-point Laplacian (f[i+1] − 2f[i] + f[i−1]) / dx².
template <class T>
Field<T> laplace(const Field<T>& f) {
  const Grid1D& g = f.grid();
  const std::size_t n = g.size();
  const double inv = 1.0 / (g.dx() * g.dx());
  std::vector<T> out(n, T{});
  if (g.periodic()) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = inv * (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = inv * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
  }
  return Field<T>(g, std::move(out));
}

namespace detail {
// Fixed-shape pairwise summation; the tree depends only on the length.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}
}  // namespace detail

/// ∫ f dx: plain Riemann sum on periodic grids, trapezoid on boxes.
inline double integrate(const RealField& f) {
  const Grid1D& g = f.grid();
  double s = detail::pairwise_sum(f.values());
  if (!g.periodic()) s -= 0.5 * (f[0] + f[f.size() - 1]);
  return s * g.dx();
}

inline RealField abs2(const ComplexField& f) {
  return map(f, [](Complex c) { return std::norm(c); });
}
inline RealField abs2(const QuatField& f) {
  return map(f, [](const Quaternion& q) { return q.norm2(); });
}

/// L² norm sqrt(∫|f|² dx).
template <class T>
double l2_norm(const Field<T>& f) {
  return std::sqrt(integrate(abs2(f)));
}

inline double modulus(double v) { return std::abs(v); }
inline double modulus(Complex v) { return std::abs(v); }
inline double modulus(const Quaternion& q) { return q.norm(); }

/// max_i |f_i|
template <class T>
double max_abs(const Field<T>& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, modulus(v));
  return m;
}

/// max_i |f_i| restricted to i ∈ [first, last).
template <class T>
double max_abs(const Field<T>& f, std::size_t first, std::size_t last) {
  double m = 0.0;
  for (std::size_t i = first; i < last; ++i) m = std::max(m, modulus(f[i]));
  return m;
}

template <class T>
double max_abs_diff(const Field<T>& a, const Field<T>& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, modulus(a[i] - b[i]));
  return m;
}

inline RealField coordinates(const Grid1D& g) {
  return RealField::generate(g, [](double x) { return x; });
}

}  // namespace imagunit
