#pragma once

// Smooth random inputs: finite Fourier series with seeded coefficients and
// analytic derivatives. Periodic grids use whole periods of the domain; box
// grids use sine modes that vanish at both walls.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "imagunit/grid.hpp"

namespace imagunit {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-name stream derived from a master seed.
inline Rng make_rng(std::uint64_t seed, std::string_view name) { return Rng(splitmix64(seed ^ fnv1a(name))); }

/// Uniform draw in [lo, hi) from the top 53 bits. Avoids the
/// implementation-defined std::uniform_real_distribution.
inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class FourierSeries {
 public:
  /// `modes` random modes of amplitude ≤ `amplitude`, plus a constant
  /// offset in [−offset, offset] on periodic grids.
  static FourierSeries random(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0,
                              double offset = 0.0) {
    FourierSeries s;
    s.periodic_ = g.periodic();
    s.origin_ = g.origin();
    s.base_ = g.periodic() ? 2.0 * std::numbers::pi / g.length() : std::numbers::pi / g.length();
    s.constant_ = g.periodic() ? uniform(rng, -offset, offset) : 0.0;
    for (int m = 1; m <= modes; ++m) {
      const double decay = 1.0 / m;
      s.cos_.push_back(g.periodic() ? amplitude * decay * uniform(rng, -1.0, 1.0) : 0.0);
      s.sin_.push_back(amplitude * decay * uniform(rng, -1.0, 1.0));
    }
    return s;
  }

  double operator()(double x) const { return eval(x, 0); }
  double d1(double x) const { return eval(x, 1); }
  double d2(double x) const { return eval(x, 2); }

  RealField sample(const Grid1D& g) const {
    return RealField::generate(g, [this](double x) { return (*this)(x); });
  }

 private:
  double eval(double x, int order) const {
    double out = order == 0 ? constant_ : 0.0;
    for (std::size_t m = 0; m < sin_.size(); ++m) {
      const double k = base_ * static_cast<double>(m + 1);
      const double arg = k * (x - origin_);
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      switch (order) {
        case 0: out += cos_[m] * c + sin_[m] * s; break;
        case 1: out += k * (-cos_[m] * s + sin_[m] * c); break;
        default: out += -k * k * (cos_[m] * c + sin_[m] * s); break;
      }
    }
    return out;
  }

  bool periodic_ = true;
  double origin_ = 0.0;
  double base_ = 1.0;
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Complex series re + i·im with analytic derivatives.
struct ComplexSeries {
  FourierSeries re;
  FourierSeries im;

  static ComplexSeries random(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0,
                              double offset = 0.0) {
    FourierSeries a = FourierSeries::random(g, rng, modes, amplitude, offset);
    FourierSeries b = FourierSeries::random(g, rng, modes, amplitude, offset);
    return {std::move(a), std::move(b)};
  }
  Complex operator()(double x) const { return {re(x), im(x)}; }
  Complex d1(double x) const { return {re.d1(x), im.d1(x)}; }
  Complex d2(double x) const { return {re.d2(x), im.d2(x)}; }
  ComplexField sample(const Grid1D& g) const {
    return ComplexField::generate(g, [this](double x) { return (*this)(x); });
  }
};

/// Quaternion series a + b·j with complex series a and b.
struct QuatSeries {
  ComplexSeries a;
  ComplexSeries b;

  static QuatSeries random(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0, double offset = 0.0) {
    ComplexSeries p = ComplexSeries::random(g, rng, modes, amplitude, offset);
    ComplexSeries q = ComplexSeries::random(g, rng, modes, amplitude, offset);
    return {std::move(p), std::move(q)};
  }
  Quaternion operator()(double x) const { return Quaternion::from_symplectic(a(x), b(x)); }
  Quaternion d1(double x) const { return Quaternion::from_symplectic(a.d1(x), b.d1(x)); }
  Quaternion d2(double x) const { return Quaternion::from_symplectic(a.d2(x), b.d2(x)); }
  QuatField sample(const Grid1D& g) const {
    return QuatField::generate(g, [this](double x) { return (*this)(x); });
  }
};

inline RealField random_real_field(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0,
                                   double offset = 0.0) {
  return FourierSeries::random(g, rng, modes, amplitude, offset).sample(g);
}
inline ComplexField random_complex_field(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0,
                                         double offset = 0.0) {
  return ComplexSeries::random(g, rng, modes, amplitude, offset).sample(g);
}
inline QuatField random_quat_field(const Grid1D& g, Rng& rng, int modes = 3, double amplitude = 1.0,
                                   double offset = 0.0) {
  return QuatSeries::random(g, rng, modes, amplitude, offset).sample(g);
}

}  // namespace imagunit
