#pragma once

// Angle schedules (Θ, Γ, Ω) for the unit quaternion
//
//   Λ = cosΘ·e^{iΓ} + sinΘ·e^{iΩ}·j,      η = e^{iΞ}·j,  Ξ = Ω − Γ,
//
// together with the derivative identities Λ satisfies and the solution
// families for its time evolution. Schedules always carry analytic
// derivatives; finite differences only ever appear on the checking side.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "imagunit/errors.hpp"
#include "imagunit/quaternion.hpp"
#include "imagunit/rk4.hpp"
#include "imagunit/vec3.hpp"

namespace imagunit {

/// Value of one angle at (x, t) with its analytic ∂/∂t, ∇ and ∇².
struct AngleJet {
  double value = 0.0;
  double dt = 0.0;
  Vec3 grad{};
  double lap = 0.0;
};

using AngleFunction = std::function<AngleJet(const Vec3& x, double t)>;

/// All three angles at one point.
struct ScheduleJet {
  AngleJet theta;
  AngleJet gamma;
  AngleJet omega;

  double xi() const { return omega.value - gamma.value; }
  Quaternion lambda() const { return make_lambda(theta.value, gamma.value, omega.value); }
  Quaternion eta() const { return make_eta(xi()); }
};

struct AngleSchedule {
  AngleFunction theta;
  AngleFunction gamma;
  AngleFunction omega;

  ScheduleJet at(const Vec3& x, double t) const { return {theta(x, t), gamma(x, t), omega(x, t)}; }
  Quaternion lambda(const Vec3& x, double t) const {
    return make_lambda(theta(x, t).value, gamma(x, t).value, omega(x, t).value);
  }
  Quaternion eta(const Vec3& x, double t) const { return make_eta(omega(x, t).value - gamma(x, t).value); }
};

// ---------------------------------------------------------------------------
// Building blocks for angle functions

inline AngleFunction constant_angle(double value) {
  return [value](const Vec3&, double) { return AngleJet{value, 0.0, {}, 0.0}; };
}

/// value0 + rate·t + k·x
inline AngleFunction linear_angle(double value0, double rate, Vec3 k = {}) {
  return [=](const Vec3& x, double t) { return AngleJet{value0 + rate * t + dot(k, x), rate, k, 0.0}; };
}

/// offset + rate·t + amplitude·sin(frequency·t + k·x + phase)
inline AngleFunction trig_angle(double offset, double rate, double amplitude, double frequency, Vec3 k,
                                double phase) {
  return [=](const Vec3& x, double t) {
    const double arg = frequency * t + dot(k, x) + phase;
    const double s = std::sin(arg);
    const double c = std::cos(arg);
    return AngleJet{offset + rate * t + amplitude * s, rate + amplitude * frequency * c, (amplitude * c) * k,
                    -amplitude * norm2(k) * s};
  };
}

// ---------------------------------------------------------------------------
// Solution families

/// Θ = Et/ħ with constant Γ₀, Ω₀.
struct ConstantPhases {
  double energy = 1.0;
  double gamma0 = 0.0;
  double omega0 = 0.0;
};

/// Θ = Et/ħ, Γ̇ = F·sin²Θ, Ω̇ = −F·cos²Θ from initial phases.
struct FDriven {
  double energy = 1.0;
  std::function<double(const Vec3& x, double t)> F;
  double gamma_init = 0.0;
  double omega_init = 0.0;
};

/// F = c·secΘ·cscΘ; the phases diverge wherever Θ is a multiple of π/2.
struct SingularF {
  double energy = 1.0;
  double c = 1.0;
  double gamma_init = 0.0;
  double omega_init = 0.0;
};

/// Θ = Et/ħ + k·x, Γ = Γ₀ + g·x, Ω = Ω₀ + g·x with k ⟂ g.
class SpaceLinear {
 public:
  static SpaceLinear make(double energy, Vec3 k, Vec3 g, double gamma0 = 0.0, double omega0 = 0.0) {
    const double scale = std::sqrt(norm2(k) * norm2(g));
    if (std::abs(dot(k, g)) > 1e-12 * std::max(scale, 1.0))
      throw PreconditionError("SpaceLinear: wave-vectors k and g must be orthogonal (k·g = " +
                              std::to_string(dot(k, g)) + ")");
    return SpaceLinear(energy, k, g, gamma0, omega0);
  }

  double energy() const { return energy_; }
  const Vec3& k() const { return k_; }
  const Vec3& g() const { return g_; }
  double gamma0() const { return gamma0_; }
  double omega0() const { return omega0_; }

 private:
  SpaceLinear(double e, Vec3 k, Vec3 g, double g0, double o0) : energy_(e), k_(k), g_(g), gamma0_(g0), omega0_(o0) {}
  double energy_;
  Vec3 k_;
  Vec3 g_;
  double gamma0_;
  double omega0_;
};

using ScheduleFamily = std::variant<ConstantPhases, FDriven, SingularF, SpaceLinear>;

inline AngleSchedule make_schedule(const ConstantPhases& f, double hbar) {
  return {linear_angle(0.0, f.energy / hbar), constant_angle(f.gamma0), constant_angle(f.omega0)};
}

inline AngleSchedule make_schedule(const SpaceLinear& f, double hbar) {
  return {linear_angle(0.0, f.energy() / hbar, f.k()), linear_angle(f.gamma0(), 0.0, f.g()),
          linear_angle(f.omega0(), 0.0, f.g())};
}

// ---------------------------------------------------------------------------
// Time derivative identities

/// ∂Λ/∂t by direct differentiation of the angles.
inline Quaternion lambda_dot(const ScheduleJet& s) {
  const double ct = std::cos(s.theta.value);
  const double st = std::sin(s.theta.value);
  const Complex eg = std::polar(1.0, s.gamma.value);
  const Complex eo = std::polar(1.0, s.omega.value);
  const Complex a = (-st * s.theta.dt + kI * (ct * s.gamma.dt)) * eg;
  const Complex b = (ct * s.theta.dt + kI * (st * s.omega.dt)) * eo;
  return Quaternion::from_symplectic(a, b);
}

/// Closed form Λ̇ = Θ̇Λη + i(Ω̇ sinΘ e^{iΓ} − Γ̇ cosΘ e^{iΩ} j)η.
inline Quaternion lambda_dot_closed_form(const ScheduleJet& s) {
  const Quaternion lam = s.lambda();
  const Quaternion eta = s.eta();
  const double ct = std::cos(s.theta.value);
  const double st = std::sin(s.theta.value);
  const Quaternion bracket = Quaternion::from_symplectic(kI * (s.omega.dt * st) * std::polar(1.0, s.gamma.value),
                                                         -kI * (s.gamma.dt * ct) * std::polar(1.0, s.omega.value));
  return s.theta.dt * (lam * eta) + bracket * eta;
}

/// Quaternion-norm difference between a central-difference dΛ/dt with step h
/// and the closed form. With time-independent Γ, Ω this is dΛ/dt = Θ̇Λη alone.
inline double lambda_dot_identity(const AngleSchedule& s, const Vec3& x, double t, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("lambda_dot_identity: step h must be positive");
  const Quaternion fd = (s.lambda(x, t + h) - s.lambda(x, t - h)) / (2.0 * h);
  return (fd - lambda_dot_closed_form(s.at(x, t))).norm();
}

struct EtaConjugation {
  Quaternion value;        // Λ̇·η·Λ̄ from the analytic derivatives
  Quaternion closed_form;  // −Θ̇ + i[(Γ̇−Ω̇)sc + (Γ̇c² + Ω̇s²)e^{i(Γ+Ω)} j]
  double residual;         // |value − closed_form|

  /// Coefficient of i in the complex part (real part of the bracket).
  double i_component() const { return value.x(); }
  /// Modulus of the j-coefficient.
  double j_component() const { return std::abs(value.b()); }
};

inline EtaConjugation lambda_eta_conj(const ScheduleJet& s) {
  const Quaternion value = lambda_dot(s) * s.eta() * quat_conj(s.lambda());
  const double ct = std::cos(s.theta.value);
  const double st = std::sin(s.theta.value);
  const double gd = s.gamma.dt;
  const double od = s.omega.dt;
  const Complex a = -s.theta.dt + kI * ((gd - od) * st * ct);
  const Complex b = kI * (gd * ct * ct + od * st * st) * std::polar(1.0, s.gamma.value + s.omega.value);
  const Quaternion closed = Quaternion::from_symplectic(a, b);
  return {value, closed, (value - closed).norm()};
}

inline EtaConjugation lambda_eta_conj(const AngleSchedule& s, const Vec3& x, double t) {
  return lambda_eta_conj(s.at(x, t));
}

// ---------------------------------------------------------------------------
// F-driven phase integration

struct PhasePoint {
  double t;
  double gamma;
  double omega;
};

inline constexpr double kSingularGuard = 1e-9;

namespace detail {

struct PhaseState {
  double gamma;
  double omega;
  friend PhaseState operator+(PhaseState a, PhaseState b) { return {a.gamma + b.gamma, a.omega + b.omega}; }
  friend PhaseState operator*(double s, PhaseState a) { return {s * a.gamma, s * a.omega}; }
};

// Throws when [theta_a, theta_b] comes within the guard band of a multiple of π/2.
inline void check_singular_interval(double theta_a, double theta_b) {
  constexpr double quarter = std::numbers::pi / 2.0;
  const double lo = std::min(theta_a, theta_b) - kSingularGuard;
  const double hi = std::max(theta_a, theta_b) + kSingularGuard;
  const double m = std::ceil(lo / quarter);
  if (m * quarter <= hi) {
    throw SingularityError("integrate_fdriven: Theta reaches the singular value " + std::to_string(m * quarter) +
                               " (F = c sec(Theta) csc(Theta) diverges)",
                           m * quarter);
  }
}

template <class Drive>
std::vector<PhasePoint> integrate_phases(double energy, double hbar, double gamma0, double omega0,
                                         const std::vector<double>& t_grid, int steps_per_period, Drive&& drive,
                                         bool singular) {
  if (t_grid.empty()) return {};
  if (steps_per_period <= 0) throw DomainError("integrate_fdriven: steps_per_period must be positive");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("integrate_fdriven: t_grid must be strictly increasing");

  const double rate = energy / hbar;
  auto theta = [rate](double t) { return rate * t; };
  auto rhs = [&](double t, PhaseState) {
    const double th = theta(t);
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double f = drive(t, s, c);
    return PhaseState{f * s * s, -f * c * c};
  };

  if (singular) check_singular_interval(theta(t_grid.front()), theta(t_grid.front()));

  std::vector<PhasePoint> out;
  out.reserve(t_grid.size());
  PhaseState y{gamma0, omega0};
  out.push_back({t_grid.front(), y.gamma, y.omega});
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double span = t_grid[i] - t_grid[i - 1];
    const double h_max = rate != 0.0 ? 2.0 * std::numbers::pi / std::abs(rate) / steps_per_period
                                     : span / steps_per_period;
    const auto steps = static_cast<long>(std::ceil(span / h_max));
    const double h = span / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      const double t = t_grid[i - 1] + static_cast<double>(k) * h;
      if (singular) check_singular_interval(theta(t), theta(t + h));
      y = rk4_step(y, t, h, rhs);
    }
    out.push_back({t_grid[i], y.gamma, y.omega});
  }
  return out;
}

}  // namespace detail

/// Fourth-order fixed-step solution of Γ̇ = F sin²Θ, Ω̇ = −F cos²Θ with
/// Θ = Et/ħ at a fixed position x. The default step resolves one period
/// 2πħ/E with 2000 steps.
inline std::vector<PhasePoint> integrate_fdriven(const FDriven& fam, const Vec3& x, const std::vector<double>& t_grid,
                                                 double hbar, int steps_per_period = 2000) {
  return detail::integrate_phases(
      fam.energy, hbar, fam.gamma_init, fam.omega_init, t_grid, steps_per_period,
      [&](double t, double, double) { return fam.F(x, t); }, false);
}

/// Same integration with F = c·secΘ·cscΘ. Refuses to step within
/// kSingularGuard radians of any multiple of π/2.
inline std::vector<PhasePoint> integrate_fdriven(const SingularF& fam, const std::vector<double>& t_grid, double hbar,
                                                 int steps_per_period = 2000) {
  return detail::integrate_phases(
      fam.energy, hbar, fam.gamma_init, fam.omega_init, t_grid, steps_per_period,
      [&](double, double s, double c) { return fam.c / (s * c); }, true);
}

/// Angles and time derivatives at one point of an F-driven trajectory.
inline ScheduleJet fdriven_jet(double energy, double hbar, double f_value, const PhasePoint& p) {
  const double theta = energy / hbar * p.t;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {AngleJet{theta, energy / hbar, {}, 0.0}, AngleJet{p.gamma, f_value * s * s, {}, 0.0},
          AngleJet{p.omega, -f_value * c * c, {}, 0.0}};
}

inline ScheduleJet fdriven_jet(const FDriven& fam, const Vec3& x, const PhasePoint& p, double hbar) {
  return fdriven_jet(fam.energy, hbar, fam.F(x, p.t), p);
}

inline ScheduleJet fdriven_jet(const SingularF& fam, const PhasePoint& p, double hbar) {
  const double theta = fam.energy / hbar * p.t;
  return fdriven_jet(fam.energy, hbar, fam.c / (std::sin(theta) * std::cos(theta)), p);
}

/// Λ(t) = cos(Et/ħ)e^{iΓ₀} + sin(Et/ħ)e^{iΩ₀}j, period 2πħ/|E|.
inline Quaternion stationary_lambda(double energy, double gamma0, double omega0, double t, double hbar = 1.0) {
  return make_lambda(energy * t / hbar, gamma0, omega0);
}

// ---------------------------------------------------------------------------
// Spatial derivatives

struct LambdaGradient {
  CVec3 P;  // −sinΘ∇Θ + i cosΘ∇Γ
  CVec3 Q;  //  cosΘ∇Θ + i sinΘ∇Ω

  /// ∇Λ = P e^{iΓ} + Q e^{iΩ} j, one quaternion per spatial direction.
  Vec3T<Quaternion> assemble(const ScheduleJet& s) const {
    const Complex eg = std::polar(1.0, s.gamma.value);
    const Complex eo = std::polar(1.0, s.omega.value);
    Vec3T<Quaternion> out;
    for (std::size_t d = 0; d < 3; ++d) out[d] = Quaternion::from_symplectic(P[d] * eg, Q[d] * eo);
    return out;
  }
};

inline LambdaGradient lambda_gradient(const ScheduleJet& s) {
  const double ct = std::cos(s.theta.value);
  const double st = std::sin(s.theta.value);
  LambdaGradient out;
  for (std::size_t d = 0; d < 3; ++d) {
    out.P[d] = Complex(-st * s.theta.grad[d], ct * s.gamma.grad[d]);
    out.Q[d] = Complex(ct * s.theta.grad[d], st * s.omega.grad[d]);
  }
  return out;
}

struct LambdaLaplacian {
  Complex M;
  Complex N;

  /// ∇²Λ = ℳe^{iΓ} + 𝒩e^{iΩ}j
  Quaternion assemble(const ScheduleJet& s) const {
    return Quaternion::from_symplectic(M * std::polar(1.0, s.gamma.value), N * std::polar(1.0, s.omega.value));
  }
};

inline LambdaLaplacian lambda_laplacian(const ScheduleJet& s) {
  const double ct = std::cos(s.theta.value);
  const double st = std::sin(s.theta.value);
  const Vec3& gt = s.theta.grad;
  const Vec3& gg = s.gamma.grad;
  const Vec3& go = s.omega.grad;
  const Complex M(-(norm2(gt) + norm2(gg)) * ct - st * s.theta.lap, ct * s.gamma.lap - 2.0 * st * dot(gt, gg));
  const Complex N(-(norm2(gt) + norm2(go)) * st + ct * s.theta.lap, st * s.omega.lap + 2.0 * ct * dot(gt, go));
  return {M, N};
}

struct EigenReduction {
  double K;         // |∇Θ|² + |∇Γ|²
  double residual;  // |∇²Λ + 𝒦Λ|
};

/// 𝒦 with ∇²Λ = −𝒦Λ for a space-linear schedule, and the residual of that
/// relation evaluated from the analytic Laplacian.
inline EigenReduction eigen_reduction_check(const SpaceLinear& fam, const Vec3& x, double t, double hbar = 1.0) {
  const ScheduleJet s = make_schedule(fam, hbar).at(x, t);
  const double K = norm2(fam.k()) + norm2(fam.g());
  const Quaternion lap = lambda_laplacian(s).assemble(s);
  return {K, (lap + K * s.lambda()).norm()};
}

}  // namespace imagunit
