#pragma once

// Quaternionic wave equation with a right-multiplied imaginary unit,
//
//   ħ (∂Ψ/∂t) η = ĤΨ,    Ĥ = −(ħ²/2m)(∇ − 𝒜)² + U,
//   𝒜 = α i + β j,       U = V + W j,        η = e^{iΞ} j,
//
// so Ψ_t = −(1/ħ)(ĤΨ)η. Operators and potentials multiply Ψ from the left;
// η and Λ multiply from the right.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "imagunit/continuity.hpp"
#include "imagunit/deformed.hpp"
#include "imagunit/errors.hpp"
#include "imagunit/grid.hpp"
#include "imagunit/rk4.hpp"
#include "imagunit/schedule.hpp"

namespace imagunit {

struct QuatPotential {
  RealField alpha;    // 1/length
  ComplexField beta;  // 1/length
  ComplexField V;     // energy
  ComplexField W;     // energy

  /// 𝒜 = 0, W = 0, U = V.
  static QuatPotential scalar(const ComplexField& V) {
    const Grid1D& g = V.grid();
    return {RealField(g, 0.0), ComplexField(g), V, ComplexField(g)};
  }
  static QuatPotential zero(const Grid1D& g) { return scalar(ComplexField(g)); }

  const Grid1D& grid() const { return V.grid(); }

  void validate() const {
    const Grid1D& g = grid();
    if (!(alpha.grid() == g && beta.grid() == g && W.grid() == g))
      throw PreconditionError("QuatPotential: components live on different grids");
  }

  QuatField vector_potential() const {
    return zip(alpha, beta, [](double a, Complex b) { return Quaternion::from_symplectic(Complex(0.0, a), b); });
  }
  QuatField scalar_potential() const { return compose(V, W); }
};

/// Pointwise products in the written order.
inline QuatField mul(const QuatField& a, const QuatField& b) {
  return zip(a, b, [](const Quaternion& p, const Quaternion& q) { return p * q; });
}
inline QuatField conj(const QuatField& a) {
  return map(a, [](const Quaternion& q) { return quat_conj(q); });
}
inline RealField real_part(const QuatField& a) {
  return map(a, [](const Quaternion& q) { return q.real(); });
}
/// max |Im q| / max(|Re q|, floor) over the field.
inline double imag_ratio(const QuatField& a, double floor = 1e-300) {
  double im = 0.0;
  double re = 0.0;
  for (const auto& q : a) {
    im = std::max(im, q.imag().norm());
    re = std::max(re, std::abs(q.real()));
  }
  return im / std::max(re, floor);
}

/// η(x) = e^{iΞ(x)} j from sampled Ξ.
inline QuatField eta_field(const RealField& xi) {
  return map(xi, [](double v) { return make_eta(v); });
}

inline void require_unit_eta(const QuatField& eta, const char* where) {
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const Quaternion sq = eta[i] * eta[i];
    if ((sq + Quaternion(1.0)).norm() > 1e-12)
      throw PreconditionError(std::string(where) + ": eta^2 != -1 at grid point " + std::to_string(i));
  }
}

/// (∇ − 𝒜)Ψ with the grid gradient.
inline QuatField covariant_grad(const QuatField& psi, const QuatField& A) { return grad(psi) - mul(A, psi); }

/// −(ħ²/2m)[∇²Ψ − ∇·(𝒜Ψ) − 𝒜·∇Ψ + 𝒜(𝒜Ψ)] + UΨ
inline QuatField apply_hamiltonian_q(const QuatField& psi, const QuatPotential& pot, double hbar, double mass) {
  pot.validate();
  require_same_grid(psi.grid(), pot.grid(), "apply_hamiltonian_q");
  const QuatField A = pot.vector_potential();
  const QuatField Apsi = mul(A, psi);
  const QuatField kin = laplace(psi) - grad(Apsi) - mul(A, grad(psi)) + mul(A, Apsi);
  return (-hbar * hbar / (2.0 * mass)) * kin + mul(pot.scalar_potential(), psi);
}

/// Π̂Ψ = −ħ[(∇ − 𝒜)Ψ]η
inline QuatField generalized_momentum_q(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                        double hbar = 1.0) {
  require_same_grid(psi.grid(), eta.grid(), "generalized_momentum_q");
  require_unit_eta(eta, "generalized_momentum_q");
  return (-hbar) * mul(covariant_grad(psi, pot.vector_potential()), eta);
}

/// ΨΨ† as a quaternion field (its imaginary part vanishes to rounding).
inline QuatField density_quaternion(const QuatField& psi) { return mul(psi, conj(psi)); }

namespace detail {
inline RealField checked_real(const QuatField& q, const char* what) {
  if (imag_ratio(q, 1e-200) > 1e-9 && max_abs(q) > 1e-200)
    throw std::logic_error(std::string(what) + ": result is not real");
  return real_part(q);
}
}  // namespace detail

/// 𝒫 = ΨΨ† = |Ψ₀|² + |Ψ₁|²
inline RealField probability_density(const QuatField& psi) {
  return detail::checked_real(density_quaternion(psi), "probability_density");
}

/// (1/2m)[(Π̂Ψ)Ψ† + Ψ(Π̂Ψ)†]
inline QuatField current_quaternion(const QuatField& psi, const QuatPotential& pot, const QuatField& eta, double hbar,
                                    double mass) {
  const QuatField pi = generalized_momentum_q(psi, pot, eta, hbar);
  return (1.0 / (2.0 * mass)) * (mul(pi, conj(psi)) + mul(psi, conj(pi)));
}

inline RealField probability_current(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                     double hbar = 1.0, double mass = 1.0) {
  return detail::checked_real(current_quaternion(psi, pot, eta, hbar, mass), "probability_current");
}

/// The current with the second product in the order (Π̂Ψ)†Ψ; it coincides
/// with the symmetric form for complex Ψ and η = i only.
inline QuatField current_quaternion_printed_order(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                                  double hbar, double mass) {
  const QuatField pi = generalized_momentum_q(psi, pot, eta, hbar);
  return (1.0 / (2.0 * mass)) * (mul(pi, conj(psi)) + mul(conj(pi), psi));
}

/// ℬ = (1/ħ)(UΨηΨ† − ΨηΨ†U†), in the printed sign.
inline QuatField source_B_quaternion(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                     double hbar = 1.0) {
  require_same_grid(psi.grid(), pot.grid(), "source_B");
  const QuatField U = pot.scalar_potential();
  const QuatField core = mul(mul(psi, eta), conj(psi));
  return (1.0 / hbar) * (mul(U, core) - mul(core, conj(U)));
}

inline RealField source_B(const QuatField& psi, const QuatPotential& pot, const QuatField& eta, double hbar = 1.0) {
  return detail::checked_real(source_B_quaternion(psi, pot, eta, hbar), "source_B");
}

/// 𝒢 from a precomputed Π̂Ψ, with p̂Ξ = −iħ∇Ξ and the products in the
/// written left-to-right order:
/// (1/2mħ)[(Π̂Ψ·p̂Ξ)Ψ† + Ψ(p̂Ξ)†·(Π̂Ψ)†]
inline QuatField source_G_from_momentum(const QuatField& psi, const QuatField& pi, const RealField& xi_grad,
                                        double hbar = 1.0, double mass = 1.0) {
  require_same_grid(psi.grid(), xi_grad.grid(), "source_G");
  const QuatField pxi = map(xi_grad, [hbar](double d) { return Quaternion(Complex(0.0, -hbar * d)); });
  const QuatField first = mul(mul(pi, pxi), conj(psi));
  const QuatField second = mul(mul(psi, conj(pxi)), conj(pi));
  return (1.0 / (2.0 * mass * hbar)) * (first + second);
}

inline QuatField source_G_quaternion(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                     const RealField& xi_grad, double hbar = 1.0, double mass = 1.0) {
  return source_G_from_momentum(psi, generalized_momentum_q(psi, pot, eta, hbar), xi_grad, hbar, mass);
}

inline RealField source_G(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                          const RealField& xi_grad, double hbar = 1.0, double mass = 1.0) {
  return detail::checked_real(source_G_quaternion(psi, pot, eta, xi_grad, hbar, mass), "source_G");
}

/// Ψ_t = −(1/ħ)(ĤΨ)η
inline QuatField quaternionic_rhs(const QuatField& psi, const QuatPotential& pot, const QuatField& eta, double hbar,
                                  double mass) {
  return (-1.0 / hbar) * mul(apply_hamiltonian_q(psi, pot, hbar, mass), eta);
}

inline QuatField step_quaternionic(const QuatField& psi, const QuatPotential& pot, const QuatField& eta, double dt,
                                   double hbar = 1.0, double mass = 1.0) {
  require_same_grid(psi.grid(), eta.grid(), "step_quaternionic");
  require_unit_eta(eta, "step_quaternionic");
  const double bound = stability_bound(psi.grid(), hbar, mass);
  if (!(dt > 0.0) || dt > bound)
    throw ConfigurationError("step_quaternionic: dt = " + std::to_string(dt) + " outside (0, " +
                             std::to_string(bound) + "]");
  return rk4_step(psi, 0.0, dt,
                  [&](double, const QuatField& y) { return quaternionic_rhs(y, pot, eta, hbar, mass); });
}

/// 𝒫_t + ∇·𝒥 = ℬ + 𝒢 evaluated on the grid.
///
/// The source that closes the budget for Ψ_t = −(1/ħ)(ĤΨ)η is
/// −(1/ħ)(UΨηΨ† − ΨηΨ†U†), the negative of source_B. The report lists it as
/// "B" and keeps the printed sign as "B_printed"; `printed_residual` is the
/// residual obtained with the printed sign.
struct QuatContinuityReport {
  ContinuityReport report;
  double printed_residual;
};

inline QuatContinuityReport continuity_q(const QuatField& psi, const QuatField& psi_t, const QuatPotential& pot,
                                         const QuatField& eta, const RealField& xi_grad, double hbar = 1.0,
                                         double mass = 1.0) {
  require_same_grid(psi.grid(), psi_t.grid(), "continuity_q");
  const Grid1D& g = psi.grid();
  const RealField P = probability_density(psi);
  const RealField P_t = detail::checked_real(mul(psi_t, conj(psi)) + mul(psi, conj(psi_t)), "continuity_q: P_t");
  RealField J = probability_current(psi, pot, eta, hbar, mass);
  RealField divJ = grad(J);
  const RealField B_printed = source_B(psi, pot, eta, hbar);
  RealField B = (-1.0) * B_printed;
  RealField G = source_G(psi, pot, eta, xi_grad, hbar, mass);
  std::vector<double> res(g.size()), res_printed(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    res[i] = P_t[i] + divJ[i] - B[i] - G[i];
    res_printed[i] = P_t[i] + divJ[i] - B_printed[i] - G[i];
  }
  RealField resf(g, std::move(res));
  const double mr = max_abs(resf);
  const double mp = max_abs(RealField(g, std::move(res_printed)));
  ContinuityReport rep{{make_term("P", P), make_term("P_t", P_t), make_term("J", std::move(J)),
                        make_term("div_J", std::move(divJ)), make_term("B", std::move(B)),
                        make_term("B_printed", B_printed), make_term("G", std::move(G))},
                       std::move(resf),
                       mr};
  return {std::move(rep), mp};
}

/// Budget with Ψ_t from the evolution law.
inline QuatContinuityReport continuity_q(const QuatField& psi, const QuatPotential& pot, const QuatField& eta,
                                         const RealField& xi_grad, double hbar = 1.0, double mass = 1.0) {
  return continuity_q(psi, quaternionic_rhs(psi, pot, eta, hbar, mass), pot, eta, xi_grad, hbar, mass);
}

// ---------------------------------------------------------------------------
// Separation Ψ = Φ·Λ

/// Schedule energy for a Hamiltonian level E_n: −ħΘ̇ = E_n, so Θ = −E_n t/ħ.
inline double schedule_energy_for_level(double level_energy) { return -level_energy; }

/// Right-multiplies every sample by q.
inline QuatField right_mul(const QuatField& f, const Quaternion& q) {
  return map(f, [&q](const Quaternion& v) { return v * q; });
}

/// max over one Λ period (`samples` equally spaced times) of |ĤΨ + ħΘ̇Ψ|
/// with Ψ = ΦΛ(t). The schedule must be space-independent with Θ linear in t.
inline double separation_check(const QuatField& phi, const AngleSchedule& schedule, const QuatPotential& pot,
                               double hbar = 1.0, double mass = 1.0, int samples = 16) {
  const Vec3 origin{};
  const ScheduleJet j0 = schedule.at(origin, 0.0);
  const double rate = j0.theta.dt;
  const double period = rate != 0.0 ? 2.0 * std::numbers::pi / std::abs(rate) : 0.0;
  const int count = rate != 0.0 ? std::max(samples, 1) : 1;
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const double t = period * k / count;
    for (std::size_t i = 0; i < phi.size(); i += std::max<std::size_t>(1, phi.size() / 8)) {
      const ScheduleJet s = schedule.at(Vec3{{phi.grid().coordinate(i), 0.0, 0.0}}, t);
      if (norm2(s.theta.grad) + norm2(s.gamma.grad) + norm2(s.omega.grad) != 0.0)
        throw PreconditionError("separation_check: schedule must be space-independent");
      if (std::abs(s.theta.dt - rate) > 1e-12 * std::max(1.0, std::abs(rate)))
        throw PreconditionError("separation_check: Theta must be linear in t");
    }
    const ScheduleJet s = schedule.at(origin, t);
    const QuatField psi = right_mul(phi, s.lambda());
    const QuatField h = apply_hamiltonian_q(psi, pot, hbar, mass);
    worst = std::max(worst, max_abs(h + (hbar * s.theta.dt) * psi));
  }
  return worst;
}

/// Residual field of
///   ħΦΛ̇η + (ħ²/2m)(∇²Φ·Λ + 2∇Φ·∇Λ + Φ∇²Λ) − VΦΛ = 0
/// with the grid along x at transverse offset (y, z) = (offset[1], offset[2]).
/// ∇Λ and ∇²Λ are analytic; Φ's derivatives come from the grid stencils.
inline RealField full_pde_residual_field(const QuatField& phi, const AngleSchedule& schedule, const ComplexField& V,
                                         double t, double hbar = 1.0, double mass = 1.0, Vec3 offset = {}) {
  require_same_grid(phi.grid(), V.grid(), "full_pde_residual");
  const Grid1D& g = phi.grid();
  const QuatField dphi = grad(phi);
  const QuatField lphi = laplace(phi);
  const double c = hbar * hbar / (2.0 * mass);
  std::vector<double> out(g.size(), 0.0);
  const std::size_t first = g.periodic() ? 0 : 1;
  const std::size_t last = g.periodic() ? g.size() : g.size() - 1;
  for (std::size_t i = first; i < last; ++i) {
    const ScheduleJet s = schedule.at(Vec3{{g.coordinate(i), offset[1], offset[2]}}, t);
    const Quaternion lam = s.lambda();
    const Quaternion grad_x = lambda_gradient(s).assemble(s)[0];
    const Quaternion lap = lambda_laplacian(s).assemble(s);
    const Quaternion r = hbar * (phi[i] * lambda_dot(s) * s.eta()) +
                         c * (lphi[i] * lam + 2.0 * (dphi[i] * grad_x) + phi[i] * lap) - Quaternion(V[i]) * phi[i] * lam;
    out[i] = r.norm();
  }
  return {g, std::move(out)};
}

inline double full_pde_residual(const QuatField& phi, const AngleSchedule& schedule, const ComplexField& V, double t,
                                double hbar = 1.0, double mass = 1.0, Vec3 offset = {}) {
  return max_abs(full_pde_residual_field(phi, schedule, V, t, hbar, mass, offset));
}

/// Θ̇ for which Ψ = ΦΛ solves the full equation when Φ has level E_n and
/// ∇²Λ = −𝒦Λ with ∇Φ·∇Λ = 0: −ħΘ̇ = E_n + (ħ²/2m)𝒦.
inline double eigen_shift_energy(double level_energy, double K, double hbar, double mass) {
  return -(level_energy + hbar * hbar / (2.0 * mass) * K);
}

/// The same schedule energy read literally from −(ħ²/2m)∇²Φ + VΦ = (ℰ + 𝒦)Φ
/// with ℰ = −ħΘ̇.
inline double eigen_shift_energy_printed(double level_energy, double K) { return -(level_energy - K); }

/// max over interior points of |(xΠ̂_x − Π̂_x x)Ψ − ħΨη| with 𝒜 = 0.
inline double commutator_residual_q(const QuatField& psi, const QuatField& eta, double hbar = 1.0) {
  require_same_grid(psi.grid(), eta.grid(), "commutator_residual_q");
  require_unit_eta(eta, "commutator_residual_q");
  const Grid1D& g = psi.grid();
  const double inv = 1.0 / (2.0 * g.dx());
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double x = g.coordinate(i);
    const Quaternion x_pi = x * (-hbar) * (inv * (psi[i + 1] - psi[i - 1])) * eta[i];
    const Quaternion pi_x =
        (-hbar) * (inv * (g.coordinate(i + 1) * psi[i + 1] - g.coordinate(i - 1) * psi[i - 1])) * eta[i];
    worst = std::max(worst, (x_pi - pi_x - hbar * (psi[i] * eta[i])).norm());
  }
  return worst;
}

}  // namespace imagunit
