#pragma once

// Complex deformation of the Schrödinger equation, i → e^{iθ}·i:
//
//   ħ (∂ψ/∂t) e^{iθ} i = Hψ,    H = −(ħ²/2m)∇² + V,
//
// solved for the time derivative as ψ_t = −(i/ħ) e^{−iθ} Hψ, together with
// the gauge bookkeeping, both continuity budgets, the generalized momentum,
// and the separated solution families χ = exp[−iℰe^{−iθ}].

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <variant>

#include "imagunit/continuity.hpp"
#include "imagunit/errors.hpp"
#include "imagunit/grid.hpp"
#include "imagunit/rk4.hpp"

namespace imagunit {

/// Real deformation angle θ(x, t) with analytic ∂θ/∂t, ∂θ/∂x, ∂²θ/∂x².
struct ThetaField {
  std::function<double(double x, double t)> value;
  std::function<double(double x, double t)> dt;
  std::function<double(double x, double t)> dx;
  std::function<double(double x, double t)> dxx;

  static ThetaField constant(double theta) {
    auto zero = [](double, double) { return 0.0; };
    return {[theta](double, double) { return theta; }, zero, zero, zero};
  }
  /// θ0 + rate·t + slope·x
  static ThetaField linear(double theta0, double rate, double slope = 0.0) {
    return {[=](double x, double t) { return theta0 + rate * t + slope * x; }, [rate](double, double) { return rate; },
            [slope](double, double) { return slope; }, [](double, double) { return 0.0; }};
  }
  /// offset + amplitude·sin(k·x + phase) + rate·t
  static ThetaField sine(double offset, double amplitude, double k, double phase, double rate = 0.0) {
    return {[=](double x, double t) { return offset + amplitude * std::sin(k * x + phase) + rate * t; },
            [rate](double, double) { return rate; },
            [=](double x, double) { return amplitude * k * std::cos(k * x + phase); },
            [=](double x, double) { return -amplitude * k * k * std::sin(k * x + phase); }};
  }

  RealField sample(const Grid1D& g, double t) const {
    return RealField::generate(g, [&](double x) { return value(x, t); });
  }
  RealField sample_dt(const Grid1D& g, double t) const {
    return RealField::generate(g, [&](double x) { return dt(x, t); });
  }
  RealField sample_dx(const Grid1D& g, double t) const {
    return RealField::generate(g, [&](double x) { return dx(x, t); });
  }
  RealField sample_dxx(const Grid1D& g, double t) const {
    return RealField::generate(g, [&](double x) { return dxx(x, t); });
  }
};

struct DeformedSetup {
  ThetaField theta;
  ComplexField V;
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0)) throw PreconditionError("DeformedSetup: hbar and mass must be positive");
  }
};

/// −(ħ²/2m)Δ_h ψ + Vψ
inline ComplexField apply_hamiltonian_c(const ComplexField& psi, const ComplexField& V, double hbar, double mass) {
  require_same_grid(psi.grid(), V.grid(), "apply_hamiltonian_c");
  const double kin = -hbar * hbar / (2.0 * mass);
  const ComplexField lap = laplace(psi);
  std::vector<Complex> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = kin * lap[i] + V[i] * psi[i];
  return {psi.grid(), std::move(out)};
}

/// ψ_t = −(i/ħ) e^{−iθ(x,t)} Hψ
inline ComplexField deformed_rhs(const ComplexField& psi, const DeformedSetup& s, double t) {
  const ComplexField h = apply_hamiltonian_c(psi, s.V, s.hbar, s.mass);
  return map_indexed(h, [&](std::size_t i, Complex v) {
    const double th = s.theta.value(psi.grid().coordinate(i), t);
    return -kI / s.hbar * std::polar(1.0, -th) * v;
  });
}

/// Largest admissible explicit step, 0.5·(2m/ħ)·dx²/2.
inline double stability_bound(const Grid1D& g, double hbar, double mass) {
  return 0.5 * (2.0 * mass / hbar) * g.dx() * g.dx() / 2.0;
}

/// One RK4 step of the deformed equation.
inline ComplexField step_deformed(const ComplexField& psi, const DeformedSetup& s, double t, double dt) {
  s.validate();
  const double bound = stability_bound(psi.grid(), s.hbar, s.mass);
  if (!(dt > 0.0) || dt > bound)
    throw ConfigurationError("step_deformed: dt = " + std::to_string(dt) + " outside (0, " + std::to_string(bound) +
                             "]");
  return rk4_step(psi, t, dt, [&](double tt, const ComplexField& y) { return deformed_rhs(y, s, tt); });
}

/// Norm decay rate −(E/ħ)sinθ of an eigenstate of energy E at constant θ.
inline double amplitude_decay(double energy, double theta, double hbar = 1.0) {
  return -energy / hbar * std::sin(theta);
}

/// d ln‖ψ‖/dt = ∫Re(ψ̄ ψ_t) / ∫|ψ|²
inline double ln_norm_rate(const ComplexField& psi, const ComplexField& psi_t) {
  const RealField num = zip(psi, psi_t, [](Complex a, Complex b) { return std::real(std::conj(a) * b); });
  return integrate(num) / integrate(abs2(psi));
}

// ---------------------------------------------------------------------------
// Gauge transformation φ = e^{iθ}ψ

struct GaugeReport {
  ComplexField phi;           // e^{iθ}ψ
  RealField A;                // ∇θ
  ComplexField V_gauge;       // V − ħe^{iθ}∂θ/∂t
  ComplexField residual_psi;  // ħψ_t e^{iθ} i − Hψ
  ComplexField residual_phi;  // ħφ_t e^{iθ} i − (1/2m)π̂²φ − 𝒱φ
  double max_residual_psi;
  double max_residual_phi;
  double parity;              // max |residual_phi − e^{iθ} residual_psi|
};

/// Transforms ψ and checks that φ obeys the transformed equation with the
/// same residual ψ has in the original one. π̂² = −ħ²(∇ − i𝒜)² is
/// discretized with link phases exp(−i∫𝒜 dx) = exp(−i(θ_{i+1} − θ_i)), the
/// gauge-covariant partner of the three-point Laplacian.
inline GaugeReport gauge_transform(const ComplexField& psi, const ComplexField& psi_t, const DeformedSetup& s,
                                   double t) {
  s.validate();
  require_same_grid(psi.grid(), psi_t.grid(), "gauge_transform");
  const Grid1D& g = psi.grid();
  const std::size_t n = g.size();
  const RealField th = s.theta.sample(g, t);
  const RealField th_t = s.theta.sample_dt(g, t);
  const RealField A = s.theta.sample_dx(g, t);

  const ComplexField phi = zip(psi, th, [](Complex p, double a) { return std::polar(1.0, a) * p; });
  std::vector<Complex> phi_t(n), vg(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi_t[i] = std::polar(1.0, th[i]) * (psi_t[i] + kI * th_t[i] * psi[i]);
    vg[i] = s.V[i] - s.hbar * std::polar(1.0, th[i]) * th_t[i];
  }

  // (∇ − i𝒜)² φ on the lattice
  std::vector<Complex> cov(n, Complex{});
  const double inv = 1.0 / (g.dx() * g.dx());
  auto covariant = [&](std::size_t i, std::size_t ip, std::size_t im) {
    const Complex up = std::polar(1.0, -(th[ip] - th[i])) * phi[ip];
    const Complex down = std::polar(1.0, th[i] - th[im]) * phi[im];
    return inv * (up - 2.0 * phi[i] + down);
  };
  if (g.periodic()) {
    for (std::size_t i = 0; i < n; ++i) cov[i] = covariant(i, (i + 1) % n, (i + n - 1) % n);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) cov[i] = covariant(i, i + 1, i - 1);
  }

  const ComplexField h = apply_hamiltonian_c(psi, s.V, s.hbar, s.mass);
  const Complex lhs_unit = kI;
  std::vector<Complex> r4(n), r6(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = std::polar(1.0, th[i]);
    r4[i] = s.hbar * psi_t[i] * e * lhs_unit - h[i];
    const Complex pi2 = -s.hbar * s.hbar * cov[i];
    r6[i] = s.hbar * phi_t[i] * e * lhs_unit - pi2 / (2.0 * s.mass) - vg[i] * phi[i];
  }
  ComplexField R4(g, std::move(r4));
  ComplexField R6(g, std::move(r6));
  double parity = 0.0;
  for (std::size_t i = 0; i < n; ++i) parity = std::max(parity, std::abs(R6[i] - std::polar(1.0, th[i]) * R4[i]));
  const double m4 = max_abs(R4);
  const double m6 = max_abs(R6);
  return {phi, A, ComplexField(g, std::move(vg)), std::move(R4), std::move(R6), m4, m6, parity};
}

/// Uses the evolution law for ψ_t.
inline GaugeReport gauge_transform(const ComplexField& psi, const DeformedSetup& s, double t) {
  return gauge_transform(psi, deformed_rhs(psi, s, t), s, t);
}

// ---------------------------------------------------------------------------
// Continuity budgets

namespace detail {
inline RealField rho_t_of(const ComplexField& psi, const ComplexField& psi_t) {
  return zip(psi, psi_t, [](Complex a, Complex b) { return 2.0 * std::real(std::conj(a) * b); });
}
}  // namespace detail

/// cosθ ρ_t + ∇·j = κ + λ with the textbook current
/// j = (1/2m)[(p̂ψ)ψ† + (p̂ψ)†ψ], κ = i sinθ(ψ ∂ψ†/∂t − ψ† ∂ψ/∂t) and
/// λ = (i/ħ)ρ(V† − V).
inline ContinuityReport continuity_deformed(const ComplexJet& psi, const ComplexField& psi_t, const DeformedSetup& s,
                                            double t, Divergence mode = Divergence::Grid) {
  s.validate();
  const Grid1D& g = psi.value.grid();
  require_same_grid(g, psi_t.grid(), "continuity_deformed");
  const double hbar = s.hbar;
  const double m = s.mass;
  const RealField th = s.theta.sample(g, t);
  const std::size_t n = g.size();

  const RealField rho = abs2(psi.value);
  const RealField rho_t = detail::rho_t_of(psi.value, psi_t);
  std::vector<double> cos_rho_t(n), j(n), kappa(n), lambda(n), div_pr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = psi.value[i];
    const Complex pt = psi_t[i];
    const Complex px = psi.dx[i];
    cos_rho_t[i] = std::cos(th[i]) * rho_t[i];
    const Complex phat = -kI * hbar * px;
    j[i] = std::real((phat * std::conj(p) + std::conj(phat) * p) / (2.0 * m));
    kappa[i] = std::real(kI * std::sin(th[i]) * (p * std::conj(pt) - std::conj(p) * pt));
    lambda[i] = std::real(kI / hbar * rho[i] * (std::conj(s.V[i]) - s.V[i]));
    div_pr[i] = hbar / m * std::imag(std::conj(p) * psi.dxx[i]);
  }
  RealField jf(g, std::move(j));
  RealField div = mode == Divergence::Grid ? grad(jf) : RealField(g, std::move(div_pr));
  RealField kap(g, std::move(kappa));
  RealField lam(g, std::move(lambda));
  RealField crt(g, std::move(cos_rho_t));
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = crt[i] + div[i] - kap[i] - lam[i];
  RealField resf(g, std::move(res));
  const double mr = max_abs(resf);
  return {{make_term("rho", rho), make_term("rho_t", rho_t), make_term("cos_theta_rho_t", crt),
           make_term("j", std::move(jf)), make_term("div_j", std::move(div)), make_term("kappa", std::move(kap)),
           make_term("lambda", std::move(lam))},
          std::move(resf),
          mr};
}

inline ContinuityReport continuity_deformed(const ComplexField& psi, const DeformedSetup& s, double t) {
  return continuity_deformed(grid_jet(psi), deformed_rhs(psi, s, t), s, t);
}

/// φ·exp[−(i/ħ)Et(cosθ − i sinθ)]
inline ComplexField ansatz_wavefunction(const ComplexField& phi, double energy, double theta, double t,
                                        double hbar = 1.0) {
  const Complex factor = std::exp(-kI / hbar * energy * t * Complex(std::cos(theta), -std::sin(theta)));
  return map(phi, [factor](Complex p) { return p * factor; });
}

/// Real-potential source term −(2V/ħ)ρ sinθ.
inline RealField beta_real_potential(const RealField& rho, const RealField& V, const RealField& theta, double hbar) {
  require_same_grid(rho.grid(), V.grid(), "beta_real_potential");
  std::vector<double> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = -2.0 * V[i] / hbar * rho[i] * std::sin(theta[i]);
  return {rho.grid(), std::move(out)};
}

/// ρ_t + ∇·J = β + γ with the weighted current
/// J = (1/2m)[(p̂ψ)ψ†e^{−iθ} + (p̂ψ)†ψe^{iθ}], β = (i/ħ)ρ(V†e^{iθ} − Ve^{−iθ}),
/// γ = J₀ − (1/mħ)|p̂ψ|² sinθ and
/// J₀ = (1/2mħ)[(p̂ψ·p̂θ)ψ†e^{−iθ} + (p̂ψ·p̂θ)†ψe^{iθ}].
inline ContinuityReport continuity_ansatz(const ComplexJet& psi, const ComplexField& psi_t, const DeformedSetup& s,
                                          double t, Divergence mode = Divergence::Grid) {
  s.validate();
  const Grid1D& g = psi.value.grid();
  require_same_grid(g, psi_t.grid(), "continuity_ansatz");
  const double hbar = s.hbar;
  const double m = s.mass;
  const std::size_t n = g.size();
  const RealField th = s.theta.sample(g, t);
  const RealField th_x = s.theta.sample_dx(g, t);

  const RealField rho = abs2(psi.value);
  const RealField rho_t = detail::rho_t_of(psi.value, psi_t);
  std::vector<double> J(n), beta(n), gamma(n), J0(n), div_pr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = psi.value[i];
    const Complex px = psi.dx[i];
    const Complex em = std::polar(1.0, -th[i]);
    const Complex ep = std::polar(1.0, th[i]);
    const Complex phat = -kI * hbar * px;
    const Complex ptheta = -kI * hbar * th_x[i];
    J[i] = std::real((phat * std::conj(p) * em + std::conj(phat) * p * ep) / (2.0 * m));
    beta[i] = std::real(kI / hbar * rho[i] * (std::conj(s.V[i]) * ep - s.V[i] * em));
    const Complex pp = phat * ptheta;
    J0[i] = std::real((pp * std::conj(p) * em + std::conj(pp) * p * ep) / (2.0 * m * hbar));
    gamma[i] = J0[i] - std::norm(phat) * std::sin(th[i]) / (m * hbar);
    div_pr[i] = hbar / m *
                std::imag((std::norm(px) + std::conj(p) * psi.dxx[i] - kI * th_x[i] * std::conj(p) * px) * em);
  }
  RealField Jf(g, std::move(J));
  RealField div = mode == Divergence::Grid ? grad(Jf) : RealField(g, std::move(div_pr));
  RealField bf(g, std::move(beta));
  RealField gf(g, std::move(gamma));
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = rho_t[i] + div[i] - bf[i] - gf[i];
  RealField resf(g, std::move(res));
  const double mr = max_abs(resf);
  return {{make_term("rho", rho), make_term("rho_t", rho_t), make_term("J", std::move(Jf)),
           make_term("div_J", std::move(div)), make_term("beta", std::move(bf)), make_term("gamma", std::move(gf)),
           make_term("J0", RealField(g, std::move(J0)))},
          std::move(resf),
          mr};
}

inline ContinuityReport continuity_ansatz(const ComplexField& psi, const DeformedSetup& s, double t) {
  return continuity_ansatz(grid_jet(psi), deformed_rhs(psi, s, t), s, t);
}

// ---------------------------------------------------------------------------
// Generalized momentum ϖ̂ = −ħe^{−iθ}∇ and its commutator with x

struct MomentumReport {
  ComplexField value;     // ϖ̂ψ
  ComplexField squared;   // ϖ̂(ϖ̂ψ)
  ComplexField expected;  // ħ²e^{−2iθ}∇²ψ
  ComplexField kinetic;   // p̂²ψ = −ħ²∇²ψ, i.e. 2m × kinetic term
  double squared_mismatch;   // max |squared − expected|
  double kinetic_mismatch;   // max |squared − kinetic|
};

inline MomentumReport generalized_momentum_c(const ComplexField& psi, const RealField& theta, double hbar = 1.0) {
  require_same_grid(psi.grid(), theta.grid(), "generalized_momentum_c");
  auto apply = [&](const ComplexField& f) {
    const ComplexField d = grad(f);
    return zip(d, theta, [hbar](Complex v, double th) { return -hbar * std::polar(1.0, -th) * v; });
  };
  ComplexField value = apply(psi);
  ComplexField squared = apply(value);
  const ComplexField lap = laplace(psi);
  ComplexField expected = zip(lap, theta, [hbar](Complex v, double th) { return hbar * hbar * std::polar(1.0, -2.0 * th) * v; });
  ComplexField kinetic = map(lap, [hbar](Complex v) { return -hbar * hbar * v; });
  const double sm = max_abs_diff(squared, expected);
  const double km = max_abs_diff(squared, kinetic);
  return {std::move(value), std::move(squared), std::move(expected), std::move(kinetic), sm, km};
}

struct CommutatorReport {
  ComplexField operator_rhs;  // (xϖ̂ − ϖ̂x)ψ on interior points
  ComplexField printed_rhs;     // ħ i e^{iθ} ψ, the printed right-hand side
  double mismatch;            // max |operator_rhs − printed_rhs|
  double derived_residual;    // max |operator_rhs − ħe^{−iθ}ψ|
};

/// [x, ϖ̂_x]ψ evaluated with the central difference. The two end points are
/// excluded (the coordinate is not periodic), and are left at 0.
inline CommutatorReport commutator_residual_c(const ComplexField& psi, double theta, double hbar = 1.0) {
  const Grid1D& g = psi.grid();
  const std::size_t n = g.size();
  const double inv = 1.0 / (2.0 * g.dx());
  const Complex phase = -hbar * std::polar(1.0, -theta);
  std::vector<Complex> op(n, Complex{}), printed(n), derived(n, Complex{});
  for (std::size_t i = 0; i < n; ++i) printed[i] = hbar * kI * std::polar(1.0, theta) * psi[i];
  double mismatch = 0.0;
  double residual = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = g.coordinate(i);
    const Complex x_pi = x * phase * inv * (psi[i + 1] - psi[i - 1]);
    const Complex pi_x = phase * inv * (g.coordinate(i + 1) * psi[i + 1] - g.coordinate(i - 1) * psi[i - 1]);
    op[i] = x_pi - pi_x;
    mismatch = std::max(mismatch, std::abs(op[i] - printed[i]));
    residual = std::max(residual, std::abs(op[i] - hbar * std::polar(1.0, -theta) * psi[i]));
  }
  return {ComplexField(g, std::move(op)), ComplexField(g, std::move(printed)), mismatch, residual};
}

// ---------------------------------------------------------------------------
// Separated solutions ψ = χφ, χ = exp[−iℰe^{−iθ}]

/// ℰ = Et/ħ, θ = θ₀
struct ConstTheta {
  double energy = 1.0;
  double theta0 = 0.0;
};

/// ℰ = ℰ₀, θ = θ_rate·t
struct LinearTheta {
  double theta_rate = 1.0;
  double calE0 = 1.0;
};

/// ℰ = Et/ħ, θ = θ₀ − (ε sinξ / E)·ln(t/t₀), which makes
/// ℰ̇ − iθ̇ℰ = (ε/ħ)e^{iξ} with cosξ = E/ε.
class LogTheta {
 public:
  /// ξ = −arccos(E/ε), giving the positive log coefficient √(ε² − E²)/E.
  static LogTheta make(double energy, double epsilon, double theta0, double t0) {
    validate(energy, epsilon, t0);
    return LogTheta(energy, epsilon, -std::acos(energy / epsilon), theta0, t0);
  }
  /// Explicit ξ; must satisfy cosξ = E/ε.
  static LogTheta make(double energy, double epsilon, double xi, double theta0, double t0) {
    validate(energy, epsilon, t0);
    if (std::abs(std::cos(xi) - energy / epsilon) > 1e-9)
      throw DomainError("LogTheta: xi inconsistent with cos(xi) = E/epsilon");
    return LogTheta(energy, epsilon, xi, theta0, t0);
  }

  double energy() const { return energy_; }
  double epsilon() const { return epsilon_; }
  double xi() const { return xi_; }
  double theta0() const { return theta0_; }
  double t0() const { return t0_; }
  /// Coefficient of ln(t/t₀) in θ(t).
  double log_coefficient() const { return -epsilon_ * std::sin(xi_) / energy_; }
  /// The same coefficient in the printed form (ħ/E)√(1 − (E/ε)²).
  double printed_log_coefficient(double hbar) const {
    return hbar / energy_ * std::sqrt(1.0 - (energy_ / epsilon_) * (energy_ / epsilon_));
  }

 private:
  LogTheta(double e, double eps, double xi, double th0, double t0)
      : energy_(e), epsilon_(eps), xi_(xi), theta0_(th0), t0_(t0) {}
  static void validate(double energy, double epsilon, double t0) {
    if (!(energy > 0.0)) throw DomainError("LogTheta: E must be positive");
    if (!(epsilon >= energy))
      throw DomainError("LogTheta: epsilon < E leaves sqrt(1 - (E/epsilon)^2) imaginary");
    if (!(t0 > 0.0)) throw DomainError("LogTheta: t0 must be positive");
  }
  double energy_;
  double epsilon_;
  double xi_;
  double theta0_;
  double t0_;
};

using ChiFamily = std::variant<ConstTheta, LinearTheta, LogTheta>;

/// (ℰ, ℰ̇, θ, θ̇) of a family at time t.
struct ChiState {
  double calE;
  double calE_dot;
  double theta;
  double theta_dot;
};

inline ChiState chi_state(const ChiFamily& fam, double t, double hbar = 1.0) {
  return std::visit(
      [&](const auto& f) -> ChiState {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstTheta>) {
          return {f.energy * t / hbar, f.energy / hbar, f.theta0, 0.0};
        } else if constexpr (std::is_same_v<F, LinearTheta>) {
          return {f.calE0, 0.0, f.theta_rate * t, f.theta_rate};
        } else {
          if (!(t >= f.t0())) throw DomainError("LogTheta: requires t >= t0 > 0");
          return {f.energy() * t / hbar, f.energy() / hbar, f.theta0() + f.log_coefficient() * std::log(t / f.t0()),
                  f.log_coefficient() / t};
        }
      },
      fam);
}

/// χ = exp[−iℰ(t)e^{−iθ(t)}]
inline Complex build_chi(const ChiFamily& fam, double t, double hbar = 1.0) {
  const ChiState s = chi_state(fam, t, hbar);
  return std::exp(-kI * s.calE * std::polar(1.0, -s.theta));
}

/// ℰ̇ − iθ̇ℰ; constant (ε/ħ)e^{iξ} on the log family.
inline Complex separation_rate(const ChiState& s) { return s.calE_dot - kI * s.theta_dot * s.calE; }

/// Pointwise residual of the separated equation
///   ħ(ℰ̇ − iθ̇ℰ)φ = −(ħ²/2m)[∇²φ + (iφ|∇θ|² − φ∇²θ − 2∇φ·∇θ)ℰe^{−iθ} + φ|∇θ|²ℰ²e^{−2iθ}] + Vφ
/// given φ, ∇φ, ∇²φ and θ with its derivatives at one point.
struct ThetaPoint {
  double value;
  double dt;
  double dx;
  double dxx;
};

inline Complex separated_residual_point(Complex phi, Complex phi_x, Complex phi_xx, double calE, double calE_dot,
                                        const ThetaPoint& th, Complex V, double hbar, double mass) {
  const Complex em = std::polar(1.0, -th.value);
  const Complex lhs = hbar * (calE_dot - kI * th.dt * calE) * phi;
  const Complex bracket = phi_xx + (kI * phi * th.dx * th.dx - phi * th.dxx - 2.0 * phi_x * th.dx) * calE * em +
                          phi * th.dx * th.dx * calE * calE * em * em;
  return lhs - (-hbar * hbar / (2.0 * mass) * bracket + V * phi);
}

/// Max-norm of separated_residual_point with grid derivatives of φ; box
/// walls are skipped.
inline double separated_residual(const ComplexField& phi, double calE, double calE_dot, const ThetaField& theta,
                                 const ComplexField& V, double t, double hbar, double mass) {
  require_same_grid(phi.grid(), V.grid(), "separated_residual");
  const Grid1D& g = phi.grid();
  const ComplexField lap = laplace(phi);
  const ComplexField d = grad(phi);
  double worst = 0.0;
  const std::size_t first = g.periodic() ? 0 : 1;
  const std::size_t last = g.periodic() ? g.size() : g.size() - 1;
  for (std::size_t i = first; i < last; ++i) {
    const double x = g.coordinate(i);
    const ThetaPoint th{theta.value(x, t), theta.dt(x, t), theta.dx(x, t), theta.dxx(x, t)};
    worst = std::max(worst,
                     std::abs(separated_residual_point(phi[i], d[i], lap[i], calE, calE_dot, th, V[i], hbar, mass)));
  }
  return worst;
}

/// Built-in families have ∇θ = 0.
inline double separated_residual(const ComplexField& phi, const ChiFamily& fam, const ComplexField& V, double t,
                                 double hbar = 1.0, double mass = 1.0) {
  const ChiState s = chi_state(fam, t, hbar);
  ThetaField th = ThetaField::linear(s.theta - s.theta_dot * t, s.theta_dot);
  return separated_residual(phi, s.calE, s.calE_dot, th, V, t, hbar, mass);
}

}  // namespace imagunit
