#pragma once

// Config-driven runs. Every output file starts with the effective
// configuration as "# " comment lines (after an optional timestamp line),
// followed by an ordinary CSV table.

#include <chrono>
#include <cmath>
#include <ctime>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "imagunit/audit.hpp"
#include "imagunit/config.hpp"
#include "imagunit/deformed.hpp"
#include "imagunit/eigenstates.hpp"
#include "imagunit/quat_dynamics.hpp"

namespace imagunit::scenario {

namespace fs = std::filesystem;
using config::ScenarioConfig;

struct Options {
  fs::path out_dir = ".";
  bool timestamp = true;
};

struct Outcome {
  int status = 0;  // 0 pass, 1 audit failure
  std::string summary;
  std::vector<fs::path> files;
};

namespace detail {

inline std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf + "\n";
}

inline void write_header(std::ostream& os, const ScenarioConfig& c, const Options& o) {
  if (o.timestamp) os << timestamp_line();
  std::istringstream yaml(config::to_yaml(c));
  for (std::string line; std::getline(yaml, line);)
    if (!line.empty()) os << "# " << line << '\n';
}

inline std::ofstream open(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write '" + p.string() + "'");
  return f;
}

inline void write_effective(const ScenarioConfig& c, const Options& o, Outcome& out) {
  const fs::path p = o.out_dir / "effective.yaml";
  auto f = open(p);
  f << config::to_yaml(c);
  out.files.push_back(p);
}

inline ComplexField sample(const config::FormSpec& f, const Grid1D& g) {
  return ComplexField::generate(g, [&f](double x) { return f(x); });
}

inline ThetaField make_theta(const config::ThetaSpec& t) {
  if (t.form == "linear") return ThetaField::linear(t.value, t.rate, t.slope);
  if (t.form == "sine") return ThetaField::sine(t.value, t.amplitude, t.k, t.phase, t.rate);
  return ThetaField::constant(t.value);
}

/// Initial profile: a grid eigenstate of Re V, or a normalized Gaussian.
struct Initial {
  ComplexField state;
  std::optional<double> energy;
};

inline Initial initial_state(const ScenarioConfig& c, const Grid1D& g, const ComplexField& V) {
  if (c.state.initial == "eigenstate") {
    const RealField Vr = map(V, [](Complex v) { return v.real(); });
    const std::size_t m = g.size() - 2;
    if (static_cast<std::size_t>(c.state.level) > m)
      throw ConfigurationError("field 'state.level': grid has only " + std::to_string(m) + " levels");
    const auto st = box_eigenstates(Vr, c.physics.hbar, c.physics.mass, static_cast<std::size_t>(c.state.level));
    return {st.back().state, st.back().energy};
  }
  if (!(c.state.width > 0.0)) throw ConfigurationError("field 'state.width': must be positive");
  const std::size_t last = g.size() - 1;
  ComplexField psi = ComplexField::generate(g, [&](double x) {
    const double u = (x - c.state.center) / c.state.width;
    return std::exp(-0.5 * u * u) * std::polar(1.0, c.state.k0 * x);
  });
  if (!g.periodic()) psi = map_indexed(psi, [last](std::size_t i, Complex v) { return i == 0 || i == last ? Complex{} : v; });
  const double n = l2_norm(psi);
  return {map(psi, [n](Complex v) { return v / n; }), std::nullopt};
}

/// Time step: the configured dt or half the stability bound, shrunk so that
/// `span` is a whole number of steps.
struct Stepping {
  double dt;
  long steps;
};

inline Stepping stepping(const ScenarioConfig& c, const Grid1D& g, double span) {
  const double bound = stability_bound(g, c.physics.hbar, c.physics.mass);
  const double target = c.run.dt > 0.0 ? c.run.dt : 0.5 * bound;
  if (target > bound)
    throw ConfigurationError("field 'run.dt': " + csv::number(target) + " exceeds the stability bound " +
                             csv::number(bound));
  if (span <= 0.0) return {target, 0};
  const long n = static_cast<long>(std::ceil(span / target - 1e-9));
  return {span / static_cast<double>(n), n};
}

inline bool is_row(long k, long n, int stride) { return k % stride == 0 || k == n; }

}  // namespace detail

inline Outcome run_audit(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  audit::Config ac{c.audit.tolerance, c.audit.samples, c.audit.threads};
  const audit::Report r = audit::audit_all(c.seed, ac, c.audit.cases);
  Outcome out;
  const fs::path p = o.out_dir / "audit_report.json";
  auto f = detail::open(p);
  f << audit::to_json(r).dump(2) << '\n';
  out.files.push_back(p);
  detail::write_effective(c, o, out);
  audit::print_table(log, r);
  out.status = r.passed() ? 0 : 1;
  out.summary = "audit seed=" + std::to_string(c.seed) + ": " + std::to_string(r.count(audit::Status::Pass)) +
                " pass, " + std::to_string(r.count(audit::Status::Fail)) + " fail, " +
                std::to_string(r.count(audit::Status::Discrepancy)) + " discrepancy";
  return out;
}

inline Outcome run_evolve_complex(const ScenarioConfig& c, const Options& o) {
  const Grid1D g = c.make_grid();
  const DeformedSetup s{detail::make_theta(c.theta), detail::sample(c.V, g), c.physics.hbar, c.physics.mass};
  s.validate();
  const detail::Initial init = detail::initial_state(c, g, s.V);
  const detail::Stepping st = detail::stepping(c, g, c.run.t_end);

  Outcome out;
  const fs::path p = o.out_dir / "evolve_complex.csv";
  auto f = detail::open(p);
  detail::write_header(f, c, o);
  f << "t,norm,ln_norm_rate,residual_deformed_continuity,residual_ansatz_continuity,"
       "beta_integral,gamma_integral,kappa_integral,lambda_integral\n";

  ComplexField psi = init.state;
  double last_rate = 0.0;
  for (long k = 0; k <= st.steps; ++k) {
    const double t = static_cast<double>(k) * st.dt;
    if (detail::is_row(k, st.steps, c.run.output_stride)) {
      const ContinuityReport d = continuity_deformed(psi, s, t);
      const ContinuityReport a = continuity_ansatz(psi, s, t);
      last_rate = ln_norm_rate(psi, deformed_rhs(psi, s, t));
      const double row[] = {t,
                            l2_norm(psi),
                            last_rate,
                            d.max_residual,
                            a.max_residual,
                            a.integral("beta"),
                            a.integral("gamma"),
                            d.integral("kappa"),
                            d.integral("lambda")};
      csv::write_row(f, row);
    }
    if (k < st.steps) psi = step_deformed(psi, s, t, st.dt);
  }
  out.files.push_back(p);

  const fs::path ps = o.out_dir / "evolve_complex_final.csv";
  auto fs_ = detail::open(ps);
  detail::write_header(fs_, c, o);
  csv::write_field(fs_, psi);
  out.files.push_back(ps);
  detail::write_effective(c, o, out);

  std::ostringstream sum;
  sum << "evolve-complex steps=" << st.steps << " dt=" << csv::number(st.dt) << " final_norm="
      << csv::number(l2_norm(psi)) << " ln_norm_rate=" << csv::number(last_rate);
  if (init.energy)
    sum << " expected_rate=" << csv::number(amplitude_decay(*init.energy, s.theta.value(0.0, 0.0), c.physics.hbar));
  out.summary = sum.str();
  return out;
}

/// Lazily stepped trajectory that keeps a short window of states.
class Trajectory {
 public:
  Trajectory(QuatField psi0, std::function<QuatField(const QuatField&)> step)
      : step_(std::move(step)) {
    buf_.push_back(std::move(psi0));
  }
  const QuatField& at(long k) {
    while (base_ + static_cast<long>(buf_.size()) <= k) buf_.push_back(step_(buf_.back()));
    return buf_[static_cast<std::size_t>(k - base_)];
  }
  void forget_before(long k) {
    while (base_ < k && buf_.size() > 1) {
      buf_.pop_front();
      ++base_;
    }
  }

 private:
  std::function<QuatField(const QuatField&)> step_;
  std::deque<QuatField> buf_;
  long base_ = 0;
};

inline Outcome run_evolve_quat(const ScenarioConfig& c, const Options& o) {
  if (c.schedule.family != "stationary")
    throw ConfigurationError("field 'schedule.family': evolve-quat runs the stationary schedule");
  const double hbar = c.physics.hbar, mass = c.physics.mass;
  const Grid1D g = c.make_grid();
  const QuatPotential pot{map(detail::sample(c.alpha, g), [](Complex v) { return v.real(); }),
                          detail::sample(c.beta, g), detail::sample(c.V, g), detail::sample(c.W, g)};
  pot.validate();
  const QuatField eta(g, make_eta(c.schedule.omega0 - c.schedule.gamma0));
  const RealField xi_grad(g, 0.0);
  const detail::Initial init = detail::initial_state(c, g, pot.V);

  std::optional<double> period;
  if (init.energy && *init.energy != 0.0) period = 2.0 * std::numbers::pi * hbar / std::abs(*init.energy);
  if (c.run.periods > 0.0 && !period)
    throw ConfigurationError("field 'run.periods': needs an eigenstate with nonzero energy");

  // With a period available, dt divides it exactly so Ψ(t − T) is on the time grid.
  detail::Stepping st{};
  long period_steps = 0;
  if (period) {
    const detail::Stepping per = detail::stepping(c, g, *period);
    period_steps = per.steps;
    const double span = c.run.periods > 0.0 ? c.run.periods * *period : c.run.t_end;
    st = {per.dt, static_cast<long>(std::llround(span / per.dt))};
  } else {
    st = detail::stepping(c, g, c.run.t_end);
  }
  const double energy = init.energy ? schedule_energy_for_level(*init.energy) : 0.0;
  const QuatField psi0 = right_mul(to_quat(init.state), stationary_lambda(energy, c.schedule.gamma0, c.schedule.omega0, 0.0, hbar));

  Outcome out;
  const fs::path p = o.out_dir / "evolve_quat.csv";
  auto f = detail::open(p);
  detail::write_header(f, c, o);
  f << "t,norm,residual_schrodinger_q,residual_continuity_q,B_integral,G_integral,lambda_period_error\n";

  Trajectory traj(psi0, [&](const QuatField& q) { return step_quaternionic(q, pot, eta, st.dt, hbar, mass); });
  std::map<long, QuatField> history;
  double final_error = std::numeric_limits<double>::quiet_NaN();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (long k = 0; k <= st.steps; ++k) {
    if (!detail::is_row(k, st.steps, c.run.output_stride)) continue;
    const QuatField psi = traj.at(k);
    // time derivative from neighbouring steps, one-sided at the ends
    double pde = nan;
    if (st.steps >= 2) {
      QuatField psi_t(g);
      if (k == 0) {
        psi_t = (1.0 / (2.0 * st.dt)) * (-3.0 * psi + 4.0 * traj.at(1) - traj.at(2));
      } else if (k == st.steps) {
        psi_t = (1.0 / (2.0 * st.dt)) * (3.0 * psi - 4.0 * traj.at(k - 1) + traj.at(k - 2));
      } else {
        psi_t = (1.0 / (2.0 * st.dt)) * (traj.at(k + 1) - traj.at(k - 1));
      }
      pde = max_abs_diff(hbar * mul(psi_t, eta), apply_hamiltonian_q(psi, pot, hbar, mass));
    }
    const QuatContinuityReport cr = continuity_q(psi, pot, eta, xi_grad, hbar, mass);
    double lpe = nan;
    if (period_steps > 0 && k >= period_steps) {
      const auto it = history.find(k - period_steps);
      if (it != history.end()) lpe = max_abs_diff(psi, it->second);
      history.erase(history.begin(), history.lower_bound(k - period_steps + 1));
    }
    if (period_steps > 0) history.emplace(k, psi);
    final_error = lpe;
    const double row[] = {static_cast<double>(k) * st.dt, l2_norm(psi), pde, cr.report.max_residual,
                          cr.report.integral("B"), cr.report.integral("G"), lpe};
    csv::write_row(f, row);
    traj.forget_before(k - 2);
  }
  out.files.push_back(p);

  const fs::path ps = o.out_dir / "evolve_quat_final.csv";
  auto fs_ = detail::open(ps);
  detail::write_header(fs_, c, o);
  csv::write_field(fs_, traj.at(st.steps));
  out.files.push_back(ps);
  detail::write_effective(c, o, out);

  std::ostringstream sum;
  sum << "evolve-quat steps=" << st.steps << " dt=" << csv::number(st.dt);
  if (period) sum << " period=" << csv::number(*period) << " period_steps=" << period_steps;
  sum << " final_period_error=" << csv::number(final_error);
  out.summary = sum.str();
  return out;
}

inline Outcome run_eigen_reduce(const ScenarioConfig& c, const Options& o) {
  if (c.grid.boundary != "box") throw ConfigurationError("field 'grid.boundary': eigen-reduce needs a box grid");
  const double hbar = c.physics.hbar, mass = c.physics.mass;
  const Grid1D g = c.make_grid();
  const ComplexField V = map(detail::sample(c.V, g), [](Complex v) { return Complex(v.real()); });
  const RealField Vr = map(V, [](Complex v) { return v.real(); });
  if (static_cast<std::size_t>(c.state.level) > g.size() - 2)
    throw ConfigurationError("field 'state.level': grid has only " + std::to_string(g.size() - 2) + " levels");
  const Eigenstate e = box_eigenstates(Vr, hbar, mass, static_cast<std::size_t>(c.state.level)).back();
  const Vec3 k{c.schedule.k}, gv{c.schedule.g}, off{c.schedule.offset};
  const double K = norm2(k) + norm2(gv);
  const double energy = eigen_shift_energy(e.energy, K, hbar, mass);
  const double printed = eigen_shift_energy_printed(e.energy, K);
  SpaceLinear fam = SpaceLinear::make(energy, k, gv, c.schedule.gamma0, c.schedule.omega0);
  const SpaceLinear fam_printed = SpaceLinear::make(printed, k, gv, c.schedule.gamma0, c.schedule.omega0);
  const QuatField phi = to_quat(e.state);
  const AngleSchedule sch = make_schedule(fam, hbar);
  const AngleSchedule sch_printed = make_schedule(fam_printed, hbar);

  Outcome out;
  const fs::path p = o.out_dir / "eigen_reduce.csv";
  auto f = detail::open(p);
  detail::write_header(f, c, o);
  f << "t,K,K_identity_residual,level_energy,schedule_energy,residual,residual_as_printed\n";
  constexpr int samples = 16;
  double worst = 0.0;
  double measured_K = 0.0;
  for (int j = 0; j <= samples; ++j) {
    const double t = c.run.t_end * j / samples;
    const EigenReduction er = eigen_reduction_check(fam, off, t, hbar);
    const double r = full_pde_residual(phi, sch, V, t, hbar, mass, off);
    const double rp = full_pde_residual(phi, sch_printed, V, t, hbar, mass, off);
    worst = std::max(worst, r);
    measured_K = er.K;
    const double row[] = {t, er.K, er.residual, e.energy, energy, r, rp};
    csv::write_row(f, row);
  }
  out.files.push_back(p);

  const fs::path ps = o.out_dir / "eigen_reduce_state.csv";
  auto fs_ = detail::open(ps);
  detail::write_header(fs_, c, o);
  csv::write_field(fs_, e.state);
  out.files.push_back(ps);
  detail::write_effective(c, o, out);

  out.summary = "eigen-reduce K=" + csv::number(measured_K) + " level_energy=" + csv::number(e.energy) +
                " schedule_energy=" + csv::number(energy) + " max_residual=" + csv::number(worst);
  return out;
}

/// Runs the configured mode, writing into o.out_dir (created if missing).
inline Outcome run(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  config::validate(c);
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw ConfigurationError("cannot create output directory '" + o.out_dir.string() + "': " + ec.message());
  if (c.mode == "audit") return run_audit(c, o, log);
  if (c.mode == "evolve-complex") return run_evolve_complex(c, o);
  if (c.mode == "evolve-quat") return run_evolve_quat(c, o);
  return run_eigen_reduce(c, o);
}

}  // namespace imagunit::scenario
