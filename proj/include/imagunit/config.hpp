#pragma once

// Scenario configuration: a YAML document of top-level scalars and one level
// of nested maps. Unknown keys are rejected so typos surface as errors.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "imagunit/csv.hpp"
#include "imagunit/errors.hpp"
#include "imagunit/grid.hpp"

namespace imagunit::config {

struct GridSpec {
  std::size_t n = 64;
  double length = 1.0;
  std::string boundary = "box";  // box | periodic
};

struct PhysicsSpec {
  double hbar = 1.0;
  double mass = 1.0;
};

/// Named analytic profile times the complex coefficient amplitude + i·amplitude_im.
///   constant       1
///   linear         x − center
///   sine           sin(k·x + phase)
///   gaussian-well  −exp(−(x − center)²/(2·width²))
///   box            1 for |x − center| ≤ width/2, else 0
struct FormSpec {
  std::string form = "constant";
  double amplitude = 0.0;
  double amplitude_im = 0.0;
  double center = 0.5;
  double width = 0.1;
  double k = 1.0;
  double phase = 0.0;

  double profile(double x) const {
    if (form == "constant") return 1.0;
    if (form == "linear") return x - center;
    if (form == "sine") return std::sin(k * x + phase);
    if (form == "gaussian-well") return -std::exp(-(x - center) * (x - center) / (2.0 * width * width));
    return std::abs(x - center) <= width / 2.0 ? 1.0 : 0.0;  // box
  }
  Complex operator()(double x) const { return Complex(amplitude, amplitude_im) * profile(x); }
};

/// θ(x, t): constant (value), linear (value + rate·t + slope·x) or
/// sine (value + amplitude·sin(k·x + phase) + rate·t).
struct ThetaSpec {
  std::string form = "constant";
  double value = 0.0;
  double rate = 0.0;
  double slope = 0.0;
  double amplitude = 0.0;
  double k = 1.0;
  double phase = 0.0;
};

struct StateSpec {
  std::string initial = "eigenstate";  // eigenstate | gaussian
  int level = 1;
  double center = 0.5;
  double width = 0.1;
  double k0 = 0.0;
};

/// Stationary schedule for evolve-quat; k and g select the space-linear
/// schedule for eigen-reduce.
struct ScheduleSpec {
  std::string family = "stationary";  // stationary | space-linear
  double gamma0 = 0.0;
  double omega0 = 0.0;
  std::array<double, 3> k{0.0, 1.0, 0.0};
  std::array<double, 3> g{0.0, 0.0, 2.0};
  std::array<double, 3> offset{0.0, 0.3, -0.2};
};

struct RunSpec {
  double t_end = 1.0;
  double dt = 0.0;  // 0 picks half the stability bound
  int output_stride = 1;
  double periods = 0.0;  // evolve-quat: overrides t_end with periods·2πħ/E
};

struct AuditSpec {
  std::optional<double> tolerance;
  int samples = 1000;
  unsigned threads = 1;
  std::vector<std::string> cases;  // empty runs the whole registry
};

struct ScenarioConfig {
  std::string mode = "audit";  // audit | evolve-complex | evolve-quat | eigen-reduce
  std::uint64_t seed = 42;
  GridSpec grid;
  PhysicsSpec physics;
  FormSpec V;
  FormSpec W;
  FormSpec alpha;
  FormSpec beta;
  ThetaSpec theta;
  StateSpec state;
  ScheduleSpec schedule;
  RunSpec run;
  AuditSpec audit;

  Grid1D make_grid() const {
    return grid.boundary == "periodic" ? Grid1D::periodic(grid.n, grid.length) : Grid1D::box(grid.n, grid.length);
  }
};

namespace detail {

inline std::string where(const YAML::Node& n, const std::string& key) {
  const YAML::Mark m = n.Mark();
  return "line " + std::to_string(m.line + 1) + ", field '" + key + "'";
}

template <class T>
void read(const YAML::Node& parent, const std::string& section, const char* key, T& out) {
  const YAML::Node n = parent[key];
  if (!n) return;
  const std::string full = section.empty() ? key : section + "." + key;
  try {
    out = n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigurationError(where(n, full) + ": cannot read value '" + (n.IsScalar() ? n.Scalar() : "...") + "'");
  }
}

inline void read_vec(const YAML::Node& parent, const std::string& section, const char* key, std::array<double, 3>& out) {
  const YAML::Node n = parent[key];
  if (!n) return;
  const std::string full = section + "." + key;
  if (!n.IsSequence() || n.size() != 3) throw ConfigurationError(where(n, full) + ": expected a list of three numbers");
  try {
    for (std::size_t i = 0; i < 3; ++i) out[i] = n[i].as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigurationError(where(n, full) + ": expected a list of three numbers");
  }
}

inline void only_keys(const YAML::Node& n, const std::string& section, const std::set<std::string>& allowed) {
  if (!n.IsMap()) throw ConfigurationError(where(n, section) + ": expected a table");
  for (const auto& kv : n) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key))
      throw ConfigurationError(where(kv.first, section.empty() ? key : section + "." + key) + ": unknown key");
  }
}

inline void one_of(const std::string& value, const std::set<std::string>& allowed, const std::string& field) {
  if (allowed.count(value)) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ConfigurationError("field '" + field + "': '" + value + "' is not one of " + list);
}

inline FormSpec read_form(const YAML::Node& root, const char* key) {
  FormSpec f;
  const YAML::Node n = root[key];
  if (!n) return f;
  only_keys(n, key, {"form", "amplitude", "amplitude_im", "center", "width", "k", "phase"});
  read(n, key, "form", f.form);
  read(n, key, "amplitude", f.amplitude);
  read(n, key, "amplitude_im", f.amplitude_im);
  read(n, key, "center", f.center);
  read(n, key, "width", f.width);
  read(n, key, "k", f.k);
  read(n, key, "phase", f.phase);
  one_of(f.form, {"constant", "linear", "sine", "gaussian-well", "box"}, std::string(key) + ".form");
  return f;
}

inline YAML::Node num(double v) { return YAML::Node(csv::number(v)); }

inline YAML::Node emit_form(const FormSpec& f) {
  YAML::Node n;
  n["form"] = f.form;
  n["amplitude"] = num(f.amplitude);
  n["amplitude_im"] = num(f.amplitude_im);
  n["center"] = num(f.center);
  n["width"] = num(f.width);
  n["k"] = num(f.k);
  n["phase"] = num(f.phase);
  return n;
}

inline YAML::Node emit_vec(const std::array<double, 3>& v) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (double x : v) n.push_back(num(x));
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

}  // namespace detail

/// Checks ranges that do not need the grid; dt against the stability bound
/// is checked by the runner.
inline void validate(const ScenarioConfig& c) {
  detail::one_of(c.mode, {"audit", "evolve-complex", "evolve-quat", "eigen-reduce"}, "mode");
  detail::one_of(c.grid.boundary, {"box", "periodic"}, "grid.boundary");
  detail::one_of(c.theta.form, {"constant", "linear", "sine"}, "theta.form");
  detail::one_of(c.state.initial, {"eigenstate", "gaussian"}, "state.initial");
  detail::one_of(c.schedule.family, {"stationary", "space-linear"}, "schedule.family");
  if (c.grid.n < 8) throw ConfigurationError("field 'grid.n': need at least 8 points");
  if (!(c.grid.length > 0.0)) throw ConfigurationError("field 'grid.length': must be positive");
  if (!(c.physics.hbar > 0.0)) throw ConfigurationError("field 'physics.hbar': must be positive");
  if (!(c.physics.mass > 0.0)) throw ConfigurationError("field 'physics.mass': must be positive");
  if (c.state.level < 1) throw ConfigurationError("field 'state.level': levels start at 1");
  if (!(c.run.t_end >= 0.0)) throw ConfigurationError("field 'run.t_end': must be non-negative");
  if (c.run.dt < 0.0) throw ConfigurationError("field 'run.dt': must be non-negative");
  if (c.run.output_stride < 1) throw ConfigurationError("field 'run.output_stride': must be at least 1");
  if (c.run.periods < 0.0) throw ConfigurationError("field 'run.periods': must be non-negative");
  if (c.audit.samples < 10) throw ConfigurationError("field 'audit.samples': need at least 10");
  if (c.audit.threads < 1) throw ConfigurationError("field 'audit.threads': need at least 1");
  if (c.audit.tolerance && !(*c.audit.tolerance >= 0.0))
    throw ConfigurationError("field 'audit.tolerance': must be non-negative");
  if (c.state.initial == "eigenstate" && c.grid.boundary != "box" && c.mode != "audit")
    throw ConfigurationError("field 'state.initial': eigenstates need a box grid");
}

inline ScenarioConfig parse(const YAML::Node& root) {
  using detail::read;
  ScenarioConfig c;
  if (!root || root.IsNull()) return c;
  detail::only_keys(root, "", {"mode", "seed", "grid", "physics", "V", "W", "alpha", "beta", "theta", "state",
                               "schedule", "run", "audit"});
  read(root, "", "mode", c.mode);
  read(root, "", "seed", c.seed);

  if (const YAML::Node n = root["grid"]) {
    detail::only_keys(n, "grid", {"n", "length", "dx", "boundary"});
    read(n, "grid", "n", c.grid.n);
    read(n, "grid", "boundary", c.grid.boundary);
    read(n, "grid", "length", c.grid.length);
    if (n["dx"]) {
      if (n["length"]) throw ConfigurationError(detail::where(n["dx"], "grid.dx") + ": give either length or dx");
      double dx = 0.0;
      read(n, "grid", "dx", dx);
      const double cells = c.grid.boundary == "periodic" ? double(c.grid.n) : double(c.grid.n) - 1.0;
      c.grid.length = dx * cells;
    }
  }
  if (const YAML::Node n = root["physics"]) {
    detail::only_keys(n, "physics", {"hbar", "mass"});
    read(n, "physics", "hbar", c.physics.hbar);
    read(n, "physics", "mass", c.physics.mass);
  }
  c.V = detail::read_form(root, "V");
  c.W = detail::read_form(root, "W");
  c.alpha = detail::read_form(root, "alpha");
  c.beta = detail::read_form(root, "beta");
  if (const YAML::Node n = root["theta"]) {
    detail::only_keys(n, "theta", {"form", "value", "rate", "slope", "amplitude", "k", "phase"});
    read(n, "theta", "form", c.theta.form);
    read(n, "theta", "value", c.theta.value);
    read(n, "theta", "rate", c.theta.rate);
    read(n, "theta", "slope", c.theta.slope);
    read(n, "theta", "amplitude", c.theta.amplitude);
    read(n, "theta", "k", c.theta.k);
    read(n, "theta", "phase", c.theta.phase);
  }
  if (const YAML::Node n = root["state"]) {
    detail::only_keys(n, "state", {"initial", "level", "center", "width", "k0"});
    read(n, "state", "initial", c.state.initial);
    read(n, "state", "level", c.state.level);
    read(n, "state", "center", c.state.center);
    read(n, "state", "width", c.state.width);
    read(n, "state", "k0", c.state.k0);
  }
  if (const YAML::Node n = root["schedule"]) {
    detail::only_keys(n, "schedule", {"family", "gamma0", "omega0", "k", "g", "offset"});
    read(n, "schedule", "family", c.schedule.family);
    read(n, "schedule", "gamma0", c.schedule.gamma0);
    read(n, "schedule", "omega0", c.schedule.omega0);
    detail::read_vec(n, "schedule", "k", c.schedule.k);
    detail::read_vec(n, "schedule", "g", c.schedule.g);
    detail::read_vec(n, "schedule", "offset", c.schedule.offset);
  }
  if (const YAML::Node n = root["run"]) {
    detail::only_keys(n, "run", {"t_end", "dt", "output_stride", "periods"});
    read(n, "run", "t_end", c.run.t_end);
    read(n, "run", "dt", c.run.dt);
    read(n, "run", "output_stride", c.run.output_stride);
    read(n, "run", "periods", c.run.periods);
  }
  if (const YAML::Node n = root["audit"]) {
    detail::only_keys(n, "audit", {"tolerance", "samples", "threads", "cases"});
    if (n["tolerance"]) {
      double tol = 0.0;
      read(n, "audit", "tolerance", tol);
      c.audit.tolerance = tol;
    }
    read(n, "audit", "samples", c.audit.samples);
    read(n, "audit", "threads", c.audit.threads);
    read(n, "audit", "cases", c.audit.cases);
  }
  validate(c);
  return c;
}

/// Parses YAML text; syntax errors carry the line and column.
inline ScenarioConfig parse_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigurationError("line " + std::to_string(e.mark.line + 1) + ", column " +
                             std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  return parse(root);
}

inline ScenarioConfig load(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigurationError("cannot read config file '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw ConfigurationError(path + ": line " + std::to_string(e.mark.line + 1) + ", column " +
                             std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  try {
    return parse(root);
  } catch (const ConfigurationError& e) {
    throw ConfigurationError(path + ": " + e.what());
  }
}

/// Effective configuration with every default filled in. Parsing the result
/// gives back the same configuration.
inline std::string to_yaml(const ScenarioConfig& c) {
  using detail::num;
  YAML::Node root;
  root["mode"] = c.mode;
  root["seed"] = c.seed;
  root["grid"]["n"] = c.grid.n;
  root["grid"]["length"] = num(c.grid.length);
  root["grid"]["boundary"] = c.grid.boundary;
  root["physics"]["hbar"] = num(c.physics.hbar);
  root["physics"]["mass"] = num(c.physics.mass);
  root["V"] = detail::emit_form(c.V);
  root["W"] = detail::emit_form(c.W);
  root["alpha"] = detail::emit_form(c.alpha);
  root["beta"] = detail::emit_form(c.beta);
  YAML::Node th;
  th["form"] = c.theta.form;
  th["value"] = num(c.theta.value);
  th["rate"] = num(c.theta.rate);
  th["slope"] = num(c.theta.slope);
  th["amplitude"] = num(c.theta.amplitude);
  th["k"] = num(c.theta.k);
  th["phase"] = num(c.theta.phase);
  root["theta"] = th;
  YAML::Node st;
  st["initial"] = c.state.initial;
  st["level"] = c.state.level;
  st["center"] = num(c.state.center);
  st["width"] = num(c.state.width);
  st["k0"] = num(c.state.k0);
  root["state"] = st;
  YAML::Node sc;
  sc["family"] = c.schedule.family;
  sc["gamma0"] = num(c.schedule.gamma0);
  sc["omega0"] = num(c.schedule.omega0);
  sc["k"] = detail::emit_vec(c.schedule.k);
  sc["g"] = detail::emit_vec(c.schedule.g);
  sc["offset"] = detail::emit_vec(c.schedule.offset);
  root["schedule"] = sc;
  YAML::Node rn;
  rn["t_end"] = num(c.run.t_end);
  rn["dt"] = num(c.run.dt);
  rn["output_stride"] = c.run.output_stride;
  rn["periods"] = num(c.run.periods);
  root["run"] = rn;
  YAML::Node au;
  if (c.audit.tolerance) au["tolerance"] = num(*c.audit.tolerance);
  au["samples"] = c.audit.samples;
  au["threads"] = c.audit.threads;
  YAML::Node cases(YAML::NodeType::Sequence);
  for (const auto& s : c.audit.cases) cases.push_back(s);
  cases.SetStyle(YAML::EmitterStyle::Flow);
  au["cases"] = cases;
  root["audit"] = au;

  YAML::Emitter out;
  out << root;
  return std::string(out.c_str()) + "\n";
}

}  // namespace imagunit::config
