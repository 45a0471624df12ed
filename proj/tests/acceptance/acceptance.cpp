// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "imagunit/audit.hpp"

using namespace imagunit;
using audit::CaseResult;
using audit::Status;

namespace {

std::map<std::string, CaseResult> by_name(const audit::Report& r) {
  std::map<std::string, CaseResult> m;
  for (const auto& c : r.cases) m.emplace(c.name, c);
  return m;
}

double detail_value(const CaseResult& c, const std::string& key) {
  for (const auto& [k, v] : c.details)
    if (k == key) return v;
  return std::nan("");
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& evidence) {
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", id, title, evidence.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* name, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.3e", name, v);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

bool ok(const CaseResult& c, double bound) { return c.status == Status::Pass && c.max_residual <= bound; }

}  // namespace

int main() {
  const std::uint64_t seed = 42;
  audit::Config cfg;
  cfg.threads = 4;
  const audit::Report full = audit::audit_all(seed, cfg);
  auto c = by_name(full);

  {
    const auto& sq = c["eta_squared"];
    const auto& un = c["eta_unit_norm"];
    const auto& cf = c["complex_eta_failure"];
    const double gap = detail_value(cf, "gap_at_quarter_pi");
    const bool pass = ok(sq, 1e-15) && ok(un, 1e-15) && std::abs(gap - std::abs(Complex(1.0, -1.0))) <= 1e-15;
    report(1, "eta algebra", pass,
           join({fmt("eta2", sq.max_residual), fmt("unit", un.max_residual), fmt("complex_gap_pi/4", gap)}));
  }
  {
    const auto& d = c["lambda_dot_constant_phases"];
    report(2, "Lambda time derivative", ok(d, 1e-8),
           join({fmt("residual", d.max_residual), fmt("order_deviation", detail_value(d, "max_order_deviation"))}));
  }
  {
    const auto& g = c["lambda_dot_general"];
    const auto& e = c["lambda_eta_conjugation"];
    const auto& f = c["fdriven_j_elimination"];
    const auto& s = c["singular_f_constant"];
    const bool pass = ok(g, 1e-8) && ok(e, 1e-8) && detail_value(f, "max_j_component") <= 1e-10 && ok(f, 1e-10) && ok(s, 1e-8);
    report(3, "Lambda eta conj(Lambda) and driven schedules", pass,
           join({fmt("general", g.max_residual), fmt("conj", e.max_residual), fmt("j_part", detail_value(f, "max_j_component")),
                 fmt("singular_c", s.max_residual)}));
  }
  {
    const auto& a = c["decay_law"];
    const auto& n = c["decay_law_evolved"];
    const auto& s = c["decay_sign_dichotomy"];
    report(4, "complex decay law", ok(a, 1e-6) && ok(n, 1e-4) && s.status == Status::Pass,
           join({fmt("ansatz", a.max_residual), fmt("evolved", n.max_residual), fmt("sign_failures", s.max_residual)}));
  }
  {
    const auto& d = c["continuity_deformed"];
    const auto& a = c["continuity_ansatz"];
    const auto& b = c["beta_real_potential"];
    const bool pass = d.status == Status::Pass && a.status == Status::Pass && ok(b, 1e-13);
    report(5, "complex continuity budgets", pass,
           join({fmt("C_deformed", detail_value(d, "C")), fmt("ratio", detail_value(d, "halving_ratio")), fmt("C_ansatz", detail_value(a, "C")),
                 fmt("ratio", detail_value(a, "halving_ratio")), fmt("C_laplacian", detail_value(d, "laplacian_constant")),
                 fmt("beta", b.max_residual)}));
  }
  {
    const auto& b0 = c["source_B_real_potential"];
    const auto& q = c["continuity_q_sources"];
    const auto& r = c["observables_real"];
    const bool pass = ok(b0, 1e-14) && q.status == Status::Pass && detail_value(q, "max_B") > 1e-6 && ok(r, 1e-12);
    report(6, "quaternionic conservation and sources", pass,
           join({fmt("B_real_U", b0.max_residual), fmt("max_B", detail_value(q, "max_B")), fmt("budget", q.max_residual),
                 fmt("ratio", detail_value(q, "halving_ratio")), fmt("imag_ratio", r.max_residual)}));
  }
  {
    const auto& f = c["schrodinger_q_closed_form"];
    const auto& p = c["schrodinger_q_recurrence"];
    report(7, "stationary quaternionic evolution", ok(f, 1e-6) && ok(p, 1e-8),
           join({fmt("closed_form", f.max_residual), fmt("recurrence", p.max_residual), fmt("period", detail_value(p, "period"))}));
  }
  {
    const auto& k = c["eigen_reduction_constant"];
    const auto& e = c["eigen_reduction_pde"];
    const double K = detail_value(k, "K");
    report(8, "eigen-reduction", ok(k, 1e-8) && std::abs(K - 5.0) <= 1e-8 && e.status == Status::Pass,
           join({fmt("K", K), fmt("pde", e.max_residual), fmt("tol", e.tolerance), fmt("ratio", detail_value(e, "halving_ratio"))}));
  }
  {
    const auto& q = c["commutator_q"];
    const auto& d = c["commutator_complex"];
    const auto& p = c["commutator_complex_as_printed"];
    const bool reported = std::isfinite(p.max_residual) && std::isfinite(d.max_residual) && p.status != Status::Fail;
    report(9, "commutators", q.status == Status::Pass && d.status == Status::Pass && reported,
           join({fmt("quaternionic", q.max_residual), fmt("complex_derived", d.max_residual),
                 fmt("printed_vs_operator", p.max_residual)}));
  }
  {
    audit::Config one;
    const std::string a = audit::to_json(audit::audit_all(seed, one)).dump();
    const std::string b = audit::to_json(audit::audit_all(seed, one)).dump();
    const std::string m = audit::to_json(full).dump();
    report(10, "determinism", a == b && a == m,
           std::string("same seed ") + (a == b ? "identical" : "differs") + ", 1 vs 4 threads " +
               (a == m ? "identical" : "differs"));
  }

  std::printf("%zu audit cases: %zu pass, %zu fail, %zu discrepancy\n", full.cases.size(), full.count(Status::Pass),
              full.count(Status::Fail), full.count(Status::Discrepancy));
  return failures == 0 ? 0 : 1;
}
