#include <algorithm>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "imagunit/audit.hpp"

using namespace imagunit;

TEST(Audit, RegistryHasEveryIdentity) {
  const std::vector<std::string> required = {
      "quat_associativity", "eta_squared", "eta_unit_norm", "complex_eta_failure", "complex_eta_unit",
      "lambda_unit_norm", "lambda_dot_constant_phases", "lambda_dot_general", "lambda_eta_conjugation",
      "constant_phases_real", "fdriven_j_elimination", "singular_f_constant", "stationary_lambda",
      "lambda_gradient", "lambda_laplacian", "eigen_reduction_constant", "step_doubling", "decay_law",
      "gauge_trivial", "gauge_parity", "continuity_deformed", "continuity_deformed_lambda", "continuity_ansatz",
      "beta_real_potential", "ansatz_amplitude", "momentum_complex", "momentum_complex_squared",
      "commutator_complex", "commutator_complex_as_printed", "chi_const_theta", "chi_linear_theta",
      "chi_log_theta", "chi_log_theta_as_printed", "separated_const_theta", "separated_general_theta",
      "hamiltonian_q_composition", "momentum_q_phase_invariance", "density_lambda_cancellation",
      "current_plane_wave", "observables_real", "source_B_components", "source_G_complex_analogy",
      "continuity_q_sources", "schrodinger_q_closed_form", "separation_eigen", "full_pde_reduces",
      "eigen_reduction_pde", "eigen_shift_as_printed", "commutator_q"};
  const auto names = audit::names();
  const std::set<std::string> have(names.begin(), names.end());
  EXPECT_EQ(have.size(), names.size()) << "duplicate case names";
  for (const auto& n : required) EXPECT_TRUE(have.count(n)) << n;
}

TEST(Audit, UnknownNameListsValidNames) {
  try {
    audit::audit_one("no_such_case", 1);
    FAIL();
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("eta_squared"), std::string::npos);
  }
}

TEST(Audit, EtaSquaredCase) {
  const audit::CaseResult r = audit::audit_one("eta_squared", 42);
  EXPECT_EQ(r.status, audit::Status::Pass);
  EXPECT_LE(r.max_residual, 1e-15);
}

TEST(Audit, DecayLawCase) {
  const audit::CaseResult r = audit::audit_one("decay_law", 42);
  EXPECT_EQ(r.status, audit::Status::Pass);
  EXPECT_LE(r.max_residual, 1e-6);
}

TEST(Audit, AsPrintedCommutatorIsADiscrepancy) {
  const audit::CaseResult r = audit::audit_one("commutator_complex_as_printed", 42);
  EXPECT_EQ(r.status, audit::Status::Discrepancy);
  EXPECT_GT(r.max_residual, 0.1);
}

TEST(Audit, ZeroToleranceFailsEverything) {
  audit::Config cfg;
  cfg.tolerance = 0.0;
  const audit::Report r = audit::audit_all(7, cfg, {"eta_squared", "quat_associativity", "decay_law"});
  for (const auto& c : r.cases) EXPECT_EQ(c.status, audit::Status::Fail) << c.name;
}

TEST(Audit, CompanionIsPulledIn) {
  const audit::Report r = audit::audit_all(7, {}, {"eigen_shift_as_printed"});
  ASSERT_EQ(r.cases.size(), 2u);
  EXPECT_EQ(r.cases[0].name, "eigen_reduction_pde");
  EXPECT_EQ(r.cases[1].status, audit::Status::Discrepancy);
}

TEST(Audit, SubsetDeterministicAcrossThreads) {
  const std::vector<std::string> subset = {"eta_squared", "gauge_parity", "continuity_q_sources", "lambda_gradient",
                                           "observables_real", "chi_log_theta"};
  audit::Config one, many;
  many.threads = 4;
  EXPECT_EQ(audit::to_json(audit::audit_all(99, one, subset)).dump(),
            audit::to_json(audit::audit_all(99, many, subset)).dump());
}

TEST(Audit, JsonRecordShape) {
  const audit::Report r = audit::audit_all(3, {}, {"eta_unit_norm"});
  const auto j = audit::to_json(r);
  const auto& c = j["cases"][0];
  for (const char* k : {"name", "equation_ref", "max_residual", "tolerance", "status", "note"})
    EXPECT_TRUE(c.contains(k)) << k;
  EXPECT_EQ(j["summary"]["total"], 1);
}
