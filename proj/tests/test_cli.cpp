#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "imagunit/deformed.hpp"
#include "imagunit/eigenstates.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + IMAGUNIT_CLI + " " + args + " > /dev/null 2>&1";
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("imagunit_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

/// Data rows of a CSV with "# " comment lines and a header row.
std::vector<std::vector<double>> rows(const fs::path& p, std::vector<std::string>* header = nullptr) {
  std::ifstream f(p);
  std::vector<std::vector<double>> out;
  bool seen_header = false;
  for (std::string line; std::getline(f, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (!seen_header) {
      seen_header = true;
      if (header) *header = cells;
      continue;
    }
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(std::strtod(c.c_str(), nullptr));
    out.push_back(r);
  }
  return out;
}

const std::string configs = IMAGUNIT_CONFIGS;

}  // namespace

TEST(Cli, MinimalAuditWritesReport) {
  const fs::path d = scratch("audit");
  write(d / "a.yaml", "mode: audit\naudit: {cases: [eta_squared, decay_law]}\n");
  EXPECT_EQ(run("audit --config " + (d / "a.yaml").string()), 0);
  EXPECT_TRUE(fs::exists(d / "audit_report.json"));
  EXPECT_NE(slurp(d / "audit_report.json").find("\"equation_ref\""), std::string::npos);
}

TEST(Cli, AuditFailureExitsOne) {
  const fs::path d = scratch("audit_fail");
  write(d / "a.yaml", "audit: {tolerance: 0, cases: [eta_squared]}\n");
  EXPECT_EQ(run("audit --config " + (d / "a.yaml").string()), 1);
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  const fs::path d = scratch("bad");
  write(d / "bad.yaml", "mode: evolve-complex\ngrid: {n: 64, boundry: box}\n");
  EXPECT_EQ(run("run --config " + (d / "bad.yaml").string()), 2);
  write(d / "dt.yaml", "mode: evolve-complex\nrun: {dt: 0.1}\n");
  EXPECT_EQ(run("run --config " + (d / "dt.yaml").string()), 2);
  EXPECT_EQ(run("run --config " + (d / "missing.yaml").string()), 2);
  EXPECT_EQ(run("audit --seed notanumber"), 2);
  EXPECT_EQ(run(""), 2);
  write(d / "case.yaml", "audit: {cases: [no_such_case]}\n");
  EXPECT_EQ(run("audit --config " + (d / "case.yaml").string()), 2);
}

TEST(Cli, DecaySlopeFromCsv) {
  const fs::path d = scratch("decay");
  ASSERT_EQ(run("run --no-timestamp --config " + configs + "/decay.yaml --out " + d.string()), 0);
  const auto r = rows(d / "evolve_complex.csv");
  ASSERT_GT(r.size(), 10u);
  // least-squares slope of ln(norm) against t
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& row : r) {
    const double y = std::log(row[1]);
    st += row[0];
    sy += y;
    stt += row[0] * row[0];
    sty += row[0] * y;
  }
  const double n = static_cast<double>(r.size());
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const imagunit::Grid1D g = imagunit::Grid1D::box(64, 1.0);
  const double E = imagunit::box_eigenstates(g, 1.0, 1.0, 1)[0].energy;
  EXPECT_NEAR(r.back()[0], 5.0, 1e-12);
  EXPECT_NEAR(slope, -E * std::sin(0.3), 1e-5);
}

TEST(Cli, QuaternionicPeriodRecurrence) {
  const fs::path d = scratch("quat");
  ASSERT_EQ(run("run --no-timestamp --config " + configs + "/stationary_quat.yaml --out " + d.string()), 0);
  std::vector<std::string> header;
  const auto r = rows(d / "evolve_quat.csv", &header);
  ASSERT_EQ(header.back(), "lambda_period_error");
  EXPECT_TRUE(std::isnan(r.front().back()));
  EXPECT_LE(r.back().back(), 1e-8);
  for (const auto& row : r) EXPECT_NEAR(row[1], 1.0, 1e-12);
}

TEST(Cli, EigenReduction) {
  const fs::path d = scratch("eigen");
  ASSERT_EQ(run("eigen --no-timestamp --config " + configs + "/eigen.yaml --out " + d.string()), 0);
  const auto r = rows(d / "eigen_reduce.csv");
  ASSERT_FALSE(r.empty());
  for (const auto& row : r) {
    EXPECT_NEAR(row[1], 5.0, 1e-8);
    EXPECT_LE(row[5], 1e-8);
    EXPECT_GT(row[6], 1.0);
  }
}

TEST(Cli, OutputsAreByteIdenticalWithoutTimestamp) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  write(a / "q.yaml", "mode: evolve-quat\ngrid: {n: 32}\nW: {form: sine, amplitude: 0.5}\nrun: {t_end: 0.05, output_stride: 20}\n");
  ASSERT_EQ(run("run --no-timestamp --config " + (a / "q.yaml").string() + " --out " + a.string()), 0);
  ASSERT_EQ(run("run --no-timestamp --config " + (a / "q.yaml").string() + " --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "evolve_quat.csv"), slurp(b / "evolve_quat.csv"));
  ASSERT_EQ(run("run --config " + (a / "q.yaml").string() + " --out " + b.string()), 0);
  EXPECT_EQ(slurp(b / "evolve_quat.csv").rfind("# generated ", 0), 0u);
}

TEST(Cli, EffectiveConfigReproducesRun) {
  const fs::path a = scratch("echo_a"), b = scratch("echo_b");
  write(a / "c.yaml", "mode: evolve-complex\ngrid: {n: 40}\ntheta: {form: linear, value: 0.2, rate: 0.5}\n"
                      "state: {initial: gaussian, center: 0.4, width: 0.08, k0: 10}\nrun: {t_end: 0.02, output_stride: 25}\n");
  ASSERT_EQ(run("run --no-timestamp --config " + (a / "c.yaml").string()), 0);
  fs::copy_file(a / "effective.yaml", b / "c.yaml");
  ASSERT_EQ(run("run --no-timestamp --config " + (b / "c.yaml").string()), 0);
  EXPECT_EQ(slurp(a / "evolve_complex.csv"), slurp(b / "evolve_complex.csv"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path d = scratch("env");
  write(d / "e.yaml", "mode: eigen-reduce\ngrid: {n: 33}\n");
  const fs::path out = d / "elsewhere";
  ASSERT_EQ(run("run --no-timestamp --config " + (d / "e.yaml").string(), "IMAGUNIT_OUT=" + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "eigen_reduce.csv"));
  EXPECT_FALSE(fs::exists(d / "eigen_reduce.csv"));
}
