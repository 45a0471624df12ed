#include <string>

#include <gtest/gtest.h>

#include "imagunit/config.hpp"

using namespace imagunit;

TEST(Config, DefaultsWhenEmpty) {
  const config::ScenarioConfig c = config::parse_text("");
  EXPECT_EQ(c.mode, "audit");
  EXPECT_EQ(c.grid.n, 64u);
  EXPECT_EQ(c.audit.samples, 1000);
}

TEST(Config, ParsesNestedTables) {
  const auto c = config::parse_text(
      "mode: evolve-complex\n"
      "grid: {n: 128, length: 2.0, boundary: periodic}\n"
      "theta: {form: sine, value: 0.2, amplitude: 0.1, k: 3}\n"
      "state: {initial: gaussian, center: 1.0, width: 0.1}\n"
      "V:\n  form: gaussian-well\n  amplitude: 4\n  width: 0.05\n");
  EXPECT_EQ(c.grid.boundary, "periodic");
  EXPECT_DOUBLE_EQ(c.grid.length, 2.0);
  EXPECT_DOUBLE_EQ(c.theta.k, 3.0);
  EXPECT_DOUBLE_EQ(c.V(0.5).real(), -4.0);
}

TEST(Config, DxAlternativeToLength) {
  const auto c = config::parse_text("grid: {n: 65, dx: 0.5, boundary: box}\n");
  EXPECT_DOUBLE_EQ(c.grid.length, 32.0);
}

TEST(Config, UnknownKeyReportsLineAndField) {
  try {
    config::parse_text("mode: audit\nrun:\n  t_end: 1\n  tend: 2\n");
    FAIL();
  } catch (const ConfigurationError& e) {
    const std::string w = e.what();
    EXPECT_NE(w.find("line 4"), std::string::npos) << w;
    EXPECT_NE(w.find("run.tend"), std::string::npos) << w;
  }
}

TEST(Config, BadValueReportsField) {
  try {
    config::parse_text("physics:\n  hbar: abc\n");
    FAIL();
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("physics.hbar"), std::string::npos);
  }
}

TEST(Config, RejectsUnknownForms) {
  EXPECT_THROW(config::parse_text("mode: sideways\n"), ConfigurationError);
  EXPECT_THROW(config::parse_text("V: {form: square}\n"), ConfigurationError);
  EXPECT_THROW(config::parse_text("physics: {mass: -1}\n"), ConfigurationError);
  EXPECT_THROW(config::parse_text("grid: {n: [1,\n"), ConfigurationError);
}

TEST(Config, EffectiveConfigRoundTrips) {
  const auto c = config::parse_text(
      "mode: evolve-quat\nseed: 9\nschedule: {gamma0: 0.1, omega0: 0.7}\nrun: {periods: 2, output_stride: 10}\n"
      "audit: {tolerance: 1e-9, cases: [eta_squared]}\nW: {form: sine, amplitude: 0.3, amplitude_im: 0.1}\n");
  const std::string once = config::to_yaml(c);
  const std::string twice = config::to_yaml(config::parse_text(once));
  EXPECT_EQ(once, twice);
  const auto back = config::parse_text(once);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_DOUBLE_EQ(*back.audit.tolerance, 1e-9);
  EXPECT_DOUBLE_EQ(back.W.amplitude_im, 0.1);
  EXPECT_EQ(back.audit.cases.size(), 1u);
}
