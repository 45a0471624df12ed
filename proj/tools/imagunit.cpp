// imagunit: audit | run | eigen
//
// Exit codes: 0 pass, 1 audit failure, 2 configuration or usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "imagunit/scenario.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool no_timestamp = false;
};

void add_flags(CLI::App* cmd, Flags& f, bool config_required) {
  auto* c = cmd->add_option("--config", f.config, "scenario file (YAML)");
  if (config_required) c->required();
  cmd->add_option("--out", f.out, "output directory (default: next to the config, or IMAGUNIT_OUT)");
  cmd->add_option("--seed", f.seed, "master seed, overrides the config");
  cmd->add_option("--threads", f.threads, "audit worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp line from CSV headers");
}

int execute(const std::string& mode, const Flags& f) {
  using namespace imagunit;
  config::ScenarioConfig cfg = f.config.empty() ? config::ScenarioConfig{} : config::load(f.config);
  if (mode != "run") cfg.mode = mode;
  if (f.seed) cfg.seed = *f.seed;
  if (f.threads) cfg.audit.threads = *f.threads;

  scenario::Options opts;
  opts.timestamp = !f.no_timestamp;
  if (!f.out.empty()) {
    opts.out_dir = f.out;
  } else if (const char* env = std::getenv("IMAGUNIT_OUT"); env && *env) {
    opts.out_dir = env;
  } else if (!f.config.empty()) {
    opts.out_dir = std::filesystem::path(f.config).parent_path();
    if (opts.out_dir.empty()) opts.out_dir = ".";
  }

  const scenario::Outcome r = scenario::run(cfg, opts, std::cout);
  std::cout << r.summary << '\n';
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized imaginary units: identity audit and evolutions"};
  app.require_subcommand(1);
  Flags f;
  auto* audit = app.add_subcommand("audit", "run the identity audit");
  auto* run = app.add_subcommand("run", "run the mode named in the config");
  auto* eigen = app.add_subcommand("eigen", "eigen-reduction with a space-linear schedule");
  add_flags(audit, f, false);
  add_flags(run, f, true);
  add_flags(eigen, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string mode = audit->parsed() ? "audit" : eigen->parsed() ? "eigen-reduce" : "run";
  try {
    return execute(mode, f);
  } catch (const imagunit::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const imagunit::PreconditionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const imagunit::LookupError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const imagunit::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const YAML::Exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
