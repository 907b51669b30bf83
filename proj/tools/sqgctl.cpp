// sqgctl: solve, verify and report front end over dsqg::harness.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dsqg/config.hpp"
#include "dsqg/error.hpp"
#include "dsqg/harness.hpp"
#include "dsqg/parallel.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = "sqgctl-out";
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Run configuration file")->envname("SQGCTL_CONFIG");
  cmd->add_option("--out", c.out, "Output directory")->envname("SQGCTL_OUT");
  cmd->add_option("--threads", c.threads, "Worker threads")->envname("SQGCTL_THREADS");
  cmd->add_option("--seed", c.seed, "Seed for synthetic data")->envname("SQGCTL_SEED");
}

/// Loads the config (defaults without --config) and applies the overrides.
dsqg::RunConfig resolve(const Common& c) {
  dsqg::RunConfig cfg = c.config.empty() ? dsqg::RunConfig::from(dsqg::ConfigFile{})
                                         : dsqg::RunConfig::load(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = static_cast<int>(*c.threads);
  if (cfg.threads > 0) dsqg::set_thread_count(static_cast<unsigned>(cfg.threads));
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical dissipative SQG on a rectangle: solver runs and verification suites"};
  app.require_subcommand(1);

  Common solve_opts, verify_opts;
  std::vector<std::string> suites;
  std::vector<std::string> paths;
  std::string report_out;

  auto* solve = app.add_subcommand("solve", "Run the Galerkin solver and its monitors");
  add_common(solve, solve_opts);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify, verify_opts);
  verify->add_option("--suite", suites, "Suite name (repeatable; default all)")
      ->envname("SQGCTL_SUITE")
      ->delimiter(',');

  auto* report = app.add_subcommand("report", "Merge JSON report files into one table");
  report->add_option("paths", paths, "Report files");
  report->add_option("--out", report_out, "Directory for summary files")->envname("SQGCTL_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dsqg::harness::kUsage;
  }

  try {
    if (*solve) return dsqg::harness::cmd_solve(resolve(solve_opts), solve_opts.out, std::cout);
    if (*verify)
      return dsqg::harness::cmd_verify(resolve(verify_opts), suites, verify_opts.out, std::cout);
    return dsqg::harness::cmd_report(paths, report_out, std::cout);
  } catch (const dsqg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dsqg::harness::kUsage;
  } catch (const dsqg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsqg::harness::kUsage;
  }
}
