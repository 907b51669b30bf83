#pragma once

// Orchestration behind sqgctl: verification suites, solver runs with their
// monitors, and report merging. The cmd_* functions return the exit codes
// documented in docs/formats.md and never throw for user errors.

#include <iosfwd>
#include <string>
#include <vector>

#include "dsqg/config.hpp"
#include "dsqg/error.hpp"
#include "dsqg/galerkin.hpp"
#include "dsqg/report.hpp"

namespace dsqg::harness {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kBlowUp = 3 };

/// kernel, cordoba, lower-bounds, commutators, riesz, halfspace.
const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite name.
std::vector<BoundFitReport> run_suite(const std::string& suite, const RunConfig& cfg);

/// Two reports with the same id and different verdict, constant or
/// stability ratio.
class MergeConflict : public Error {
 public:
  using Error::Error;
};

/// Concatenates report lists keyed by id; identical duplicates collapse,
/// conflicting ones throw MergeConflict. Rows are sorted by id.
std::vector<BoundFitReport> merge_reports(const std::vector<std::vector<BoundFitReport>>& lists);

struct SolveOutcome {
  RunResult run;
  /// Holder exponent used by the monitors.
  double alpha = 0;
  std::vector<BoundFitReport> monitors;
};

/// Builds theta_0 from cfg.initial on the n x n grid, runs the solver and
/// evaluates the enabled monitors (no file output).
SolveOutcome solve(const RunConfig& cfg);

/// Header t,L2,Linf,H2,H2.5,holder_alpha,grad_weighted and one row per record.
std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows);

/// Plain-text table: id, verdict, constant, stability ratio, statement.
std::string summary_table(const std::vector<BoundFitReport>& reports);

/// Writes diagnostics.csv, checkpoints/, monitors.json, monitors.csv and
/// config.ini under out_dir. 0 when every enabled monitor passes, 1
/// otherwise, 3 when the run stopped early (blow-up, resolution, NaN).
int cmd_solve(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Runs the suites and writes report.json and report.csv under out_dir.
/// 0 when every report passes, 1 otherwise, 2 for an unknown suite.
int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites,
               const std::string& out_dir, std::ostream& log);

/// Merges JSON report files into out_dir/summary.{json,csv,txt} (or only
/// prints the table when out_dir is empty). 0 on success, 2 on a missing
/// or malformed file or a conflicting duplicate id.
int cmd_report(const std::vector<std::string>& paths, const std::string& out_dir,
               std::ostream& log);

}  // namespace dsqg::harness
