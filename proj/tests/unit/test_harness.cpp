#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dsqg/harness.hpp"

using namespace dsqg;
namespace fs = std::filesystem;

namespace {

BoundFitReport row(const std::string& id, double c, bool pass = true) {
  BoundFitReport r;
  r.id = id;
  r.statement = "s";
  r.constant = c;
  r.pass = pass;
  return r;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("dsqg_harness_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("merging report lists") {
  const auto m = harness::merge_reports({{row("b", 1), row("a", 2)}, {row("c", 3), row("a", 2)}});
  REQUIRE(m.size() == 3);
  CHECK(m[0].id == "a");
  CHECK(m[2].id == "c");
  CHECK(harness::merge_reports({}).empty());
  CHECK_THROWS_AS(harness::merge_reports({{row("a", 2)}, {row("a", 3)}}), harness::MergeConflict);
  CHECK_THROWS_AS(harness::merge_reports({{row("a", 2)}, {row("a", 2, false)}}),
                  harness::MergeConflict);
}

TEST_CASE("suite names and errors") {
  CHECK(harness::suite_names().size() == 6);
  CHECK_THROWS_AS(harness::run_suite("nope", RunConfig{}), ConfigError);
  std::ostringstream log;
  CHECK(harness::cmd_verify(RunConfig{}, {"nope"}, scratch("v0").string(), log) == harness::kUsage);
}

TEST_CASE("halfspace suite: identity row, files, determinism") {
  const auto dir = scratch("hs");
  std::ostringstream log;
  CHECK(harness::cmd_verify(RunConfig{}, {"halfspace"}, dir.string(), log) == harness::kOk);
  const auto reports = reports_from_json(slurp(dir / "report.json"));
  bool identity = false;
  for (const auto& r : reports)
    if (r.id == "halfspace-lambda-one") identity = r.pass && r.constant <= 1e-6;
  CHECK(identity);
  CHECK(slurp(dir / "report.csv").rfind("id,", 0) == 0);

  const auto again = scratch("hs2");
  CHECK(harness::cmd_verify(RunConfig{}, {"halfspace"}, again.string(), log) == harness::kOk);
  CHECK(slurp(dir / "report.json") == slurp(again / "report.json"));

  // report: merge of one file with itself collapses; conflicting copy fails.
  const auto out = scratch("rep");
  CHECK(harness::cmd_report({(dir / "report.json").string(), (again / "report.json").string()},
                            out.string(), log) == harness::kOk);
  CHECK(reports_from_json(slurp(out / "summary.json")).size() == reports.size());
  auto changed = reports;
  changed.front().constant += 1;
  {
    std::ofstream os(again / "report.json");
    os << to_json(changed);
  }
  CHECK(harness::cmd_report({(dir / "report.json").string(), (again / "report.json").string()}, "",
                            log) == harness::kUsage);
  CHECK(harness::cmd_report({}, "", log) == harness::kOk);
  CHECK(harness::cmd_report({(dir / "missing.json").string()}, "", log) == harness::kUsage);
}

TEST_CASE("kernel suite on the 16 x 16 grid within the desk budget") {
  RunConfig cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const auto reports = harness::run_suite("kernel", cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 60.0);
  for (const auto& r : reports) CHECK_MESSAGE(r.pass, r.id);
}

TEST_CASE("solve: zero data, under-resolved data") {
  std::ostringstream log;
  RunConfig zero;
  zero.initial.field = "zero";
  zero.solver.n = 16;
  zero.solver.T_end = 0.05;
  zero.solver.dt = 0.01;
  zero.solver.record_every = 1;
  zero.output.checkpoint_all = true;
  const auto dir = scratch("zero");
  CHECK(harness::cmd_solve(zero, dir.string(), log) == harness::kOk);
  std::istringstream csv(slurp(dir / "diagnostics.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,L2,Linf,H2,H2.5,holder_alpha,grad_weighted");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0,0,0,0,0");
  }
  CHECK(rows == 6);
  CHECK(fs::exists(dir / "checkpoints" / "state_000005.bin"));
  CHECK(fs::exists(dir / "monitors.json"));
  const auto cfg_back = RunConfig::load((dir / "config.ini").string());
  CHECK(cfg_back.to_text() == zero.to_text());

  RunConfig tiny;
  tiny.initial.amplitude = 50;
  tiny.solver.n = 8;
  CHECK(harness::cmd_solve(tiny, scratch("tiny").string(), log) == harness::kBlowUp);

  RunConfig bad;
  bad.initial.field = "nonsense";
  CHECK(harness::cmd_solve(bad, scratch("bad").string(), log) == harness::kUsage);
}
