#include <cmath>

#include "doctest.h"
#include "dsqg/fields.hpp"
#include "dsqg/galerkin.hpp"
#include "dsqg/monitors.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;

namespace {

/// Wide enough to be resolved by 32 modes.
GridField wide_bump(const DomainSpec& d, double amplitude = 1.0) {
  return bump(d, BumpSpec{amplitude, M_PI / 2, M_PI / 2, 0.4, 0.35});
}

SolverConfig short_run() {
  SolverConfig c;
  c.n = 32;
  c.dt = 5e-3;
  c.T_end = 0.2;
  c.record_every = 10;
  return c;
}

}  // namespace

TEST_CASE("observing a run does not change it") {
  const auto theta0 = wide_bump(test::square(32));
  const auto plain = run(theta0, short_run());
  REQUIRE(plain.status == RunStatus::Completed);
  REQUIRE(plain.snapshots.size() > 2);
  std::vector<double> seen;
  const auto watched = run(theta0, short_run(), gradient_observer(seen));
  REQUIRE(plain.snapshots.size() == watched.snapshots.size());
  for (std::size_t k = 0; k < plain.snapshots.size(); ++k)
    CHECK(plain.snapshots[k].theta.coeffs == watched.snapshots[k].theta.coeffs);
  CHECK(seen.size() == plain.snapshots.size());
  const auto g = gradient_evolution_monitor(plain.snapshots);
  for (std::size_t k = 0; k < seen.size(); ++k) CHECK(seen[k] == g.value[k]);
}

TEST_CASE("monitors on zero data") {
  const auto res = run(GridField(test::square(16)), [] {
    auto c = short_run();
    c.n = 16;
    return c;
  }());
  const auto h = holder_evolution_monitor(res.snapshots, 0.1, 0.5);
  const auto g = gradient_evolution_monitor(res.snapshots);
  CHECK(h.report.pass);
  CHECK(g.report.pass);
  CHECK(h.report.constant == 0.0);
}

TEST_CASE("monitors on a bump run stay bounded and stable") {
  const auto res = run(wide_bump(test::square(32)), short_run());
  REQUIRE(res.status == RunStatus::Completed);
  const auto h = holder_evolution_monitor(res.snapshots, 0.1, 0.5);
  const auto g = gradient_evolution_monitor(res.snapshots);
  CHECK(h.report.pass);
  CHECK(g.report.pass);
  CHECK(std::isfinite(h.report.constant));
  CHECK(h.report.extra.at("epsilon_small") == 1.0);
  CHECK(h.t.size() == res.snapshots.size());
  // Gamma is the largest value over the base, so the initial ratio is below it.
  CHECK(g.value.front() <= g.report.constant * g.report.extra.at("bound_base") + 1e-12);

  const auto c = compare_monitors(g, g, "self");
  CHECK(c.stability_ratio == 1.0);
  CHECK(c.pass);
}
