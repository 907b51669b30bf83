#include <cmath>

#include "doctest.h"
#include "dsqg/error.hpp"
#include "dsqg/fields.hpp"
#include "dsqg/galerkin.hpp"
#include "dsqg/spectral.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;
using dsqg::test::random_coeffs;
using dsqg::test::square;

namespace {

/// Wide enough to be resolved by 32 modes.
GridField wide_bump(const DomainSpec& d, double amplitude = 1.0) {
  return bump(d, BumpSpec{amplitude, M_PI / 2, M_PI / 2, 0.4, 0.35});
}

double inner(const SpectralField& a, const SpectralField& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += a.coeffs.flat()[i] * b.coeffs.flat()[i];
  return s;
}

SolverConfig quiet(int n, double dt, double T) {
  SolverConfig c;
  c.n = n;
  c.dt = dt;
  c.T_end = T;
  c.gradient_column = false;
  return c;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  CHECK(parse_stepper("rk2") == Stepper::IntegratingFactorRK2);
  CHECK(parse_stepper("rk3") == Stepper::IntegratingFactorRK3);
  CHECK(parse_dealias("two-thirds") == Dealias::TwoThirds);
  CHECK(parse_dealias("refined-grid") == Dealias::RefinedGrid);
  CHECK(parse_stepper(to_string(Stepper::IntegratingFactorRK3)) == Stepper::IntegratingFactorRK3);
  CHECK_THROWS_AS(parse_stepper("euler"), ConfigError);
  CHECK_THROWS_AS(parse_dealias("none"), ConfigError);
  SolverConfig c;
  c.dt = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.n = 40;
  CHECK_THROWS_AS(run(bump(square(32)), c), ConfigError);
}

TEST_CASE("dealiasing grid sizes") {
  for (int n : {8, 16, 31, 64}) {
    const int m2 = dealias_grid(n, Dealias::TwoThirds);
    const int m4 = dealias_grid(n, Dealias::RefinedGrid);
    CHECK(m2 % 2 == 0);
    CHECK(m2 >= 3 * n + 2);
    CHECK(m4 >= 4 * (n + 1));
  }
}

TEST_CASE("nonlinear term: zero, skew symmetry, refinement") {
  const DomainSpec d = square(32);
  const auto zero = nonlinear_term(SpectralField(d));
  CHECK(zero.coeffs.max_abs() == 0.0);

  const auto w = SpectralField::mode(d, 1, 1);
  CHECK(std::abs(inner(nonlinear_term(w), w)) <= 1e-12);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = random_coeffs(d, seed, 2.0, 10);
    for (auto dealias : {Dealias::TwoThirds, Dealias::RefinedGrid}) {
      double defect = 0;
      const auto n = nonlinear_term(a, dealias, &defect);
      const double scale = a.l2_norm() * dirichlet_norm(a, 1.0);
      CHECK(std::abs(inner(n, a)) <= 1e-10 * scale);
      CHECK(defect <= 1e-12);
    }
  }

  // A band-limited field gives the same shared modes at n = 32 and n = 64.
  const auto a = random_coeffs(d, 9, 3.0, 8);
  const auto n32 = nonlinear_term(a);
  const auto n64 = nonlinear_term(resample_modes(a, square(64)));
  const auto back = resample_modes(n64, d);
  // Products of band-8 fields lie in band 16, inside both projections.
  CHECK((back - n32).coeffs.max_abs() <= 1e-8 * n32.coeffs.max_abs());
}

TEST_CASE("pure dissipation is exact per mode") {
  const DomainSpec d = square(16);
  auto a = random_coeffs(d, 4, 2.0, 16);
  auto cfg = quiet(16, 0.01, 0.3);
  cfg.nonlinear = false;
  cfg.resolution_tolerance = 1.0;  // the random field fills the band
  const auto res = run(from_spectral(a), cfg);
  REQUIRE(res.status == RunStatus::Completed);
  const auto& last = res.snapshots.back();
  CHECK(last.t == doctest::Approx(0.3));
  const Spectrum sp(d);
  double worst = 0;
  for (int j = 1; j <= 16; ++j)
    for (int k = 1; k <= 16; ++k) {
      const double exact = std::exp(-std::sqrt(sp(j, k)) * last.t) * a(j, k);
      worst = std::max(worst, std::abs(last.theta(j, k) - exact));
    }
  CHECK(worst <= 1e-14 * a.coeffs.max_abs());
  // The H2 inequality has nothing to fit on a pure decay.
  CHECK(h2_energy_check(res).constant == 0.0);
}

TEST_CASE("zero data stays zero") {
  const auto res = run(GridField(square(16)), quiet(16, 0.01, 0.1));
  REQUIRE(res.status == RunStatus::Completed);
  for (const auto& s : res.snapshots) CHECK(s.theta.coeffs.max_abs() == 0.0);
  for (const auto& r : res.diagnostics) CHECK(r.L2 == 0.0);
}

TEST_CASE("single mode decays at rate sqrt(2) for short times") {
  const DomainSpec d = square(32);
  auto cfg = quiet(32, 1e-4, 0.01);
  cfg.record_every = 10;
  const auto res = run(mode_field(d, 1, 1), cfg);
  REQUIRE(res.status == RunStatus::Completed);
  const double l0 = res.diagnostics.front().L2;
  for (const auto& r : res.diagnostics)
    CHECK(std::abs(r.L2 - std::exp(-std::sqrt(2.0) * r.t) * l0) <= 1e-6 * l0);
}

TEST_CASE("one step of a single mode lowers the L2 norm") {
  const DomainSpec d = square(16);
  const SolverState s0{0.0, SpectralField::mode(d, 1, 1)};
  const auto s1 = step(s0, quiet(16, 0.01, 0.01));
  CHECK(s1.t == doctest::Approx(0.01));
  CHECK(s1.theta.l2_norm() < s0.theta.l2_norm());
}

TEST_CASE("discrete energy law, trapezoidal form") {
  const DomainSpec d = square(32);
  const auto a = random_coeffs(d, 5, 3.0, 10);
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const SolverState s0{0.0, a};
    const auto s1 = step(s0, quiet(32, dt, dt));
    const double e0 = std::pow(s0.theta.l2_norm(), 2), e1 = std::pow(s1.theta.l2_norm(), 2);
    const double d0 = std::pow(dirichlet_norm(s0.theta, 0.5), 2);
    const double d1 = std::pow(dirichlet_norm(s1.theta, 0.5), 2);
    const double scale = std::pow(dirichlet_norm(s0.theta, 1.5), 2);
    CHECK((e1 - e0) / dt <= -(d0 + d1) + 10 * dt * dt * scale);
  }
}

TEST_CASE("bump run: decay, maximum principle, symmetry") {
  const DomainSpec d = square(32);
  auto cfg = quiet(32, 5e-3, 0.25);
  cfg.record_every = 5;
  const auto res = run(wide_bump(d), cfg);
  REQUIRE(res.status == RunStatus::Completed);
  const auto& rows = res.diagnostics;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].L2 < rows[k - 1].L2);
    CHECK(rows[k].Linf <= rows.front().Linf * (1 + 1e-8));
  }
  CHECK(res.odd_defect <= 1e-12);
  CHECK(res.max_substeps >= 1);
  const auto h2 = h2_energy_check(res);
  CHECK(h2.pass);
  CHECK(std::isfinite(h2.extra.at("C_integral")));
  // Snapshots keep every coefficient outside the band at zero by construction.
  for (const auto& s : res.snapshots) CHECK(s.theta.domain.N1 == 32);
}

TEST_CASE("integrating-factor Runge-Kutta orders") {
  const DomainSpec d = square(32);
  const auto theta0 = wide_bump(d, 2.0);
  auto at = [&](Stepper st, double dt) {
    auto cfg = quiet(32, dt, 0.1);
    cfg.stepper = st;
    cfg.record_every = 1000000;
    const auto res = run(theta0, cfg);
    REQUIRE(res.status == RunStatus::Completed);
    return res.snapshots.back().theta;
  };
  for (auto st : {Stepper::IntegratingFactorRK2, Stepper::IntegratingFactorRK3}) {
    const auto ref = at(st, 0.01 / 32);
    const double e1 = (at(st, 0.01) - ref).l2_norm();
    const double e2 = (at(st, 0.005) - ref).l2_norm();
    CHECK(e1 / e2 >= 3.5);
  }
}

TEST_CASE("sup norm finds the peak between grid points") {
  const DomainSpec d = square(16);
  const auto w = SpectralField::mode(d, 1, 1);
  CHECK(sup_norm(w) == doctest::Approx(d.mode_amplitude()).epsilon(1e-12));
  CHECK(sup_norm(SpectralField(d)) == 0.0);
}

TEST_CASE("under-resolved data is reported, not integrated") {
  auto cfg = quiet(8, 1e-3, 0.1);
  const auto res = run(bump(square(8), 50.0), cfg);
  CHECK(res.status == RunStatus::ResolutionFailure);
  CHECK(res.steps == 0);
  CHECK(!res.message.empty());
}
