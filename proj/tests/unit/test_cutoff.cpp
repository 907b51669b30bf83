#include <cmath>

#include "doctest.h"
#include "dsqg/cutoff.hpp"
#include "dsqg/error.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;
using dsqg::test::square;

TEST_CASE("smoothstep plateaus and C^2 joins") {
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(0.25) == 0.0);
  CHECK(smoothstep(0.5) == 1.0);
  CHECK(smoothstep(0.9) == 1.0);
  const double e = 1e-7;
  for (double u : {0.25, 0.5}) {
    CHECK(std::abs(smoothstep(u + e) - smoothstep(u - e)) < 1e-12);
    CHECK(std::abs(smoothstep_d1(u + e) - smoothstep_d1(u - e)) < 1e-8);
    CHECK(std::abs(smoothstep_d2(u + e) - smoothstep_d2(u - e)) < 1e-3);
  }
  for (double u = 0.26; u < 0.5; u += 0.01) {
    CHECK(smoothstep_d1(u) > 0);
    const double h = 1e-6;
    CHECK(std::abs((smoothstep(u + h) - smoothstep(u - h)) / (2 * h) - smoothstep_d1(u)) < 1e-6);
    CHECK(std::abs((smoothstep_d1(u + h) - smoothstep_d1(u - h)) / (2 * h) - smoothstep_d2(u)) <
          1e-4);
  }
}

TEST_CASE("good cutoff values by distance to the boundary") {
  const auto dom = square(63);
  const double ell = 0.5;
  const Cutoff c = make_good_cutoff(dom, ell);
  CHECK(c.within_ell0);
  const double v = c.value({ell / 3, M_PI / 2});
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(c.value({ell, M_PI / 2}) == 1.0);
  CHECK(c.value({M_PI / 2, M_PI / 2}) == 1.0);
  CHECK(c.value({ell / 4, 1.0}) == 0.0);
  CHECK(c.value({0.1, 0.1}) == 0.0);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double x = c.chi(i, k);
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d >= ell / 2) CHECK(x == 1.0);
      if (d <= ell / 4) CHECK(x == 0.0);
    }
}

TEST_CASE("analytic cutoff gradient matches central differences") {
  const auto dom = square(63);
  const Cutoff c = make_good_cutoff(dom, 0.4);
  const double h = 1e-6;
  for (Point p : {Point{0.15, 1.0}, Point{0.13, 0.17}, Point{3.0, 0.16}, Point{1.5, 2.99}}) {
    const auto [gx, gy] = c.grad(p);
    CHECK(std::abs((c.value({p.x + h, p.y}) - c.value({p.x - h, p.y})) / (2 * h) - gx) < 1e-5);
    CHECK(std::abs((c.value({p.x, p.y + h}) - c.value({p.x, p.y - h})) / (2 * h) - gy) < 1e-5);
  }
}

TEST_CASE("cutoff scale errors") {
  const auto dom = square(31);
  CHECK_THROWS_AS(make_good_cutoff(dom, 0.2), ResolutionError);
  CHECK_THROWS_AS(make_good_cutoff(dom, 1.6), DomainError);
  CHECK_THROWS_AS(make_good_cutoff(dom, -1.0), DomainError);
  const Cutoff wide = make_good_cutoff(dom, 0.9);
  CHECK_FALSE(wide.within_ell0);
}

TEST_CASE("cutoff derivative scaling and kernel integrals are stable in ell") {
  const auto dom = square(127);
  const auto reports = verify_cutoff(dom, {0.1, 0.2, 0.4});
  REQUIRE(reports.size() == 6);
  for (const auto& r : reports) {
    INFO(r.id);
    CHECK(r.pass);
    CHECK(std::isfinite(r.constant));
  }
  CHECK(reports[0].id == "cutoff-gradient");
  CHECK(reports[0].stability_ratio <= 1.2);
  CHECK(reports[1].stability_ratio <= 1.2);
}
