#include <cmath>
#include <random>

#include "doctest.h"
#include "dsqg/error.hpp"
#include "dsqg/fields.hpp"
#include "dsqg/interior.hpp"
#include "dsqg/spectral.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;
using dsqg::test::rel_diff;
using dsqg::test::square;

namespace {

Array2D torus_sample(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Array2D a(n, n);
  // A few random low harmonics.
  double c[4][4][2];
  for (auto& row : c)
    for (auto& col : row)
      for (double& v : col) v = normal(rng);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double x = 2 * M_PI * i / n, y = 2 * M_PI * k / n;
      double v = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          v += c[p][q][0] * std::cos(p * x + q * y) + c[p][q][1] * std::sin(p * x - q * y);
      a(i, k) = v;
    }
  return a;
}

}  // namespace

TEST_CASE("finite differences") {
  const auto dom = square(31);
  const GridField lin = sample(dom, [](double x, double) { return x; });
  const auto d = delta_h(lin, 3, -2);
  for (int i = 0; i + 3 < dom.N1; ++i)
    for (int k = 2; k < dom.N2; ++k) {
      CHECK(d.is_defined(i, k));
      CHECK(std::abs(d.values(i, k) - 3 * dom.dx()) < 1e-14);
    }
  CHECK_FALSE(d.is_defined(dom.N1 - 1, 5));
  const GridField c = sample(dom, [](double, double) { return 2.5; });
  const auto dc = delta_h(c, 1, 1);
  CHECK(dc.values(4, 4) == 0.0);
  const GridField f = random_smooth(dom, 1), g = random_smooth(dom, 2);
  const auto sum = delta_h(f + g, -2, 1).values;
  const auto parts = delta_h(f, -2, 1).values + delta_h(g, -2, 1).values;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k)
      CHECK(std::abs(sum(i, k) - parts(i, k)) <= 1e-15 * (1 + std::abs(sum(i, k))));
}

TEST_CASE("weighted Holder seminorm matches exhaustive enumeration") {
  const auto fine = square(67);
  const GridField w = subsample(mode_field(fine, 1, 1), 4);
  REQUIRE(w.domain.N1 == 16);
  for (double alpha : {0.3, 0.5, 0.7}) {
    const auto a = weighted_holder_seminorm(w, alpha);
    const auto b = weighted_holder_seminorm_bruteforce(w, alpha);
    CHECK(a.seminorm == b.seminorm);
    CHECK(a.norm == b.norm);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridField f = subsample(random_smooth(fine, seed, 1.0, 30), 4);
    const auto a = weighted_holder_seminorm(f, 0.5);
    const auto b = weighted_holder_seminorm_bruteforce(f, 0.5);
    CHECK(a.seminorm == b.seminorm);
  }
}

TEST_CASE("weighted Holder seminorm basics") {
  const auto dom = square(31);
  CHECK(weighted_holder_seminorm(GridField(dom), 0.5).seminorm == 0.0);
  CHECK_THROWS_AS(weighted_holder_seminorm(GridField(square(1)), 0.5), ResolutionError);
  CHECK_THROWS_AS(weighted_holder_seminorm(GridField(dom), 1.0), DomainError);
  // Envelope: at the recorded argmax of alpha', the alpha ratio is at least
  // the alpha' value times d^{alpha - alpha'} |h|^{alpha' - alpha}.
  const GridField f = mode_field(dom, 2, 1, 0.5);
  const auto hi = weighted_holder_seminorm(f, 0.7);
  const auto lo = weighted_holder_seminorm(f, 0.3);
  const double d = distance_to_boundary(dom, dom.point(hi.i, hi.k));
  const double h = std::hypot(hi.hx * dom.dx(), hi.hy * dom.dy());
  CHECK(hi.seminorm * std::pow(d, 0.3 - 0.7) * std::pow(h, 0.7 - 0.3) <= lo.seminorm * (1 + 1e-12));
}

TEST_CASE("restricted and uniform Holder quantities") {
  const auto dom = square(63);
  const GridField lin = sample(dom, [](double x, double) { return x; });
  // |delta_h x| / |h|^alpha over one-spacing steps along x.
  CHECK(rel_diff(restricted_holder(lin, 0.5, 0.5), std::pow(dom.dx(), 0.5)) < 1e-12);
  const GridField w = mode_field(dom, 1, 1);
  CHECK(uniform_holder_seminorm(w, 0.5) > 0);
  CHECK(uniform_holder_seminorm(GridField(dom), 0.5) == 0.0);
  CHECK_THROWS_AS(subsample(w, 3), DomainError);
}

TEST_CASE("weighted gradient sup") {
  CHECK(weighted_gradient_sup(GridField(square(31))).value == 0.0);
  const auto a = weighted_gradient_sup(mode_field(square(63), 1, 1));
  const auto b = weighted_gradient_sup(mode_field(square(127), 1, 1));
  CHECK(a.value > 0);
  CHECK(rel_diff(a.value, b.value) < 0.01);
  const auto dom = square(31);
  const GridField f = random_smooth(dom, 3), g = random_smooth(dom, 4);
  CHECK(weighted_gradient_sup(f + g).value <=
        weighted_gradient_sup(f).value + weighted_gradient_sup(g).value + 1e-12);
}

TEST_CASE("torus commutators vanish") {
  const Array2D t = torus_sample(64, 9);
  CHECK(torus_commutator_h(t, 3, -5) <= 1e-12 * t.max_abs() * 10);
  CHECK(torus_commutator_grad(t) <= 1e-12 * t.max_abs() * 10);
}

TEST_CASE("Dirichlet commutators") {
  const auto dom = square(63);
  const Cutoff chi = make_good_cutoff(dom, 0.5);
  SUBCASE("zero") {
    const auto c = commutator_h(GridField(dom), 2, 0, chi);
    CHECK(c.field[0].max_abs() == 0.0);
    CHECK(commutator_grad(GridField(dom), chi).report.constant == 0.0);
  }
  SUBCASE("shift commutator on the bump is stable across dyadic h") {
    const GridField b = bump(dom);
    std::vector<double> g;
    for (int h : {2, 4, 8}) {
      const auto c = commutator_h(b, h, 0, chi);
      CHECK(c.report.pass);
      g.push_back(c.report.constant);
    }
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    CHECK(*hi / *lo <= 2.0);
    CHECK_THROWS_AS(commutator_h(b, 12, 0, chi), DomainError);
  }
  SUBCASE("gradient commutator on the bump is stable in ell") {
    const GridField b = bump(dom);
    std::vector<double> g;
    for (double ell : {0.2, 0.4, 0.8}) {
      const auto c = commutator_grad(b, make_good_cutoff(dom, ell));
      CHECK(c.report.pass);
      g.push_back(c.report.constant);
    }
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    CHECK(*hi / *lo <= 2.0);
  }
}

TEST_CASE("Riesz bound checks") {
  const auto dom = square(63);
  const Cutoff chi = make_good_cutoff(dom, 0.5);
  CHECK(riesz_diff_bound_check(GridField(dom), 2, 0, chi).constant == 0.0);
  CHECK(riesz_grad_bound_check(GridField(dom), chi).constant == 0.0);

  // Closed-form velocity of w11: u = (2/(pi sqrt 2)) (-sin x cos y, cos x sin y).
  const GridField w = mode_field(dom, 1, 1);
  const auto u = riesz_velocity(to_spectral(w));
  const double c = 2 / (M_PI * std::sqrt(2.0));
  const GridField u1 = u.u1();
  for (int i = 0; i < dom.N1; i += 7)
    for (int k = 0; k < dom.N2; k += 7)
      CHECK(std::abs(u1(i, k) + c * std::sin(dom.x(i)) * std::cos(dom.y(k))) < 1e-12);
  const auto rw = riesz_diff_bound_check(w, 2, 0, chi);
  CHECK(rw.pass);
  CHECK(rw.constant > 0);
  const auto gw = riesz_grad_bound_check(w, chi);
  CHECK(gw.pass);

  const GridField b = bump(dom);
  const auto r4 = riesz_diff_bound_check(b, 4, 0, chi);
  const auto r2 = riesz_diff_bound_check(b, 2, 0, chi);
  CHECK(stable_ratio(r2.constant / r4.constant));
  const auto fine = square(127);
  const auto g1 = riesz_grad_bound_check(b, chi);
  const auto g2 = riesz_grad_bound_check(bump(fine), make_good_cutoff(fine, 0.5));
  CHECK(stable_ratio(g2.constant / g1.constant));
}
