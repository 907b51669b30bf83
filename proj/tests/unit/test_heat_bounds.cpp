#include <cmath>

#include "doctest.h"
#include "dsqg/heat_bounds.hpp"
#include "dsqg/heat_kernel.hpp"
#include "fit.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;
using dsqg::test::square;

namespace {

KernelSweepOptions quick() {
  KernelSweepOptions o;
  o.n = 8;
  return o;
}

const BoundFitReport& find(const std::vector<BoundFitReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.id == id) return r;
  FAIL("missing report " << id);
  return rs.front();
}

}  // namespace

TEST_CASE("far from the boundary the kernel is the free Gaussian") {
  const DomainSpec d = square(64);
  for (double t : {1e-3, 4e-3, 1e-2}) {
    const double s = 10 * std::sqrt(t);
    const Point x{1.3, 1.6};
    for (Point y : {Point{1.35, 1.6}, Point{1.3, 1.72}, Point{1.4, 1.5}}) {
      REQUIRE(distance_to_boundary(d, x) >= s);
      REQUIRE(distance_to_boundary(d, y) >= s);
      const double r2 = (x.x - y.x) * (x.x - y.x) + (x.y - y.y) * (x.y - y.y);
      const double g = std::exp(-r2 / (4 * t)) / (4 * M_PI * t);
      const double ratio = kernel_images(d, x, y, t) / g;
      CHECK(ratio >= 0.9);
      CHECK(ratio <= 1.1);
    }
  }
}

TEST_CASE("kernel is positive in the interior") {
  const DomainSpec d = square(32);
  for (double t : {1e-2, 0.1, 1.0})
    for (int i = 0; i < d.N1; i += 5)
      for (int k = 0; k < d.N2; k += 7) CHECK(kernel_images(d, d.point(i, k), {0.4, 2.9}, t) > 0);
}

TEST_CASE("gradient vanishes on the diagonal far from the boundary") {
  const DomainSpec d = square(32);
  const Point x{1.2, 1.7};
  for (double t : {1e-3, 1e-2}) {
    const auto g = kernel_grad_x(d, x, x, t);
    CHECK(std::hypot(g[0], g[1]) <= 1e-8 * kernel_images(d, x, x, t));
  }
}

TEST_CASE("shift kernel drops the translation term") {
  const double L = M_PI;
  // Far from both ends only the translation-invariant term of the kernel is
  // visible, and (d/dx + d/dy) removes it.
  const double t = 1e-3;
  CHECK(std::abs(interval::kernel_dx(L, 1.5, 1.55, t)) > 1.0);
  CHECK(std::abs(interval::kernel_shift(L, 1.5, 1.55, t)) < 1e-100);
  // Near an end the reflected image survives.
  CHECK(std::abs(interval::kernel_shift(L, 0.05, 0.06, t)) > 1e-3);
}

TEST_CASE("theta bound reports") {
  const auto rs = verify_theta_bounds(square(16), quick());
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    CHECK(r.pass);
    CHECK(std::isfinite(r.constant));
    CHECK(r.constant > 0);
    CHECK(stable_ratio(r.stability_ratio));
  }
  // Deep inside, Theta is 1 and the upper bound holds for any C >= 0.1.
  const DomainSpec d = square(16);
  const Point c{M_PI / 2, M_PI / 2};
  const double t = std::pow(distance_to_boundary(d, c) / 10, 2);
  CHECK(theta(d, c, t) >= 1 - 1e-6);
  CHECK(find(rs, "theta-upper").constant >= 0.1);
}

TEST_CASE("gaussian and gradient bound reports") {
  const DomainSpec d = square(16);
  const auto g = verify_kernel_gaussian_bounds(d, KernelSweepOptions{});
  const auto& up = find(g, "kernel-gaussian-upper");
  const auto& low = find(g, "kernel-gaussian-lower");
  CHECK(up.pass);
  CHECK(low.pass);
  CHECK(up.constant > 0);
  CHECK(low.constant > 0);
  CHECK(low.constant < up.constant);

  // The fitted upper constant covers a y next to the boundary.
  const Point x{1.4, 1.5}, y{1.6, d.L2 / 60};
  const double t = 0.05;
  const double r = std::hypot(x.x - y.x, x.y - y.y);
  const double rr = std::max(r, std::sqrt(t));
  const double w = [&](Point p) {
    return d.mode_amplitude() * std::sin(p.x) * std::sin(p.y);
  }(y);
  const double wx = d.mode_amplitude() * std::sin(x.x) * std::sin(x.y);
  const double bound = up.constant * std::min(wx / rr, 1.0) * std::min(w / rr, 1.0) / t *
                       std::exp(-r * r / (up.extra.at("K") * t));
  CHECK(kernel_images(d, x, y, t) <= bound);

  const auto gr = verify_gradient_bounds(d, quick());
  for (const auto& r : gr) {
    CHECK(r.pass);
    CHECK(std::isfinite(r.constant));
  }
}

TEST_CASE("cancellation integrals") {
  const DomainSpec d = square(16);
  // t = 0.001 at distance 1: the envelope is e^{-250}, far below the floor.
  const Point x{1.0, M_PI / 2};
  REQUIRE(distance_to_boundary(d, x) == doctest::Approx(1.0));
  const double v = cancellation_integral(d, x, 1e-3, 1);
  CHECK(v < 1e-50);
  const auto f = fit::fit_exponential_envelope({250.0, 1.0, 2.0}, {v * std::sqrt(1e-3), 0.5, 0.3});
  CHECK(f.clamped == 1);

  // Near the boundary the integral is of order t^{-1/2}.
  const Point z{0.05, M_PI / 2};
  const double t = 2.5e-4;
  const double c = cancellation_integral(d, z, t, 1) * std::sqrt(t);
  CHECK(c > 1e-3);
  CHECK(c < 10);

  const auto rs = verify_cancellation_bounds(d, quick());
  REQUIRE(rs.size() == 3);
  for (const auto& r : rs) {
    CHECK(r.pass);
    CHECK(r.extra.at("K_tilde") > 1);
  }
}

TEST_CASE("exponential envelope fit") {
  std::vector<double> u, v;
  for (int i = 0; i < 20; ++i) {
    u.push_back(i);
    v.push_back(3.0 * std::exp(-i / 5.0));
  }
  const auto f = fit::fit_exponential_envelope(u, v);
  CHECK(f.K == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(f.C == doctest::Approx(3.0).epsilon(1e-12));
  const auto g = fit::cover_envelope(u, v, 10.0);
  CHECK(g.C == doctest::Approx(3.0).epsilon(1e-12));
  v[3] *= 2;
  CHECK(fit::cover_envelope(u, v, 5.0).C == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("Lambda^s 1 lower bound and monotonicity") {
  const DomainSpec d = square(16);
  const auto r = verify_lambda_s_one_bound(d, 1.0, quick());
  CHECK(r.pass);
  CHECK(r.constant > 0);
  CHECK(lambda_s_one(d, {0.2, M_PI / 2}, 1.0) > lambda_s_one(d, {1.0, M_PI / 2}, 1.0));
}

TEST_CASE("intpk bounds") {
  CHECK(intpk_quadrature(INFINITY, 1.0, 2, 0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  for (double rho : {10.0, 100.0, 1000.0}) {
    const double v = intpk_quadrature(rho, 1.0, 0, 0, 4.0);
    const double g = 2 * std::log(2 * rho);
    const double z = 1 / (4 * rho * rho);
    CHECK(v <= 1 + g);
    // E1(z) = -gamma - log z + z + O(z^2)
    CHECK(v == doctest::Approx(g - 0.5772156649015329 + z).epsilon(1e-6));
  }
  CHECK(intpk_quadrature(1.0, 40.0, 1, 1, 1.0) < 1e-300);
  const auto r = verify_intpk_bound(2, 1, 4.0);
  CHECK(r.pass);
  CHECK(r.constant <= r.extra.at("closed_form_sup") * (1 + 1e-9));
}
