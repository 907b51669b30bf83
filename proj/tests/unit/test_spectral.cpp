#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "dsqg/error.hpp"
#include "dsqg/spectral.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;
using dsqg::test::square;

namespace {

double w(const DomainSpec& d, int j, int k, double x, double y) {
  return d.mode_amplitude() * std::sin(j * M_PI * x / d.L1) * std::sin(k * M_PI * y / d.L2);
}

}  // namespace

TEST_CASE("mode sampled on the grid has a single unit coefficient") {
  const DomainSpec d{2.0, 3.0, 24, 20};
  const GridField g = sample(d, [&](double x, double y) { return w(d, 3, 2, x, y); });
  const SpectralField a = to_spectral(g);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k)
      CHECK(std::abs(a(j, k) - (j == 3 && k == 2 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("zero maps to zero") {
  const DomainSpec d = square(16);
  CHECK(from_spectral(SpectralField(d)).max_abs() == 0.0);
  CHECK(to_spectral(GridField(d)).coeffs.max_abs() == 0.0);
}

TEST_CASE("round trip and direct coefficient sum") {
  const DomainSpec d{1.5, 2.5, 33, 18};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  GridField g(d);
  for (auto& v : g.values.flat()) v = u(rng);
  const SpectralField a = to_spectral(g);
  const GridField back = from_spectral(a);
  CHECK((back - g).max_abs() <= 1e-12 * g.max_abs());

  // Discrete orthogonality of the sampled sines makes the weighted point sum
  // reproduce the coefficient exactly.
  for (auto [j, k] : {std::pair{1, 1}, std::pair{5, 7}, std::pair{33, 18}}) {
    double sum = 0.0;
    for (int i = 0; i < d.N1; ++i)
      for (int l = 0; l < d.N2; ++l) sum += g(i, l) * w(d, j, k, d.x(i), d.y(l));
    sum *= d.dx() * d.dy();
    CHECK(std::abs(sum - a(j, k)) <= 1e-12);
  }
}

TEST_CASE("shape mismatch is rejected") {
  CHECK_THROWS_AS(require_same_domain(square(8), square(9)), DimensionError);
  CHECK_THROWS_AS(apply_lambda_s(SpectralField(square(8)), 2.5), DomainError);
  CHECK_THROWS_AS(apply_lambda_s(SpectralField(square(8)), -0.1), DomainError);
}

TEST_CASE("eigen identities on the square") {
  const DomainSpec d = square(16);
  auto w11 = SpectralField::mode(d, 1, 1);
  CHECK(apply_lambda_s(w11, 1.0)(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(apply_lambda_s(SpectralField::mode(d, 2, 1), 2.0)(2, 1) == doctest::Approx(5.0));
  CHECK(apply_lambda_s(w11, 0.0).coeffs == w11.coeffs);
  CHECK(apply_lambda_inverse(w11)(1, 1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

  for (double s : {0.5, 1.0, 1.5, 2.0}) {
    for (int j = 1; j <= 16; j += 3) {
      for (int k = 1; k <= 16; k += 5) {
        const auto m = SpectralField::mode(d, j, k);
        const GridField lhs = from_spectral(apply_lambda_s(m, s));
        const double mult = std::pow(d.eigenvalue(j, k), s / 2);
        const GridField rhs = mult * from_spectral(m);
        CHECK((lhs - rhs).max_abs() <= 1e-12 * mult);
      }
    }
  }
}

TEST_CASE("power consistency and inverse") {
  const DomainSpec d = square(32);
  const auto f = test::random_coeffs(d, 3);
  for (auto [s, t] : {std::pair{0.5, 1.0}, std::pair{1.0, 1.0}, std::pair{0.3, 1.2}}) {
    const auto lhs = apply_lambda_s(apply_lambda_s(f, s), t);
    const auto rhs = apply_lambda_s(f, s + t);
    CHECK((lhs.coeffs - rhs.coeffs).max_abs() <= 1e-11 * rhs.coeffs.max_abs());
  }
  const auto back = apply_lambda_inverse(apply_lambda_s(f, 1.0));
  CHECK((back.coeffs - f.coeffs).max_abs() <= 1e-12 * f.coeffs.max_abs());
}

TEST_CASE("inverse square root against its heat-time integral") {
  // Lambda^{-1} = Gamma(1/2)^{-1} int_0^inf t^{-1/2} e^{t Delta} dt and
  // e^{t Delta} w11 = e^{-2t} w11 on the square.
  boost::math::quadrature::exp_sinh<double> rule;
  const double integral = rule.integrate([](double t) { return std::exp(-2 * t) / std::sqrt(t); },
                                         0.0, std::numeric_limits<double>::infinity());
  const double oracle = integral / boost::math::tgamma(0.5);
  const auto inv = apply_lambda_inverse(SpectralField::mode(square(8), 1, 1));
  CHECK(std::abs(inv(1, 1) - oracle) <= 1e-8);
}

TEST_CASE("Parseval and Dirichlet-integral isometry") {
  const DomainSpec d{M_PI, 2.0, 48, 40};
  const auto a = test::random_coeffs(d, 11);
  const GridField g = from_spectral(a);
  CHECK(test::rel_diff(g.l2_norm(), a.l2_norm()) <= 1e-10);
  CHECK(test::rel_diff(a.l2_norm(), dirichlet_norm(a, 0.0)) <= 1e-14);

  // |grad f|^2 by the trapezoid rule on the closed grid (exact for the
  // retained cosine-sine products); boundary values from the series.
  const auto [gx, gy] = gradient(a);
  double sum = 0.0;
  for (int i = 0; i <= d.N1 + 1; ++i) {
    for (int k = 0; k <= d.N2 + 1; ++k) {
      const double wx = (i == 0 || i == d.N1 + 1) ? 0.5 : 1.0;
      const double wy = (k == 0 || k == d.N2 + 1) ? 0.5 : 1.0;
      double vx;
      double vy;
      if (i >= 1 && i <= d.N1 && k >= 1 && k <= d.N2) {
        vx = gx(i - 1, k - 1);
        vy = gy(i - 1, k - 1);
      } else {
        std::tie(vx, vy) = evaluate_gradient(a, {i * d.dx(), k * d.dy()});
      }
      sum += wx * wy * (vx * vx + vy * vy);
    }
  }
  const double grad_norm = std::sqrt(sum * d.dx() * d.dy());
  CHECK(test::rel_diff(grad_norm, dirichlet_norm(a, 1.0)) <= 1e-9);
  CHECK(test::rel_diff(grad_norm, apply_lambda_s(a, 1.0).l2_norm()) <= 1e-9);
}

TEST_CASE("gradient of w11 against closed form") {
  const DomainSpec d = square(63);
  const auto [gx, gy] = gradient(SpectralField::mode(d, 1, 1));
  // Grid point nearest (pi/4, pi/2).
  const int i = 15;
  const int k = 31;
  CHECK(std::abs(d.x(i) - M_PI / 4) < 1e-12);
  const double ex = (2 / M_PI) * std::cos(d.x(i)) * std::sin(d.y(k));
  const double ey = (2 / M_PI) * std::sin(d.x(i)) * std::cos(d.y(k));
  CHECK(std::abs(gx(i, k) - ex) <= 1e-10);
  CHECK(std::abs(gy(i, k) - ey) <= 1e-10);
  // Centre point: both components vanish.
  CHECK(std::abs(gx(31, 31)) <= 1e-12);
  CHECK(std::abs(gy(31, 31)) <= 1e-12);
  const auto [px, py] = evaluate_gradient(SpectralField::mode(d, 1, 1), {0.3, 1.1});
  CHECK(std::abs(px - (2 / M_PI) * std::cos(0.3) * std::sin(1.1)) <= 1e-13);
  CHECK(std::abs(py - (2 / M_PI) * std::sin(0.3) * std::cos(1.1)) <= 1e-13);
}

TEST_CASE("hessian of a mode") {
  const DomainSpec d{2.0, 1.0, 31, 31};
  const auto h = hessian(SpectralField::mode(d, 2, 3));
  double err = 0.0;
  for (int i = 0; i < d.N1; ++i) {
    for (int k = 0; k < d.N2; ++k) {
      const double x = d.x(i);
      const double y = d.y(k);
      const double a = d.kx(2);
      const double b = d.ky(3);
      const double A = d.mode_amplitude();
      err = std::max(err, std::abs(h.xx(i, k) + a * a * A * std::sin(a * x) * std::sin(b * y)));
      err = std::max(err, std::abs(h.yy(i, k) + b * b * A * std::sin(a * x) * std::sin(b * y)));
      err = std::max(err, std::abs(h.xy(i, k) - a * b * A * std::cos(a * x) * std::cos(b * y)));
    }
  }
  CHECK(err <= 1e-11);
}

TEST_CASE("Riesz velocity of w11") {
  const DomainSpec d = square(31);
  const auto u = riesz_velocity(SpectralField::mode(d, 1, 1));
  const GridField u1 = u.u1();
  const GridField u2 = u.u2();
  const double c = 2 / (M_PI * std::sqrt(2.0));
  double err = 0.0;
  for (int i = 0; i < d.N1; ++i) {
    for (int k = 0; k < d.N2; ++k) {
      err = std::max(err, std::abs(u1(i, k) + c * std::sin(d.x(i)) * std::cos(d.y(k))));
      err = std::max(err, std::abs(u2(i, k) - c * std::cos(d.x(i)) * std::sin(d.y(k))));
    }
  }
  CHECK(err <= 1e-13);
  CHECK(u.max_boundary_normal() <= 1e-15);
  CHECK(riesz_velocity(SpectralField(d)).max_speed() == 0.0);
}

TEST_CASE("Riesz velocity is divergence free") {
  const DomainSpec d{M_PI, 2.0, 64, 48};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto u = riesz_velocity(test::random_coeffs(d, seed, 1.5, 40));
    CHECK(divergence(u).max_abs() <= 1e-10 * u.max_speed());
    CHECK(u.max_boundary_normal() <= 1e-14 * u.max_speed());
  }
}

TEST_CASE("distance to boundary") {
  const DomainSpec d = square(8);
  CHECK(distance_to_boundary(d, {M_PI / 2, M_PI / 2}) == doctest::Approx(M_PI / 2));
  CHECK(distance_to_boundary(d, {0.1, 1.0}) == doctest::Approx(0.1));
  CHECK(distance_to_boundary(d, {0.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(distance_to_boundary(d, {-1.0, 1.0}), DomainError);
}

TEST_CASE("eigenfunctions have unit norm by fine quadrature") {
  const DomainSpec d{1.3, 0.7, 8, 8};
  for (auto [j, k] : {std::pair{1, 1}, std::pair{3, 2}}) {
    const int n = 400;
    double sum = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double v = w(d, j, k, (a + 0.5) * d.L1 / n, (b + 0.5) * d.L2 / n);
        sum += v * v;
      }
    CHECK(std::abs(sum * d.L1 * d.L2 / (n * n) - 1.0) <= 1e-10);
  }
  const Spectrum sp(d);
  CHECK(sp.min() == sp(1, 1));
}

TEST_CASE("resample and truncate") {
  const DomainSpec d = square(16);
  const auto a = test::random_coeffs(d, 5, 2.0, 16);
  const auto t = truncate(a, 4, 6);
  CHECK(t(4, 6) == a(4, 6));
  CHECK(t(5, 1) == 0.0);
  const auto up = resample_modes(a, square(32));
  CHECK(up(16, 16) == a(16, 16));
  CHECK(up(17, 1) == 0.0);
  const auto down = resample_modes(up, d);
  CHECK(down.coeffs == a.coeffs);
  CHECK(std::abs(evaluate(a, {0.7, 2.1}) - evaluate(up, {0.7, 2.1})) <= 1e-14);
}
