#include "dsqg/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dsqg/error.hpp"

namespace dsqg::quad {

namespace {

void check(const Result& r, double rel_tol, const char* rule, double floor = 1e-8) {
  if (!std::isfinite(r.value))
    throw QuadratureError(std::string(rule) + ": non-finite integral");
  const double scale = std::max(std::abs(r.value), std::numeric_limits<double>::min());
  // Error estimates of the adaptive rules are pessimistic by a large margin
  // for smooth integrands; refuse only when they miss the tolerance badly.
  const double allowed = std::max(100.0 * rel_tol, floor) * scale;
  if (r.error > allowed && r.error > 1e-300)
    throw QuadratureError(std::string(rule) + ": error estimate " + std::to_string(r.error) +
                          " exceeds tolerance");
}

/// Boost signals singular evaluations with its own exceptions.
template <class F>
double guarded(const char* rule, F&& integrate) {
  try {
    return integrate();
  } catch (const std::exception& e) {
    throw QuadratureError(std::string(rule) + ": " + e.what());
  }
}

}  // namespace

Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol, unsigned max_depth) {
  Result r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth,
                                                                         rel_tol, &r.error);
  check(r, rel_tol, "gauss_kronrod");
  return r;
}

Result tanh_sinh(const Integrand& f, double a, double b, double rel_tol) {
  boost::math::quadrature::tanh_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  r.value = guarded("tanh_sinh", [&] { return rule.integrate(f, a, b, rel_tol, &r.error, &l1); });
  check(r, rel_tol, "tanh_sinh");
  return r;
}

Result exp_sinh(const Integrand& f, double a, double rel_tol) {
  boost::math::quadrature::exp_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  r.value = guarded("exp_sinh", [&] {
    return rule.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1);
  });
  check(r, rel_tol, "exp_sinh");
  return r;
}

Result geometric(const Integrand& f, double t0, double t1, double ratio, double rel_tol) {
  if (!(t0 > 0.0) || !(t1 > t0) || !(ratio > 1.0))
    throw DomainError("geometric quadrature needs 0 < t0 < t1 and ratio > 1");
  Result total;
  double a = t0;
  while (a < t1) {
    const double b = std::min(a * ratio, t1);
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, rel_tol, &err);
    total.value += v;
    total.error += err;
    a = b;
  }
  // Kronrod-Gauss differences on the steep early panels overstate the error
  // by several orders of magnitude; the panel sum is checked loosely.
  check(total, rel_tol, "geometric", 1e-6);
  return total;
}

double gauss_legendre(const Integrand& f, double a, double b, int panels, int order) {
  if (panels < 1) throw DomainError("gauss_legendre needs at least one panel");
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = lo + h;
    switch (order) {
      case 10:
        sum += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
        break;
      case 20:
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
        break;
      case 30:
        sum += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, hi);
        break;
      default:
        throw DomainError("gauss_legendre supports orders 10, 20, 30");
    }
  }
  return sum;
}

namespace {

template <unsigned N>
void append_panel(Rule& r, double lo, double hi) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (x[q] == 0.0) {
      r.x.push_back(mid);
      r.w.push_back(half * w[q]);
      continue;
    }
    r.x.push_back(mid - half * x[q]);
    r.w.push_back(half * w[q]);
    r.x.push_back(mid + half * x[q]);
    r.w.push_back(half * w[q]);
  }
}

}  // namespace

Rule gauss_legendre_rule(const std::vector<double>& breaks, int order) {
  Rule r;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p];
    const double hi = breaks[p + 1];
    if (!(hi > lo)) continue;
    switch (order) {
      case 10:
        append_panel<10>(r, lo, hi);
        break;
      case 20:
        append_panel<20>(r, lo, hi);
        break;
      case 30:
        append_panel<30>(r, lo, hi);
        break;
      default:
        throw DomainError("gauss_legendre_rule supports orders 10, 20, 30");
    }
  }
  return r;
}

}  // namespace dsqg::quad
