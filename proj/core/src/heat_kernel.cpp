#include "dsqg/heat_kernel.hpp"

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "dsqg/error.hpp"
#include "dsqg/quadrature.hpp"

namespace dsqg {

using std::numbers::pi;

SpectralField heat_evolve(const SpectralField& f, double t) {
  if (!(t >= 0.0)) throw DomainError("heat_evolve needs t >= 0");
  SpectralField out = f;
  if (t == 0.0) return out;
  for (int j = 1; j <= f.domain.N1; ++j)
    for (int k = 1; k <= f.domain.N2; ++k) out(j, k) *= std::exp(-t * f.domain.eigenvalue(j, k));
  return out;
}

namespace interval {

namespace {

double gauss(double z, double t) { return std::exp(-z * z / (4 * t)) / std::sqrt(4 * pi * t); }
double gauss_d1(double z, double t) { return -z / (2 * t) * gauss(z, t); }
double gauss_d2(double z, double t) { return (z * z / (4 * t * t) - 1 / (2 * t)) * gauss(z, t); }

// Images beyond this index are below e^{-40} relative to the nearest ones.
int image_count(double L, double t) {
  return static_cast<int>(std::ceil(std::sqrt(160 * t) / (2 * L))) + 2;
}

void check_args(double L, double t) {
  if (!(L > 0.0)) throw DomainError("interval length must be positive");
  if (!(t > 0.0)) throw DomainError("heat kernel needs t > 0");
}

}  // namespace

int required_modes(double L, double t, double tol) {
  check_args(L, t);
  return static_cast<int>(std::ceil(L / pi * std::sqrt(std::log(1.0 / tol) / t)));
}

double kernel_eigen(double L, double x, double y, double t, int modes) {
  check_args(L, t);
  double sum = 0.0;
  for (int j = modes; j >= 1; --j) {
    const double k = j * pi / L;
    sum += std::exp(-t * k * k) * std::sin(k * x) * std::sin(k * y);
  }
  return 2.0 / L * sum;
}

double kernel_dx_eigen(double L, double x, double y, double t, int modes) {
  check_args(L, t);
  double sum = 0.0;
  for (int j = modes; j >= 1; --j) {
    const double k = j * pi / L;
    sum += std::exp(-t * k * k) * k * std::cos(k * x) * std::sin(k * y);
  }
  return 2.0 / L * sum;
}

double kernel(double L, double x, double y, double t) {
  check_args(L, t);
  if (x + y > L) {
    x = L - x;
    y = L - y;
  }
  double sum = gauss(x - y, t) * -std::expm1(-x * y / t);
  const int M = image_count(L, t);
  for (int m = -M; m <= M; ++m) {
    if (m == 0) continue;
    sum += gauss(x - y - 2 * L * m, t) - gauss(x + y - 2 * L * m, t);
  }
  return sum;
}

double kernel_dx(double L, double x, double y, double t) {
  check_args(L, t);
  double sign = 1.0;
  if (x + y > L) {
    x = L - x;
    y = L - y;
    sign = -1.0;
  }
  const double e = std::exp(-x * y / t);
  double sum = -gauss(x - y, t) / (2 * t) * (x * -std::expm1(-x * y / t) - y * (1 + e));
  const int M = image_count(L, t);
  for (int m = -M; m <= M; ++m) {
    if (m == 0) continue;
    sum += gauss_d1(x - y - 2 * L * m, t) - gauss_d1(x + y - 2 * L * m, t);
  }
  return sign * sum;
}

double kernel_dxx(double L, double x, double y, double t) {
  check_args(L, t);
  double sum = 0.0;
  const int M = image_count(L, t);
  for (int m = -M; m <= M; ++m)
    sum += gauss_d2(x - y - 2 * L * m, t) - gauss_d2(x + y - 2 * L * m, t);
  return sum;
}

double kernel_shift(double L, double x, double y, double t) {
  check_args(L, t);
  double sum = 0.0;
  const int M = image_count(L, t);
  for (int m = -M; m <= M; ++m) sum -= 2 * gauss_d1(x + y - 2 * L * m, t);
  return sum;
}

double kernel_dx_shift(double L, double x, double y, double t) {
  check_args(L, t);
  double sum = 0.0;
  const int M = image_count(L, t);
  for (int m = -M; m <= M; ++m) sum -= 2 * gauss_d2(x + y - 2 * L * m, t);
  return sum;
}

double theta_eigen(double L, double x, double t, int modes) {
  check_args(L, t);
  if (modes <= 0) modes = required_modes(L, t, 1e-17);
  double sum = 0.0;
  for (int j = modes % 2 == 0 ? modes - 1 : modes; j >= 1; j -= 2) {
    const double k = j * pi / L;
    sum += 4.0 / (pi * j) * std::exp(-t * k * k) * std::sin(k * x);
  }
  return sum;
}

double theta_deficit(double L, double x, double t) {
  check_args(L, t);
  // Past t = L^2/8 theta is no longer close to 1 and its sine series needs
  // only a handful of terms.
  if (t > L * L / 8) return 1.0 - theta_eigen(L, x, t);
  const double s = 2 * std::sqrt(t);
  double sum = std::erfc(x / s) + std::erfc((L - x) / s);
  // erfc(27) underflows to zero; stop once both tails are past that point.
  for (int n = 1; (x + n * L) / s < 27.0; ++n)
    sum += (n % 2 == 0 ? 1.0 : -1.0) * std::erfc((x + n * L) / s);
  for (int n = 2; (n * L - x) / s < 27.0; ++n)
    sum -= (n % 2 == 0 ? 1.0 : -1.0) * std::erfc((n * L - x) / s);
  return sum;
}

}  // namespace interval

double kernel_point(const DomainSpec& dom, const Point& x, const Point& y, double t) {
  dom.validate();
  const int n1 = interval::required_modes(dom.L1, t);
  const int n2 = interval::required_modes(dom.L2, t);
  if (n1 > dom.N1 || n2 > dom.N2)
    throw ResolutionError("kernel_point: t = " + std::to_string(t) +
                              " is below the resolvable threshold of the mode budget",
                          std::max(n1, n2));
  return interval::kernel_eigen(dom.L1, x.x, y.x, t, dom.N1) *
         interval::kernel_eigen(dom.L2, x.y, y.y, t, dom.N2);
}

double kernel_images(const DomainSpec& dom, const Point& x, const Point& y, double t) {
  return interval::kernel(dom.L1, x.x, y.x, t) * interval::kernel(dom.L2, x.y, y.y, t);
}

std::array<double, 2> kernel_grad_x(const DomainSpec& dom, const Point& x, const Point& y,
                                    double t) {
  const double k1 = interval::kernel(dom.L1, x.x, y.x, t);
  const double k2 = interval::kernel(dom.L2, x.y, y.y, t);
  return {interval::kernel_dx(dom.L1, x.x, y.x, t) * k2,
          k1 * interval::kernel_dx(dom.L2, x.y, y.y, t)};
}

double theta(const DomainSpec& dom, const Point& x, double t) {
  return interval::theta_eigen(dom.L1, x.x, t) * interval::theta_eigen(dom.L2, x.y, t);
}

double theta_deficit(const DomainSpec& dom, const Point& x, double t) {
  const double d1 = interval::theta_deficit(dom.L1, x.x, t);
  const double d2 = interval::theta_deficit(dom.L2, x.y, t);
  return d1 + d2 - d1 * d2;
}

double fractional_constant(double s) {
  if (!(s > 0.0 && s < 2.0)) throw DomainError("fractional constant needs 0 < s < 2");
  const auto f = [s](double tau) {
    return tau > 0.0 ? -std::expm1(-tau) / tau * std::pow(tau, -0.5 * s) : 0.0;
  };
  const double head = quad::tanh_sinh(f, 0.0, 1.0, 1e-14).value;
  const double tail = quad::exp_sinh(f, 1.0, 1e-14).value;
  return 1.0 / (head + tail);
}

double fractional_constant_closed(double s) {
  if (!(s > 0.0 && s < 2.0)) throw DomainError("fractional constant needs 0 < s < 2");
  return 0.5 * s / boost::math::tgamma(1.0 - 0.5 * s);
}

double lambda_s_one(const DomainSpec& dom, const Point& x, double s) {
  dom.validate();
  if (!(s > 0.0 && s < 2.0)) throw DomainError("lambda_s_one needs 0 < s < 2");
  const double d = distance_to_boundary(dom, x);
  if (!(d > 0.0)) throw DomainError("lambda_s_one needs an interior point");
  const double e = -1.0 - 0.5 * s;
  // Below t0 the deficit is under erfc(10); beyond t1 Theta < e^{-42}.
  const double t0 = d * d / 400.0;
  const double t1 = 42.0 / dom.eigenvalue(1, 1);
  const auto f = [&](double t) { return std::pow(t, e) * theta_deficit(dom, x, t); };
  const double body = quad::geometric(f, t0, std::max(t1, 2 * t0), 2.0, 1e-12).value;
  const double tail = 2.0 / s * std::pow(std::max(t1, 2 * t0), -0.5 * s);
  return fractional_constant(s) * (body + tail);
}

double lambda_s_one_spectral(const DomainSpec& dom, const Point& x, double s) {
  dom.validate();
  if (!(s > 0.0 && s < 2.0)) throw DomainError("lambda_s_one needs 0 < s < 2");
  const double d = distance_to_boundary(dom, x);
  if (!(d > 0.0)) throw DomainError("lambda_s_one needs an interior point");

  const auto partial_sum = [&](double eps) {
    const int m1 = static_cast<int>(dom.L1 / pi * std::sqrt(42.0 / eps)) + 1;
    const int m2 = static_cast<int>(dom.L2 / pi * std::sqrt(42.0 / eps)) + 1;
    std::vector<double> a(m1 + 1);
    std::vector<double> b(m2 + 1);
    for (int j = 1; j <= m1; j += 2) a[j] = 4.0 / (pi * j) * std::sin(dom.kx(j) * x.x);
    for (int k = 1; k <= m2; k += 2) b[k] = 4.0 / (pi * k) * std::sin(dom.ky(k) * x.y);
    double sum = 0.0;
    for (int j = 1; j <= m1; j += 2) {
      const double kx2 = dom.kx(j) * dom.kx(j);
      if (eps * kx2 > 42.0) break;
      double row = 0.0;
      for (int k = 1; k <= m2; k += 2) {
        const double lam = kx2 + dom.ky(k) * dom.ky(k);
        if (eps * lam > 42.0) break;
        row += std::exp(-eps * lam) * std::pow(lam, 0.5 * s) * b[k];
      }
      sum += a[j] * row;
    }
    return sum;
  };

  // The regularized sum is e^{eps Delta} applied to Lambda^s 1, smooth in eps
  // up to terms of size e^{-d^2/(4 eps)} < e^{-50}.
  constexpr int levels = 6;
  std::vector<std::vector<double>> table(levels);
  for (int k = 0; k < levels; ++k) {
    const double eps = 0.005 * d * d / std::ldexp(1.0, k);
    table[k].push_back(partial_sum(eps));
    for (int m = 1; m <= k; ++m) {
      const double f = std::ldexp(1.0, m);
      table[k].push_back((f * table[k][m - 1] - table[k - 1][m - 1]) / (f - 1.0));
    }
  }
  return table.back().back();
}

double intpk_quadrature(double rho, double p, int m, int j, double K) {
  if (!(p > 0.0) || !(K > 0.0) || !(rho > 0.0) || m < 0 || j < 0)
    throw DomainError("intpk needs p, K, rho > 0 and m, j >= 0");
  if (m + j == 0 && std::isinf(rho)) throw DomainError("intpk with m = j = 0 needs finite rho");
  const double a = p * p / K;
  const auto f = [=](double t) {
    return std::pow(t, -1.0 - 0.5 * m) * std::pow(p / std::sqrt(t), j) * std::exp(-a / t);
  };
  const double lo = a / 200.0;
  const double hi = std::isinf(rho) ? 100.0 * a : rho * rho;
  if (hi <= lo) return 0.0;
  double value = quad::geometric(f, lo, hi, 2.0, 1e-13).value;
  if (std::isinf(rho)) value += quad::exp_sinh(f, hi, 1e-13).value;
  return value;
}

double intpk_closed(double rho, double p, int m, int j, double K) {
  if (!(p > 0.0) || !(K > 0.0) || !(rho > 0.0) || m < 0 || j < 0)
    throw DomainError("intpk needs p, K, rho > 0 and m, j >= 0");
  const double u0 = std::isinf(rho) ? 0.0 : p * p / (K * rho * rho);
  const double a = 0.5 * (m + j);
  if (m + j == 0) {
    if (u0 == 0.0) throw DomainError("intpk with m = j = 0 needs finite rho");
    return boost::math::expint(1, u0);
  }
  const double g = u0 == 0.0 ? boost::math::tgamma(a) : boost::math::tgamma(a, u0);
  return std::pow(K, a) * std::pow(p, -m) * g;
}

}  // namespace dsqg
