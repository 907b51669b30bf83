#pragma once

// One-dimensional quadrature front ends over Boost.Math. All routines throw
// QuadratureError when the reported error estimate misses the tolerance.

#include <functional>
#include <vector>

namespace dsqg::quad {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod on a finite interval.
Result gauss_kronrod(const Integrand& f, double a, double b, double rel_tol = 1e-12,
                     unsigned max_depth = 18);

/// Double-exponential rule on a finite interval; tolerates integrable
/// endpoint singularities.
Result tanh_sinh(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Double-exponential rule on [a, infinity).
Result exp_sinh(const Integrand& f, double a, double rel_tol = 1e-12);

/// Integral over [t0, t1] split into geometric panels of ratio `ratio`, each
/// integrated by Gauss-Kronrod. Suited to integrands with a scale t0 near
/// the left end point.
Result geometric(const Integrand& f, double t0, double t1, double ratio = 2.0,
                 double rel_tol = 1e-12);

/// Composite Gauss-Legendre with `panels` equal panels of `order` nodes;
/// a fixed rule for smooth integrands with known scales.
double gauss_legendre(const Integrand& f, double a, double b, int panels, int order = 20);

/// Nodes and weights of a composite rule, for tensor-product integrals.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Composite Gauss-Legendre rule over consecutive break points (sorted,
/// empty panels skipped); `order` is 10, 20 or 30.
Rule gauss_legendre_rule(const std::vector<double>& breaks, int order = 10);

}  // namespace dsqg::quad
