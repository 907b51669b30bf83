#pragma once

// Closed forms on the upper half plane {x2 > 0}: the Dirichlet heat kernel,
// its Theta and Lambda 1, the cancellation of (grad_x + grad_y) H, and the
// velocity of compactly supported data with its inner/outer split.

#include <functional>
#include <vector>

#include "dsqg/array2d.hpp"
#include "dsqg/domain.hpp"
#include "dsqg/report.hpp"

namespace dsqg::halfspace {

/// Normalization of the two-dimensional Riesz kernel, 1/(2 pi).
inline constexpr double kRieszConstant = 0.15915494309189535;

/// One-dimensional Gaussian (4 pi t)^{-1/2} exp(-z^2/(4t)).
double gaussian(double z, double t);

/// G_t(x1-y1) [G_t(x2-y2) - G_t(x2+y2)].
double kernel(const Point& x, const Point& y, double t);

/// grad_x of the kernel.
std::pair<double, double> kernel_grad_x(const Point& x, const Point& y, double t);

/// Theta(x2, t) = erf(x2 / (2 sqrt t)).
double theta(double x2, double t);
/// Theta from the Gaussian integral (2 pi)^{-1/2} int_{-a}^{a} e^{-xi^2/2}, a = x2/sqrt(2t).
double theta_gaussian_integral(double x2, double t);
/// Theta as the y-integral of the kernel (nested adaptive quadrature).
double theta_kernel_integral(double x2, double t);

/// int_0^inf t^{-3/2} (1 - Theta(x2, t)) dt by adaptive quadrature.
double lambda_one_raw(double x2);
/// c_1 = 1 / int_0^inf (1 - e^{-tau}) tau^{-3/2} dtau by quadrature.
double lambda_one_constant();
/// c_1 * lambda_one_raw(x2).
double lambda_one(double x2);

/// Both components of (grad_x + grad_y) H at (x, y, t) in closed form; the
/// tangential one is identically zero.
std::pair<double, double> cancellation(const Point& x, const Point& y, double t);

/// y-integral of |(grad_x + grad_y) H| against C t^{-1/2} e^{-x2^2/(4t)},
/// C = pi^{-1/2}, over x2 in {0.5, 1, 2} and t in {0.05, 0.25, 1, 4}.
BoundFitReport cancellation_check();

/// |grad_x H| / H <= C [t^{-1/2} (1 + |x-y|/sqrt t) + 1/x2] over a sweep
/// of (x, y, t); refitted on a doubled sweep for the stability ratio.
BoundFitReport gradient_bound_check();

/// Compactly supported data in the upper half plane. `d1` (the x1
/// derivative) is only needed by the direct velocity route.
struct Field {
  std::function<double(double, double)> value;
  std::function<double(double, double)> d1;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;  // support box, y_lo > 0
};

/// Gaussian bump amplitude exp(-|y-c|^2/(2 sigma^2)) with support box
/// c +- 10 sigma. Throws DomainError if the box reaches x2 <= 0.
Field bump(double amplitude, const Point& centre, double sigma);

struct Velocity {
  double u2 = 0;
  double inner = 0;  // |x-y| < delta
  double outer = 0;  // |x-y| >= delta
  /// Horizontal Holder constant sup |theta(y + h e1) - theta(y)| / |h|^alpha.
  double holder_x = 0;
  double alpha = 0;
  double sup = 0;  // |theta|_inf
  double l1 = 0;   // |theta|_{L^1}
  /// |inner| / (holder_x delta^alpha).
  double inner_ratio = 0;
  /// |outer| / (log(L/delta) |theta|_inf + L^{-2} |theta|_{L^1}).
  double outer_ratio = 0;
};

/// u2(x) = c int (|x-y|^{-3} - |x-y~|^{-3}) (x1-y1) theta(y) dy, y~ = (y1, -y2),
/// split at |x-y| = delta; polar coordinates about x.
Velocity velocity_u2(const Field& theta, const Point& x, double delta, double L,
                     double alpha = 0.5);

/// Same u2 without the split, integrated by parts:
///   u2(x) = -c int (|x-y|^{-1} - |x-y~|^{-1}) d1 theta(y) dy.
double velocity_u2_direct(const Field& theta, const Point& x);

/// u1(x1, 0) = -c int 2 y2 ((x1-y1)^2 + y2^2)^{-3/2} theta(y) dy.
double boundary_slip(const Field& theta, double x1);

/// Odd extension in x2 of samples on rows x2 = k h, k = 1..n2 (row index
/// is the second array index). The result has 2 n2 + 1 columns for
/// x2 = -n2 h .. n2 h; the middle column (x2 = 0) is zero.
Array2D odd_reflection(const Array2D& upper);
/// Columns with x2 > 0 of an extended array.
Array2D upper_half(const Array2D& extended);

}  // namespace dsqg::halfspace
