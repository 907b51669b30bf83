#pragma once

// Dirichlet heat semigroup on a rectangle. The kernel of a rectangle is the
// product of two interval kernels, and every interval kernel is available in
// two independent forms: the eigenfunction series and the method-of-images
// sum. The first is the primary evaluation, the second its oracle.

#include <array>

#include "dsqg/domain.hpp"

namespace dsqg {

/// e^{t Delta} f: multiplies coefficient jk by e^{-t lambda_jk}.
SpectralField heat_evolve(const SpectralField& f, double t);

namespace interval {

/// Smallest mode count n with e^{-t (n pi/L)^2} <= tol.
int required_modes(double L, double t, double tol = 1e-14);

/// (2/L) sum_{j<=modes} e^{-t (j pi/L)^2} sin(j pi x/L) sin(j pi y/L).
double kernel_eigen(double L, double x, double y, double t, int modes);
/// d/dx of kernel_eigen.
double kernel_dx_eigen(double L, double x, double y, double t, int modes);

/// Image sum sum_m [G_t(x-y-2Lm) - G_t(x+y-2Lm)] with the free Gaussian
/// G_t(z) = (4 pi t)^{-1/2} e^{-z^2/(4t)}. The pair nearest to the closest
/// end point is combined through expm1 so the kernel keeps full relative
/// accuracy next to the boundary.
double kernel(double L, double x, double y, double t);
double kernel_dx(double L, double x, double y, double t);
/// d^2/dx^2 of the image sum (no boundary pairing; intended for points away
/// from the end points).
double kernel_dxx(double L, double x, double y, double t);
/// (d/dx + d/dy) kernel: only the reflected images survive.
double kernel_shift(double L, double x, double y, double t);
/// d/dx (d/dx + d/dy) kernel.
double kernel_dx_shift(double L, double x, double y, double t);

/// Heat solution with initial value 1 from its sine series (odd modes,
/// coefficients 4/(pi j)), using `modes` terms or required_modes if 0.
double theta_eigen(double L, double x, double t, int modes = 0);
/// 1 - theta as an alternating erfc image sum, accurate when theta is near 1.
double theta_deficit(double L, double x, double t);

}  // namespace interval

/// Two-dimensional kernel from the eigenseries truncated at the domain's
/// mode counts. Throws ResolutionError (carrying the needed N) when the
/// truncation tail e^{-t lambda_max} in either direction exceeds 1e-14.
double kernel_point(const DomainSpec& dom, const Point& x, const Point& y, double t);

/// Two-dimensional kernel as a product of image sums (no truncation limit).
double kernel_images(const DomainSpec& dom, const Point& x, const Point& y, double t);

/// Gradient of the kernel in its first argument (image sums).
std::array<double, 2> kernel_grad_x(const DomainSpec& dom, const Point& x, const Point& y,
                                    double t);

/// Theta(x, t) = (e^{t Delta} 1)(x) from the product of interval sine series.
double theta(const DomainSpec& dom, const Point& x, double t);
/// 1 - Theta(x, t) from the image representation.
double theta_deficit(const DomainSpec& dom, const Point& x, double t);

/// c_s with lambda^{s/2} = c_s int_0^inf (1 - e^{-t lambda}) t^{-1-s/2} dt,
/// by quadrature of the normalization integral.
double fractional_constant(double s);
/// Closed form (s/2)/Gamma(1 - s/2).
double fractional_constant_closed(double s);

/// (Lambda^s 1)(x) = c_s int_0^inf t^{-1-s/2} (1 - Theta(x,t)) dt by time
/// quadrature.
double lambda_s_one(const DomainSpec& dom, const Point& x, double s);

/// Same quantity from the eigenfunction expansion of 1: heat-regularized
/// partial sums sum e^{-eps lambda} lambda^{s/2} b_jk w_jk(x) extrapolated to
/// eps -> 0 by Richardson's method.
double lambda_s_one_spectral(const DomainSpec& dom, const Point& x, double s);

/// int_0^{rho^2} t^{-1-m/2} (p/sqrt t)^j e^{-p^2/(K t)} dt by quadrature;
/// rho may be +infinity. Needs m + j > 0 unless rho is finite.
double intpk_quadrature(double rho, double p, int m, int j, double K);
/// K^{(m+j)/2} p^{-m} Gamma((m+j)/2, p^2/(K rho^2)); E1 for m = j = 0.
double intpk_closed(double rho, double p, int m, int j, double K);

}  // namespace dsqg
