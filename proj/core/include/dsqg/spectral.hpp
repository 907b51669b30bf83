#pragma once

// Exact Dirichlet spectral calculus on a rectangle.
//
// Transforms are DST-I pairs (FFTW). All operators act diagonally on the
// sine coefficients; derivatives leave the sine basis and are therefore
// returned as grid values.

#include <utility>

#include "dsqg/domain.hpp"

namespace dsqg {

SpectralField to_spectral(const GridField& g);
GridField from_spectral(const SpectralField& a);

/// Lambda^s = (-Delta_D)^{s/2} for s in [0, 2].
SpectralField apply_lambda_s(const SpectralField& a, double s);

/// Lambda^{-1}; all eigenvalues are positive on a bounded rectangle.
SpectralField apply_lambda_inverse(const SpectralField& a);

/// Coefficientwise multiplication by lambda^{p/2} for any real p. Used
/// internally for Sobolev-type norms outside [0, 2].
SpectralField apply_lambda_power(const SpectralField& a, double p);

/// ||f||_{s,D} = (sum lambda^s a^2)^{1/2}.
double dirichlet_norm(const SpectralField& a, double s);

/// Zeroes every coefficient with j > n1 or k > n2.
SpectralField truncate(const SpectralField& a, int n1, int n2);

/// Re-expresses `a` on another domain with the same side lengths, padding
/// with zeros or truncating modes as needed.
SpectralField resample_modes(const SpectralField& a, const DomainSpec& target);

/// (d/dx f, d/dy f) at the interior grid points.
std::pair<GridField, GridField> gradient(const SpectralField& a);

/// Second derivatives (f_xx, f_xy, f_yy) at the interior grid points.
struct Hessian {
  GridField xx;
  GridField xy;
  GridField yy;
};
Hessian hessian(const SpectralField& a);

/// Pointwise evaluation of the sine series at an arbitrary point of the
/// closed rectangle.
double evaluate(const SpectralField& a, const Point& p);
/// Gradient of the sine series at an arbitrary point of the closed rectangle.
std::pair<double, double> evaluate_gradient(const SpectralField& a, const Point& p);

/// u = grad-perp Lambda^{-1} theta = (-d_y psi, d_x psi), psi = Lambda^{-1}theta.
/// Components are stored on the closed (N1+2) x (N2+2) grid including the
/// boundary so that boundary behaviour can be inspected directly.
class VelocityField {
 public:
  VelocityField(const DomainSpec& dom, Array2D u1_closed, Array2D u2_closed);

  const DomainSpec& domain() const noexcept { return dom_; }
  /// Interior values.
  GridField u1() const;
  GridField u2() const;
  const Array2D& u1_closed() const noexcept { return u1_; }
  const Array2D& u2_closed() const noexcept { return u2_; }
  double max_speed() const noexcept;
  /// Largest |u . n| over the boundary nodes.
  double max_boundary_normal() const noexcept;

 private:
  DomainSpec dom_;
  Array2D u1_;
  Array2D u2_;
};

VelocityField riesz_velocity(const SpectralField& theta);

/// Spectral divergence re-derived from the closed-grid velocity samples
/// (re-analysed in the mixed sine/cosine basis, then differentiated).
/// Returned on the closed grid.
Array2D divergence(const VelocityField& u);

}  // namespace dsqg
