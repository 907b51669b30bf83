#pragma once

#include <cstddef>

#include "dsqg/array2d.hpp"

namespace dsqg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Rectangle (0,L1) x (0,L2) with N1 x N2 interior collocation points
/// x_i = i L1/(N1+1), i = 1..N1 (and likewise in y). The same counts fix the
/// number of retained sine modes per direction, which makes the grid <->
/// coefficient map a DST-I pair.
struct DomainSpec {
  double L1 = 0.0;
  double L2 = 0.0;
  int N1 = 0;
  int N2 = 0;

  /// Throws DomainError unless L1, L2 > 0 and N1, N2 >= 4.
  void validate() const;

  double dx() const noexcept { return L1 / (N1 + 1); }
  double dy() const noexcept { return L2 / (N2 + 1); }
  /// Coordinate of interior grid index i (0-based, i = 0..N1-1).
  double x(int i) const noexcept { return (i + 1) * dx(); }
  double y(int k) const noexcept { return (k + 1) * dy(); }
  Point point(int i, int k) const noexcept { return {x(i), y(k)}; }

  /// Wavenumber j*pi/L1 of sine mode j (1-based).
  double kx(int j) const noexcept;
  double ky(int k) const noexcept;
  /// Dirichlet eigenvalue (j pi/L1)^2 + (k pi/L2)^2, 1-based mode indices.
  double eigenvalue(int j, int k) const noexcept;
  /// 2/sqrt(L1 L2): the amplitude of every normalized eigenfunction.
  double mode_amplitude() const noexcept;

  /// Same rectangle with the grid refined to factor*(N+1)-1 points so that
  /// the original grid points are a subset of the new ones.
  DomainSpec refined(int factor) const;

  bool contains(const Point& p) const noexcept;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Distance from p to the boundary of the rectangle; p must lie in the
/// closed rectangle.
double distance_to_boundary(const DomainSpec& dom, const Point& p);

/// Eigenvalues lambda_jk for 1 <= j <= N1, 1 <= k <= N2 stored at (j-1, k-1).
class Spectrum {
 public:
  explicit Spectrum(const DomainSpec& dom);
  const DomainSpec& domain() const noexcept { return dom_; }
  double operator()(int j, int k) const noexcept { return lambda_(j - 1, k - 1); }
  const Array2D& values() const noexcept { return lambda_; }
  double min() const noexcept { return lambda_(0, 0); }
  double max() const noexcept { return lambda_(lambda_.rows() - 1, lambda_.cols() - 1); }
  double normalization() const noexcept { return dom_.mode_amplitude(); }

 private:
  DomainSpec dom_;
  Array2D lambda_;
};

/// Point values on the interior collocation grid; the boundary value is 0.
struct GridField {
  DomainSpec domain;
  Array2D values;

  GridField() = default;
  explicit GridField(const DomainSpec& dom);
  GridField(const DomainSpec& dom, Array2D v);

  double& operator()(int i, int k) noexcept { return values(i, k); }
  double operator()(int i, int k) const noexcept { return values(i, k); }
  double max_abs() const noexcept { return values.max_abs(); }
  /// Discrete L2 norm (trapezoid weights, exact for band-limited fields).
  double l2_norm() const noexcept;
};

/// Coefficients a_jk in the normalized Dirichlet eigenbasis,
/// w_jk = (2/sqrt(L1 L2)) sin(j pi x/L1) sin(k pi y/L2); a_jk at (j-1, k-1).
struct SpectralField {
  DomainSpec domain;
  Array2D coeffs;

  SpectralField() = default;
  explicit SpectralField(const DomainSpec& dom);
  SpectralField(const DomainSpec& dom, Array2D c);

  /// The single normalized eigenfunction w_jk (1-based indices).
  static SpectralField mode(const DomainSpec& dom, int j, int k, double amplitude = 1.0);

  double& operator()(int j, int k) noexcept { return coeffs(j - 1, k - 1); }
  double operator()(int j, int k) const noexcept { return coeffs(j - 1, k - 1); }
  /// L2(Omega) norm by Parseval.
  double l2_norm() const noexcept;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
GridField operator+(const GridField& a, const GridField& b);
GridField operator-(const GridField& a, const GridField& b);
GridField operator*(double s, const GridField& a);

/// Samples f at the interior collocation points.
template <class F>
GridField sample(const DomainSpec& dom, F&& f) {
  GridField g(dom);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) g(i, k) = f(dom.x(i), dom.y(k));
  return g;
}

void require_same_domain(const DomainSpec& a, const DomainSpec& b);

}  // namespace dsqg
