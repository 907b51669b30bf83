#pragma once

// The dissipation bracket D(f) = f Lambda^s f - 1/2 Lambda^s (f^2), the
// Cordoba-type gap, and the nonlinear lower bounds for localized finite
// differences and gradients.

#include <functional>
#include <string>
#include <vector>

#include "dsqg/cutoff.hpp"
#include "dsqg/domain.hpp"
#include "dsqg/report.hpp"

namespace dsqg {

/// Nonlinear functions of f are formed on a grid refined by this factor and
/// kept with all of that grid's modes; the result is read back at the
/// original points (which are a subset of the refined ones).
struct DissipationOptions {
  int refine = 8;
};

/// Lambda^s phi(f) at the grid points of f, where f is the sine interpolant
/// of its coefficients. phi must vanish at 0.
GridField lambda_s_of(const SpectralField& f, double s, const std::function<double(double)>& phi,
                      const DissipationOptions& opt = {});

struct DissipationField {
  GridField D;
  double s = 1.0;
};

/// D(f) for s in (0, 2), f read as its sine interpolant.
DissipationField compute_D(const GridField& f, double s, const DissipationOptions& opt = {});
DissipationField compute_D(const SpectralField& f, double s, const DissipationOptions& opt = {});

/// Independent evaluation through the heat representation
///   D(f)(x) = c_s/2 int t^{-1-s/2} int H (f(x)-f(y))^2 dy dt + 1/2 f(x)^2 Lambda^s 1(x),
/// with the inner y-integral expanded in one-dimensional kernel moments
/// against cosines, computed by Gauss-Legendre quadrature of the image sum.
double dissipation_quadrature(const SpectralField& f, const Point& x, double s);

/// Catalogue of convex Phi with Phi(0) = 0.
struct ConvexFunction {
  enum class Kind { Linear, Square, Quartic, AbsPower };
  Kind kind = Kind::Square;
  double p = 2.0;  // exponent for AbsPower, p >= 2 keeps Phi in C^2

  double phi(double f) const;
  double dphi(double f) const;
  std::string name() const;
  /// "linear", "square", "quartic", "abs-power:<p>"; throws DomainError
  /// for anything else.
  static ConvexFunction parse(const std::string& id);
};

struct CordobaResult {
  /// Phi'(f) Lambda^s f - Lambda^s Phi(f).
  GridField lhs;
  /// (f Phi'(f) - Phi(f)) / d(x)^s.
  GridField weight;
  /// lhs - c weight with the fitted c (zero where c is infinite).
  GridField gap;
  BoundFitReport report;
};

struct CordobaOptions {
  /// Absolute slack in "gap >= -tolerance", scaled by max |lhs|.
  double tolerance = 1e-10;
  /// Also fit on the grid refined to 2(N+1)-1 and report the ratio.
  bool refine = true;
  DissipationOptions dissipation{};
};

CordobaResult cordoba_gap(const GridField& f, const ConvexFunction& phi, double s,
                          const CordobaOptions& opt = {});

struct LowerBoundOptions {
  /// Threshold multiplier of the active set.
  double M = 10.0;
  /// Multipliers scanned to measure where the fitted constant stabilizes.
  std::vector<double> M_scan{0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 50, 100};
  /// Also fit on the grid refined to 2(N+1)-1 with the same physical h.
  bool refine = true;
  DissipationOptions dissipation{};
};

/// Lower bound for f = chi delta_h q at points with d(x) >= ell:
///   D(f) >= g1 |h|^{-s} |f_d|^{2+s} / |q|_inf^s + g1 f^2 / d(x)^s,
/// |f_d| = |f| where |f| >= M |q|_inf |h| / d(x), else 0. Reports the
/// largest g1; extra records whether |h| <= ell/16 holds.
BoundFitReport finite_diff_lower_bound_report(const GridField& q, int hx, int hy, double ell,
                                              double s, const LowerBoundOptions& opt = {});

/// Same for f = chi d_i q, i = 0 (x) and 1 (y):
///   D(f) >= g2 |f_d|^{2+s/(1-a)} d(x)^{s a/(1-a)} / |q|_{C^a}^{s/(1-a)} + g1 f^2/d(x)^s,
/// |f_d| = |f| where |f| >= M |q|_inf / d(x). g1 is half the best constant
/// of the second term alone; g2 is the largest constant for the first term
/// given that g1. |q|_{C^a} is the weighted interior norm; the fit with the
/// uniform Holder norm is kept in extra.
std::vector<BoundFitReport> gradient_lower_bound_report(const GridField& q, double alpha,
                                                        double ell, double s,
                                                        const LowerBoundOptions& opt = {});

}  // namespace dsqg
