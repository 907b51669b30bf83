#pragma once

// Good cutoff functions at a length scale ell.
//
// chi(y) = S(y1/ell) S((L1-y1)/ell) S(y2/ell) S((L2-y2)/ell), with S the
// quintic smoothstep rescaled to [1/4, 1/2]. Every factor is C^2, so chi is
// C^2 on the closed rectangle; chi = 0 where d(y) <= ell/4 and chi = 1
// where d(y) >= ell/2. Away from the corner squares chi = S(d(y)/ell).

#include <vector>

#include "dsqg/domain.hpp"
#include "dsqg/report.hpp"

namespace dsqg {

/// Quintic smoothstep: 0 for u <= 1/4, 1 for u >= 1/2.
double smoothstep(double u) noexcept;
double smoothstep_d1(double u) noexcept;
double smoothstep_d2(double u) noexcept;

struct Cutoff {
  double ell = 0.0;
  GridField chi;
  GridField chi_x;
  GridField chi_y;
  /// False when ell exceeds min(L1, L2)/4; such cutoffs are still built.
  bool within_ell0 = true;

  double value(const Point& p) const;
  std::pair<double, double> grad(const Point& p) const;
  /// Frobenius norm of the Hessian at p.
  double hessian_norm(const Point& p) const;
};

/// Throws ResolutionError when ell is shorter than 4 grid spacings and
/// DomainError when no point has d(x) >= ell.
Cutoff make_good_cutoff(const DomainSpec& dom, double ell);

/// Cutoff checks over the given scales:
///   cutoff-gradient     max |grad chi| ell, finite differences
///   cutoff-hessian      max |grad^2 chi| ell^2, finite differences
///   cutoff-far-mass-jJ  int (1-chi)/|x-y|^{2+j} dy <= C d(x)^{-j}, d(x) >= ell
///   cutoff-grad-mass    int |grad chi|/|x-y|^{2-alpha} dy <= C d(x)^{-(1-alpha)}
/// The stability ratio is max/min of the per-scale constants.
std::vector<BoundFitReport> verify_cutoff(const DomainSpec& dom, const std::vector<double>& ells,
                                          const std::vector<int>& js = {-1, 0, 1},
                                          double alpha = 0.5);

}  // namespace dsqg
