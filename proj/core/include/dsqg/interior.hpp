#pragma once

// Weighted interior norms, finite differences, commutators and the Riesz
// bound checks.

#include <array>
#include <cstdint>
#include <vector>

#include "dsqg/cutoff.hpp"
#include "dsqg/domain.hpp"
#include "dsqg/report.hpp"

namespace dsqg {

/// delta_h f(x) = f(x+h) - f(x) for a grid displacement h = (hx dx, hy dy).
/// `defined` marks points with x+h in the closed rectangle. Elsewhere the
/// value uses the zero extension of f, which is what products with a
/// cutoff vanishing near the boundary need.
struct PartialField {
  GridField values;
  std::vector<std::uint8_t> defined;  // row-major, N1 x N2

  bool is_defined(int i, int k) const noexcept {
    return defined[std::size_t(i) * values.domain.N2 + k] != 0;
  }
};

PartialField delta_h(const GridField& f, int hx, int hy);

struct HolderReport {
  double alpha = 0.0;
  double seminorm = 0.0;
  /// |f|_inf + seminorm.
  double norm = 0.0;
  /// Witness: grid indices of x and the displacement in grid steps.
  int i = -1, k = -1, hx = 0, hy = 0;
};

/// sup_x d(x)^alpha sup_{spacing <= |h| < d(x)} |f(x+h) - f(x)| / |h|^alpha
/// over grid-aligned h, with pruning. Throws ResolutionError when no pair
/// is admissible.
HolderReport weighted_holder_seminorm(const GridField& f, double alpha);

/// Same quantity by exhaustive enumeration of all grid pairs (x, y).
HolderReport weighted_holder_seminorm_bruteforce(const GridField& f, double alpha);

/// sup over grid pairs x != y of |f(x) - f(y)| / |x - y|^alpha, boundary
/// points (value 0) included.
double uniform_holder_seminorm(const GridField& f, double alpha);

/// sup over x with d(x) >= ell and grid h with spacing <= |h| <= ell/16 of
/// |delta_h f| / |h|^alpha. When ell/16 is below one spacing only the
/// shortest steps (|h| = one spacing) are used.
double restricted_holder(const GridField& f, double alpha, double ell);

/// Every factor-th point of f; requires (N+1) divisible by factor.
GridField subsample(const GridField& f, int factor);

struct GradientSup {
  double value = 0.0;
  int i = -1, k = -1;
};

/// sup_x d(x) |grad f(x)| with the spectral gradient.
GradientSup weighted_gradient_sup(const GridField& f);

struct CommutatorResult {
  /// C_h (one field) or C_chi (two components).
  std::vector<GridField> field;
  BoundFitReport report;
};

/// C_h(theta) = delta_h Lambda theta - Lambda(chi delta_h theta), fitted
/// Gamma_0 = max over d(x) >= ell of |C_h| d(x)^2 / (|h| |theta|_inf).
/// Throws DomainError unless |h| < ell; extra records whether |h| <= ell/16.
CommutatorResult commutator_h(const GridField& theta, int hx, int hy, const Cutoff& chi);

/// C_chi(theta) = grad Lambda theta - Lambda(chi grad theta), fitted
/// Gamma_3 = max over d(x) >= ell of |C_chi| d(x)^2 / |theta|_inf.
CommutatorResult commutator_grad(const GridField& theta, const Cutoff& chi);

/// Control case on the 2 pi-periodic torus with chi = 1: max |delta_h
/// Lambda theta - Lambda delta_h theta| for a periodic n0 x n1 sample array.
double torus_commutator_h(const Array2D& theta, int hx, int hy);
/// max |grad Lambda theta - Lambda grad theta| on the torus.
double torus_commutator_grad(const Array2D& theta);

/// Choices made where the proofs only assert existence.
struct RhoPolicy {
  double c = 0.5;        // rho <= c d(x) in the finite-difference bound
  double C5 = 1.0;       // rho = 1/(C5 |grad theta|) in the gradient bound
  double floor_spacings = 2.0;
};

/// |delta_h u| <= C (sqrt(rho D(f)) + |theta|_inf (|h|/d + |h|/rho) + |delta_h theta|),
/// f = chi delta_h theta, over d(x) >= ell.
BoundFitReport riesz_diff_bound_check(const GridField& theta, int hx, int hy, const Cutoff& chi,
                                      const RhoPolicy& rho = {});

/// |grad u| <= C (sqrt(rho D(f)) + |theta|_inf (1/d + 1/rho) + |grad theta|),
/// f = chi grad theta (D summed over components), over d(x) >= ell.
BoundFitReport riesz_grad_bound_check(const GridField& theta, const Cutoff& chi,
                                      const RhoPolicy& rho = {});

}  // namespace dsqg
