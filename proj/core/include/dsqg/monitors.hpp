#pragma once

// Interior regularity monitors over a solver trajectory. Monitors only read
// snapshots; attaching them as run observers leaves the run unchanged.

#include <vector>

#include "dsqg/galerkin.hpp"
#include "dsqg/report.hpp"

namespace dsqg {

struct MonitorSeries {
  std::vector<double> t;
  std::vector<double> value;
  /// Same quantity on snapshots resampled to the doubled grid.
  std::vector<double> value_refined;
  BoundFitReport report;
};

/// s(t) = sup over d(x) >= ell, spacing <= |h| <= ell/16 of |delta_h theta| / |h|^alpha.
/// Gamma = max_t s(t) / (s(0) + ell^{-alpha} |theta_0|_inf), refitted on the
/// doubled grid for the stability ratio. extra records eps = alpha |theta_0|_inf
/// and whether eps <= 0.1.
MonitorSeries holder_evolution_monitor(const std::vector<SolverState>& trajectory, double alpha,
                                       double ell);

/// g(t) = sup over d(x) >= ell of d(x) |grad theta| (ell = 0: all x).
/// Gamma_1 = max_t g(t) / (g(0) + (1 + |theta_0|_inf)^4).
MonitorSeries gradient_evolution_monitor(const std::vector<SolverState>& trajectory,
                                         double ell = 0.0);

/// Compares the constants of two monitor runs (for instance two data
/// amplitudes): constant = max of the two, stability ratio = second/first.
BoundFitReport compare_monitors(const MonitorSeries& a, const MonitorSeries& b,
                                const std::string& id);

/// Observer that evaluates the gradient monitor quantity on each recorded
/// state into `sink` (used to check that observation is side-effect free).
Observer gradient_observer(std::vector<double>& sink, double ell = 0.0);

}  // namespace dsqg
