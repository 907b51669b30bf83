#pragma once

// Galerkin pseudospectral integrator for critical SQG on a rectangle,
//   d_t theta + P_n(u . grad theta) + Lambda theta = 0,  u = grad-perp Lambda^{-1} theta.
//
// The sine series is evaluated as the odd-odd extension on the doubled
// periodic box, where products are formed with real FFTs. Lambda is
// integrated exactly per mode; the advection term by explicit Runge-Kutta.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dsqg/domain.hpp"
#include "dsqg/report.hpp"

namespace dsqg {

enum class Stepper { IntegratingFactorRK2, IntegratingFactorRK3 };
enum class Dealias { TwoThirds, RefinedGrid };

std::string to_string(Stepper s);
std::string to_string(Dealias d);
/// "rk2" / "rk3" and "two-thirds" / "refined-grid"; throw ConfigError otherwise.
Stepper parse_stepper(const std::string& s);
Dealias parse_dealias(const std::string& s);

struct SolverConfig {
  /// Retained modes per direction (isotropic band j, k <= n).
  int n = 64;
  double dt = 1e-3;
  double T_end = 1.0;
  Dealias dealias = Dealias::TwoThirds;
  Stepper stepper = Stepper::IntegratingFactorRK2;
  /// Switch the advection term off (pure dissipation).
  bool nonlinear = true;
  /// Diagnostics and snapshots every this many steps (and at both ends).
  int record_every = 10;
  /// Substeps are taken when dt > cfl dx / max|u|.
  double cfl = 0.5;
  /// Stop with BlowUp when |Lambda^2 theta| exceeds this multiple of its initial value.
  double blowup_factor = 1e6;
  /// Stop with ResolutionFailure when the energy fraction in modes with
  /// max(j, k) > n/2 exceeds this.
  double resolution_tolerance = 1e-8;
  /// Exponent for the weighted Holder column; 0 leaves the column NaN.
  double holder_alpha = 0.0;
  /// Weighted gradient sup column.
  bool gradient_column = true;

  void validate() const;
};

struct SolverState {
  double t = 0.0;
  /// Coefficients on DomainSpec{L1, L2, n, n}.
  SpectralField theta;
};

/// One row of the diagnostics CSV.
struct DiagnosticsRow {
  double t = 0;
  double L2 = 0;
  double Linf = 0;
  double H2 = 0;
  double H25 = 0;
  double holder = 0;
  double grad_weighted = 0;
};

enum class RunStatus { Completed, BlowUp, ResolutionFailure, NonFinite };
std::string to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::string message;
  std::vector<SolverState> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  std::size_t steps = 0;
  /// Largest number of CFL substeps taken for one step.
  int max_substeps = 1;
  /// Largest relative non-odd-odd content of the advection spectrum.
  double odd_defect = 0;
  /// Largest |theta_0| within min(L1, L2)/16 of the wall, relative to |theta_0|_inf.
  double boundary_mass = 0;
  bool compact_support = true;
};

/// P_n(u . grad theta) for a state on DomainSpec{L1, L2, n1, n2}. When
/// odd_defect is given it receives the largest modulus of the advection
/// spectrum outside the odd-odd subspace, relative to its largest modulus.
SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias = Dealias::TwoThirds,
                             double* odd_defect = nullptr);

/// Side of the periodic grid used for a band of n modes.
int dealias_grid(int n, Dealias dealias);

/// sup |theta| of the sine series: grid search on a doubled grid, then
/// Newton refinement of the extremal point.
double sup_norm(const SpectralField& theta);

/// Advances by cfg.dt (with CFL substeps). Throws BlowUpError on
/// non-finite coefficients.
SolverState step(const SolverState& state, const SolverConfig& cfg);

using Observer = std::function<void(const SolverState&, const DiagnosticsRow&)>;

/// Projects theta0 onto the retained band and integrates to T_end.
/// The observer sees every recorded state and cannot modify it.
RunResult run(const GridField& theta0, const SolverConfig& cfg, const Observer& observer = {});

/// Discrete check of
///   d/dt |L^2 theta|^2 + |L^{5/2} theta|^2 <= C |L^2 theta|^2 |L^{5/2} theta|,
///   |L^2 theta(t)|^2 + int_0^t |L^{5/2} theta|^2 <= C' |L^2 theta_0|^2
/// over consecutive diagnostics rows. extra carries C', the local time
/// 1/(C^2 |L^2 theta_0|^2) and the integral.
BoundFitReport h2_energy_check(const RunResult& run);

}  // namespace dsqg
