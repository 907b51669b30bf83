#include "dsqg/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsqg/error.hpp"
#include "dsqg/interior.hpp"
#include "dsqg/spectral.hpp"

namespace dsqg {

namespace {

GridField on_grid(const SpectralField& a, bool refined) {
  return from_spectral(refined ? resample_modes(a, a.domain.refined(2)) : a);
}

double gradient_quantity(const GridField& f, double ell) {
  const DomainSpec& dom = f.domain;
  const auto [gx, gy] = gradient(to_spectral(f));
  double best = 0;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d < ell) continue;
      best = std::max(best, d * std::hypot(gx(i, k), gy(i, k)));
    }
  return best;
}

void fit(MonitorSeries& m, double base, double base_refined) {
  auto& r = m.report;
  r.sense = BoundFitReport::Sense::Upper;
  const double top = *std::max_element(m.value.begin(), m.value.end());
  const double top_r = *std::max_element(m.value_refined.begin(), m.value_refined.end());
  if (base > 0) {
    r.constant = top / base;
    const double fine = base_refined > 0 ? top_r / base_refined : 0.0;
    r.extra["refined_constant"] = fine;
    r.stability_ratio = fine / r.constant;
    const auto at = std::size_t(std::max_element(m.value.begin(), m.value.end()) - m.value.begin());
    r.witness["t"] = m.t[at];
    r.pass = std::isfinite(r.constant) && stable_ratio(r.stability_ratio);
  } else {
    // Zero data stays zero: 0 <= Gamma * 0 for any Gamma.
    r.constant = 0;
    r.note = "zero data";
    r.pass = top == 0.0;
  }
  r.extra["max_value"] = top;
  r.extra["bound_base"] = base;
  r.sweep_size = m.t.size();
}

void check_trajectory(const std::vector<SolverState>& traj) {
  if (traj.empty()) throw DomainError("empty trajectory");
}

}  // namespace

MonitorSeries holder_evolution_monitor(const std::vector<SolverState>& traj, double alpha,
                                       double ell) {
  check_trajectory(traj);
  MonitorSeries m;
  for (const auto& s : traj) {
    m.t.push_back(s.t);
    m.value.push_back(restricted_holder(on_grid(s.theta, false), alpha, ell));
    m.value_refined.push_back(restricted_holder(on_grid(s.theta, true), alpha, ell));
  }
  const double inf0 = sup_norm(traj.front().theta);
  const double base = m.value.front() + std::pow(ell, -alpha) * inf0;
  const double base_r = m.value_refined.front() + std::pow(ell, -alpha) * inf0;
  auto& r = m.report;
  r.id = "holder-evolution";
  r.statement = "sup_t s(t) <= Gamma (s(0) + ell^{-alpha} |theta_0|_inf)";
  r.sweep = std::to_string(traj.size()) + " snapshots on the n-point grid and its doubling";
  fit(m, base, base_r);
  r.extra["alpha"] = alpha;
  r.extra["ell"] = ell;
  r.extra["epsilon"] = alpha * inf0;
  r.extra["epsilon_small"] = alpha * inf0 <= 0.1 ? 1.0 : 0.0;
  return m;
}

MonitorSeries gradient_evolution_monitor(const std::vector<SolverState>& traj, double ell) {
  check_trajectory(traj);
  MonitorSeries m;
  for (const auto& s : traj) {
    m.t.push_back(s.t);
    m.value.push_back(gradient_quantity(on_grid(s.theta, false), ell));
    m.value_refined.push_back(gradient_quantity(on_grid(s.theta, true), ell));
  }
  const double inf0 = sup_norm(traj.front().theta);
  const double poly = std::pow(1 + inf0, 4);
  auto& r = m.report;
  r.id = "gradient-evolution";
  r.statement = "sup_t sup_x d(x)|grad theta| <= Gamma_1 (sup_x d(x)|grad theta_0| + (1 + |theta_0|_inf)^4)";
  r.sweep = std::to_string(traj.size()) + " snapshots on the n-point grid and its doubling";
  fit(m, m.value.front() + (inf0 > 0 ? poly : 0.0), m.value_refined.front() + (inf0 > 0 ? poly : 0.0));
  r.extra["ell"] = ell;
  return m;
}

BoundFitReport compare_monitors(const MonitorSeries& a, const MonitorSeries& b,
                                const std::string& id) {
  BoundFitReport r;
  r.id = id;
  r.statement = a.report.statement + " (same Gamma for both runs)";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = std::max(a.report.constant, b.report.constant);
  r.stability_ratio = a.report.constant > 0 ? b.report.constant / a.report.constant
                                            : std::numeric_limits<double>::quiet_NaN();
  r.sweep = "two runs";
  r.sweep_size = a.t.size() + b.t.size();
  r.extra["constant_first"] = a.report.constant;
  r.extra["constant_second"] = b.report.constant;
  r.pass = a.report.pass && b.report.pass && stable_ratio(r.stability_ratio);
  return r;
}

Observer gradient_observer(std::vector<double>& sink, double ell) {
  return [&sink, ell](const SolverState& s, const DiagnosticsRow&) {
    sink.push_back(gradient_quantity(from_spectral(s.theta), ell));
  };
}

}  // namespace dsqg
