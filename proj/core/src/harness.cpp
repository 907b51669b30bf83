#include "dsqg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "dsqg/checkpoint.hpp"
#include "dsqg/cutoff.hpp"
#include "dsqg/dissipation.hpp"
#include "dsqg/fields.hpp"
#include "dsqg/halfspace.hpp"
#include "dsqg/heat_bounds.hpp"
#include "dsqg/heat_kernel.hpp"
#include "dsqg/interior.hpp"
#include "dsqg/monitors.hpp"
#include "dsqg/spectral.hpp"

namespace dsqg::harness {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.141592653589793;

void append(std::vector<BoundFitReport>& out, std::vector<BoundFitReport> more,
            const std::string& suffix = {}) {
  for (auto& r : more) {
    if (!suffix.empty()) r.id += "-" + suffix;
    out.push_back(std::move(r));
  }
}

DomainSpec verify_domain(const RunConfig& cfg) { return {cfg.L1, cfg.L2, cfg.verify.N, cfg.verify.N}; }

/// 2D eigenseries against the image product, relative to max(|H|, (4 pi t)^{-1}).
BoundFitReport kernel_cross_oracle(const RunConfig& cfg) {
  BoundFitReport r;
  r.id = "kernel-cross-oracle";
  r.statement = "eigenseries kernel = method-of-images kernel";
  const DomainSpec grid{cfg.L1, cfg.L2, cfg.verify.kernel_n, cfg.verify.kernel_n};
  const std::vector<double> ts{1e-3, 1e-2, 0.1, 1.0};
  double worst = 0;
  for (double t : ts) {
    const int m1 = interval::required_modes(cfg.L1, t), m2 = interval::required_modes(cfg.L2, t);
    const DomainSpec modes{cfg.L1, cfg.L2, m1, m2};
    const double floor = 1.0 / (4 * kPi * t);
    for (int a = 0; a < grid.N1 * grid.N2; ++a)
      for (int b = 0; b < grid.N1 * grid.N2; ++b) {
        const Point x = grid.point(a / grid.N2, a % grid.N2);
        const Point y = grid.point(b / grid.N2, b % grid.N2);
        const double e = kernel_point(modes, x, y, t);
        const double g = kernel_images(grid, x, y, t);
        const double d = std::abs(e - g) / std::max(std::abs(g), floor);
        if (d > worst) {
          worst = d;
          r.witness = {{"x1", x.x}, {"x2", x.y}, {"y1", y.x}, {"y2", y.y}, {"t", t}};
        }
      }
  }
  r.constant = worst;
  r.sweep = "kernel grid pairs x t in {1e-3, 1e-2, 0.1, 1}";
  r.sweep_size = ts.size() * std::size_t(grid.N1 * grid.N2) * std::size_t(grid.N1 * grid.N2);
  r.extra["tolerance"] = 1e-10;
  r.pass = worst <= 1e-10;
  return r;
}

std::vector<BoundFitReport> kernel_suite(const RunConfig& cfg) {
  const DomainSpec dom{cfg.L1, cfg.L2, cfg.verify.kernel_n, cfg.verify.kernel_n};
  KernelSweepOptions opt;
  opt.n = cfg.verify.kernel_n;
  opt.refine = cfg.verify.refine;
  std::vector<BoundFitReport> out{kernel_cross_oracle(cfg)};
  append(out, verify_theta_bounds(dom, opt));
  append(out, verify_kernel_gaussian_bounds(dom, opt));
  append(out, verify_gradient_bounds(dom, opt));
  append(out, verify_cancellation_bounds(dom, opt));
  out.push_back(verify_lambda_s_one_bound(dom, cfg.verify.s, opt));
  append(out, {verify_intpk_bound(1, 0, 4.0), verify_intpk_bound(2, 1, 4.0)});
  append(out, verify_cutoff(verify_domain(cfg), {0.25, 0.5}));
  return out;
}

/// Spectral D against its heat representation at five points.
BoundFitReport dissipation_consistency(const GridField& f, const std::string& label, double s) {
  BoundFitReport r;
  r.id = "dissipation-heat-representation-" + label;
  r.statement = "spectral D(f) = heat-kernel representation of D(f)";
  const auto a = to_spectral(f);
  const auto D = compute_D(a, s).D;
  const DomainSpec& dom = f.domain;
  const int c1 = dom.N1 / 2, c2 = dom.N2 / 2;
  const std::vector<std::pair<int, int>> spots{
      {c1, c2}, {c1 / 2, c2}, {c1, c2 / 2}, {c1 + c1 / 2, c2 + c2 / 3}, {dom.N1 / 5, dom.N2 / 5}};
  double scale = 0;
  for (double v : D.values.flat()) scale = std::max(scale, std::abs(v));
  double worst = 0;
  for (auto [i, k] : spots) {
    const double q = dissipation_quadrature(a, dom.point(i, k), s);
    const double d = std::abs(D.values(i, k) - q) / std::max({std::abs(q), 1e-3 * scale, 1e-300});
    if (d > worst) {
      worst = d;
      r.witness = {{"x1", dom.point(i, k).x}, {"x2", dom.point(i, k).y}};
    }
  }
  r.constant = worst;
  r.sweep = "5 grid points";
  r.sweep_size = spots.size();
  r.extra["tolerance"] = 1e-5;
  r.pass = worst <= 1e-5;
  return r;
}

std::vector<BoundFitReport> cordoba_suite(const RunConfig& cfg) {
  const DomainSpec dom = verify_domain(cfg);
  const double s = cfg.verify.s;
  std::vector<std::pair<std::string, GridField>> fields{{"bump", bump(dom)}};
  for (int i = 0; i < cfg.verify.random_fields; ++i)
    fields.emplace_back("random" + std::to_string(i), random_smooth(dom, cfg.seed + i));
  CordobaOptions opt;
  opt.refine = cfg.verify.refine;
  std::vector<BoundFitReport> out;
  BoundFitReport nonneg;
  nonneg.id = "dissipation-nonnegative";
  nonneg.statement = "D(f) >= 0";
  nonneg.sense = BoundFitReport::Sense::Lower;
  nonneg.constant = std::numeric_limits<double>::infinity();
  for (const auto& [label, f] : fields) {
    const auto D = compute_D(f, s).D;
    double scale = 0, lo = std::numeric_limits<double>::infinity();
    for (double v : D.values.flat()) {
      scale = std::max(scale, std::abs(v));
      lo = std::min(lo, v);
    }
    const double rel = scale > 0 ? lo / scale : 0.0;
    if (rel < nonneg.constant) {
      nonneg.constant = rel;
      nonneg.note = label;
    }
    nonneg.sweep_size += D.values.size();
    for (const char* phi : {"square", "quartic"}) {
      auto r = cordoba_gap(f, ConvexFunction::parse(phi), s, opt).report;
      r.id += "-" + label;
      out.push_back(std::move(r));
    }
  }
  nonneg.sweep = "grid points of every field";
  nonneg.extra["tolerance"] = -1e-10;
  nonneg.pass = nonneg.constant >= -1e-10;
  out.push_back(nonneg);
  out.push_back(dissipation_consistency(mode_field(dom, 1, 1), "w11", s));
  out.push_back(dissipation_consistency(bump(dom), "bump", s));
  return out;
}

std::vector<BoundFitReport> lower_bound_suite(const RunConfig& cfg) {
  const DomainSpec dom = verify_domain(cfg);
  const auto q = bump(dom);
  LowerBoundOptions opt;
  opt.refine = cfg.verify.refine;
  std::vector<BoundFitReport> out;
  for (int h : {2, 4, 8}) {
    auto r = finite_diff_lower_bound_report(q, h, 0, cfg.verify.ell, cfg.verify.s, opt);
    r.id += "-h" + std::to_string(h);
    out.push_back(std::move(r));
  }
  append(out, gradient_lower_bound_report(q, 0.5, cfg.verify.ell, cfg.verify.s, opt));
  return out;
}

/// Spread of the constants of rows fitted at dyadic shifts.
BoundFitReport dyadic_row(const std::string& id, const std::vector<BoundFitReport>& rows) {
  BoundFitReport r;
  r.id = id;
  r.statement = "constants stable under dyadic changes of h";
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  bool finite = true;
  for (const auto& row : rows) {
    finite = finite && std::isfinite(row.constant);
    lo = std::min(lo, row.constant);
    hi = std::max(hi, row.constant);
    r.extra[row.id] = row.constant;
  }
  r.constant = hi;
  r.stability_ratio = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  r.sweep = "h in {2, 4, 8} grid spacings";
  r.sweep_size = rows.size();
  r.pass = finite && stable_ratio(r.stability_ratio);
  return r;
}

Array2D torus_sample(int n) {
  Array2D a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double x = 2 * kPi * i / n, y = 2 * kPi * k / n;
      a(i, k) = std::exp(std::sin(x) + 0.5 * std::cos(2 * y)) - std::cos(x - y);
    }
  return a;
}

BoundFitReport torus_row(const std::string& id, const std::string& statement, double value) {
  BoundFitReport r;
  r.id = id;
  r.statement = statement;
  r.constant = value;
  r.sweep = "64 x 64 periodic grid";
  r.sweep_size = 64 * 64;
  r.extra["tolerance"] = 1e-12;
  r.pass = value <= 1e-12;
  return r;
}

std::vector<BoundFitReport> commutator_suite(const RunConfig& cfg) {
  const DomainSpec dom = verify_domain(cfg);
  const auto theta = bump(dom);
  const auto chi = make_good_cutoff(dom, cfg.verify.ell);
  std::vector<BoundFitReport> out;
  for (int h : {2, 4, 8}) {
    auto r = commutator_h(theta, h, 0, chi).report;
    r.id += "-h" + std::to_string(h);
    out.push_back(std::move(r));
  }
  out.push_back(dyadic_row("commutator-shift-dyadic", out));
  out.push_back(commutator_grad(theta, chi).report);
  const auto per = torus_sample(64);
  out.push_back(torus_row("commutator-torus-shift", "chi = 1: delta_h Lambda = Lambda delta_h",
                          torus_commutator_h(per, 3, 1)));
  out.push_back(torus_row("commutator-torus-gradient", "chi = 1: grad Lambda = Lambda grad",
                          torus_commutator_grad(per)));
  return out;
}

std::vector<BoundFitReport> riesz_suite(const RunConfig& cfg) {
  const DomainSpec dom = verify_domain(cfg);
  const auto theta = bump(dom);
  const auto chi = make_good_cutoff(dom, cfg.verify.ell);
  std::vector<BoundFitReport> out;
  for (int h : {2, 4, 8}) {
    auto r = riesz_diff_bound_check(theta, h, 0, chi);
    r.id += "-h" + std::to_string(h);
    out.push_back(std::move(r));
  }
  out.push_back(dyadic_row("riesz-finite-difference-dyadic", out));
  out.push_back(riesz_grad_bound_check(theta, chi));
  return out;
}

std::vector<BoundFitReport> halfspace_suite(const RunConfig&) {
  namespace hs = halfspace;
  std::vector<BoundFitReport> out;

  BoundFitReport l1;
  l1.id = "halfspace-lambda-one";
  l1.statement = "int_0^inf t^{-3/2} (1 - Theta) dt = 4 / (x2 sqrt(pi))";
  const std::vector<double> xs{0.5, 1.0, 2.0, 4.0};
  double worst = 0;
  for (double x : xs) {
    const double raw = hs::lambda_one_raw(x);
    const double d = std::abs(raw * x * std::sqrt(kPi) / 4 - 1);
    l1.extra["raw(x2=" + std::to_string(x).substr(0, 3) + ")"] = raw;
    if (d > worst) {
      worst = d;
      l1.witness = {{"x2", x}};
    }
  }
  l1.constant = worst;
  l1.sweep = "x2 in {0.5, 1, 2, 4}";
  l1.sweep_size = xs.size();
  l1.extra["tolerance"] = 1e-6;
  l1.pass = worst <= 1e-6;
  out.push_back(l1);

  BoundFitReport norm;
  norm.id = "halfspace-lambda-one-normalized";
  norm.statement = "c_1 int_0^inf t^{-3/2} (1 - Theta) dt = 2 / (pi x2)";
  const double c1 = hs::lambda_one_constant();
  norm.extra["c1"] = c1;
  norm.extra["c1_closed"] = 0.5 / std::sqrt(kPi);
  norm.constant = std::abs(hs::lambda_one(1.0) * kPi / 2 - 1);
  norm.sweep = "x2 = 1";
  norm.sweep_size = 1;
  norm.extra["tolerance"] = 1e-6;
  norm.pass = norm.constant <= 1e-6;
  out.push_back(norm);

  BoundFitReport th;
  th.id = "halfspace-theta";
  th.statement = "Gaussian-integral and kernel-integral Theta = erf(x2 / (2 sqrt t))";
  const std::vector<std::pair<double, double>> pts{{0.5, 0.1}, {1.0, 0.25}, {2.0, 1.0}, {1.0, 4.0}};
  double wg = 0, wk = 0;
  for (auto [x, t] : pts) {
    const double e = hs::theta(x, t);
    wg = std::max(wg, std::abs(hs::theta_gaussian_integral(x, t) - e));
    wk = std::max(wk, std::abs(hs::theta_kernel_integral(x, t) - e));
  }
  th.constant = std::max(wg, wk);
  th.extra["gaussian_integral_error"] = wg;
  th.extra["kernel_integral_error"] = wk;
  th.sweep = "(x2, t) in {(0.5,0.1), (1,0.25), (2,1), (1,4)}";
  th.sweep_size = pts.size();
  th.pass = wg <= 1e-10 && wk <= 1e-8;
  out.push_back(th);

  out.push_back(hs::cancellation_check());
  out.push_back(hs::gradient_bound_check());

  const auto f = hs::bump(1.0, {0.0, 1.0}, 0.08);
  BoundFitReport vel;
  vel.id = "halfspace-velocity-split";
  vel.statement = "|u2_in| <= C C_{1,a} delta^a, |u2_out| <= C log(L/delta) |theta|_inf + C L^{-2} |theta|_1";
  const std::vector<Point> xs2{{0.3, 1.0}, {0.05, 0.9}, {0.2, 1.3}, {1.0, 2.0}};
  const std::vector<double> deltas{0.05, 0.1, 0.2};
  double c_in = 0, c_out = 0, agree = 0;
  for (const auto& x : xs2) {
    const double direct = hs::velocity_u2_direct(f, x);
    for (double delta : deltas) {
      const auto v = hs::velocity_u2(f, x, delta, 1.0);
      c_in = std::max(c_in, v.inner_ratio);
      c_out = std::max(c_out, v.outer_ratio);
      agree = std::max(agree, std::abs(v.u2 - direct) / std::max(std::abs(direct), 1e-12));
    }
  }
  vel.constant = std::max(c_in, c_out);
  vel.extra["C_inner"] = c_in;
  vel.extra["C_outer"] = c_out;
  vel.extra["direct_relative_difference"] = agree;
  vel.extra["riesz_constant"] = hs::kRieszConstant;
  vel.sweep = "4 points x delta in {0.05, 0.1, 0.2}, L = 1";
  vel.sweep_size = xs2.size() * deltas.size();
  vel.pass = std::isfinite(vel.constant) && agree <= 1e-6;
  out.push_back(vel);

  BoundFitReport slip;
  slip.id = "halfspace-boundary-slip";
  slip.statement = "u1(x1, 0) != 0, decaying like R^{-2}";
  const double near = hs::boundary_slip(f, 0.0);
  const double s5 = hs::boundary_slip(hs::bump(1.0, {0.0, 5.0}, 0.2), 0.0);
  const double s10 = hs::boundary_slip(hs::bump(1.0, {0.0, 10.0}, 0.2), 0.0);
  slip.constant = s5 / s10;
  slip.extra["u1_near"] = near;
  slip.extra["u1_R5"] = s5;
  slip.extra["u1_R10"] = s10;
  slip.sweep = "bump at heights 1, 5, 10 above x1 = 0";
  slip.sweep_size = 3;
  slip.pass = std::abs(near) > 1e-10 && std::abs(slip.constant - 4) <= 0.1;
  out.push_back(slip);
  return out;
}

bool same_report(const BoundFitReport& a, const BoundFitReport& b) {
  auto same = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y ||
           std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
  };
  return a.pass == b.pass && same(a.constant, b.constant) &&
         same(a.stability_ratio, b.stability_ratio);
}

bool write_text(const fs::path& path, const std::string& text, std::ostream& log) {
  std::ofstream os(path);
  os << text;
  if (!os) {
    log << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

BoundFitReport max_principle_report(const RunResult& run, double slack) {
  BoundFitReport r;
  r.id = "max-principle";
  r.statement = "|theta(t)|_inf <= |theta_0|_inf (1 + slack)";
  const double base = run.diagnostics.front().Linf;
  double top = 0;
  for (const auto& d : run.diagnostics) {
    if (d.Linf > top) {
      top = d.Linf;
      r.witness["t"] = d.t;
    }
  }
  r.constant = base > 0 ? top / base : 0.0;
  r.sweep = "recorded states";
  r.sweep_size = run.diagnostics.size();
  r.extra["slack"] = slack;
  r.pass = base > 0 ? r.constant <= 1 + slack : top == 0.0;
  return r;
}

BoundFitReport l2_decay_report(const RunResult& run) {
  BoundFitReport r;
  r.id = "l2-decay";
  r.statement = "|theta(t)|_2 strictly decreasing between records";
  double worst = 0;
  bool ok = true;
  const auto& d = run.diagnostics;
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (d[k].t <= d[k - 1].t) continue;
    if (d[k - 1].L2 == 0) {
      ok = ok && d[k].L2 == 0;
      continue;
    }
    const double q = d[k].L2 / d[k - 1].L2;
    if (q > worst) {
      worst = q;
      r.witness["t"] = d[k].t;
    }
    ok = ok && q < 1;
  }
  r.constant = worst;
  r.sweep = "consecutive records";
  r.sweep_size = d.size();
  r.pass = ok;
  return r;
}

BoundFitReport odd_symmetry_report(const RunResult& run) {
  BoundFitReport r;
  r.id = "odd-symmetry";
  r.statement = "advection spectrum stays in the odd-odd subspace";
  r.constant = run.odd_defect;
  r.sweep = "every nonlinear evaluation";
  r.sweep_size = run.steps;
  r.extra["tolerance"] = 1e-12;
  r.pass = run.odd_defect <= 1e-12;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kernel", "cordoba", "lower-bounds",
                                              "commutators", "riesz", "halfspace"};
  return names;
}

std::vector<BoundFitReport> run_suite(const std::string& suite, const RunConfig& cfg) {
  if (suite == "kernel") return kernel_suite(cfg);
  if (suite == "cordoba") return cordoba_suite(cfg);
  if (suite == "lower-bounds") return lower_bound_suite(cfg);
  if (suite == "commutators") return commutator_suite(cfg);
  if (suite == "riesz") return riesz_suite(cfg);
  if (suite == "halfspace") return halfspace_suite(cfg);
  throw ConfigError("unknown suite '" + suite + "'");
}

std::vector<BoundFitReport> merge_reports(const std::vector<std::vector<BoundFitReport>>& lists) {
  std::map<std::string, BoundFitReport> rows;
  for (const auto& list : lists)
    for (const auto& r : list) {
      const auto [it, fresh] = rows.emplace(r.id, r);
      if (!fresh && !same_report(it->second, r))
        throw MergeConflict("conflicting reports for id '" + r.id + "'");
    }
  std::vector<BoundFitReport> out;
  out.reserve(rows.size());
  for (auto& [id, r] : rows) out.push_back(std::move(r));
  return out;
}

SolveOutcome solve(const RunConfig& cfg) {
  const DomainSpec dom{cfg.L1, cfg.L2, cfg.solver.n, cfg.solver.n};
  const auto theta0 = named_field(cfg.initial.field, dom, cfg.initial.amplitude, cfg.seed);
  const double sup0 = theta0.values.max_abs();
  SolveOutcome out;
  out.alpha = cfg.monitors.holder_alpha > 0 ? cfg.monitors.holder_alpha
                                            : (sup0 > 0 ? std::min(0.1 / sup0, 0.9) : 0.1);
  SolverConfig sc = cfg.solver;
  if (sc.holder_alpha == 0) sc.holder_alpha = out.alpha;
  out.run = run(theta0, sc);
  if (!cfg.monitors.enabled || out.run.status != RunStatus::Completed) return out;
  auto& m = out.monitors;
  m.push_back(max_principle_report(out.run, cfg.monitors.max_principle_slack));
  m.push_back(l2_decay_report(out.run));
  m.push_back(odd_symmetry_report(out.run));
  m.push_back(h2_energy_check(out.run));
  m.push_back(holder_evolution_monitor(out.run.snapshots, out.alpha, cfg.monitors.ell).report);
  m.push_back(gradient_evolution_monitor(out.run.snapshots).report);
  return out;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,L2,Linf,H2,H2.5,holder_alpha,grad_weighted\n";
  for (const auto& d : rows)
    os << d.t << ',' << d.L2 << ',' << d.Linf << ',' << d.H2 << ',' << d.H25 << ',' << d.holder
       << ',' << d.grad_weighted << '\n';
  return os.str();
}

std::string summary_table(const std::vector<BoundFitReport>& reports) {
  std::size_t w = 2;
  for (const auto& r : reports) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(int(w)) << "id" << "  verdict  " << std::setw(14) << "constant"
     << std::setw(14) << "stability" << "statement\n";
  for (const auto& r : reports)
    os << std::left << std::setw(int(w)) << r.id << "  " << std::setw(7)
       << (r.pass ? "pass" : "fail") << "  " << std::setw(14) << std::setprecision(6)
       << r.constant << std::setw(14) << r.stability_ratio << r.statement << '\n';
  return os.str();
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  SolveOutcome o;
  try {
    o = solve(cfg);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const BlowUpError& e) {
    log << "blow-up: " << e.what() << "\n";
    return kBlowUp;
  }
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir / "checkpoints", ec);
  if (ec) {
    log << "error: cannot create " << dir.string() << "\n";
    return kUsage;
  }
  bool ok = write_text(dir / "config.ini", cfg.to_text(), log) &&
            write_text(dir / "diagnostics.csv", diagnostics_csv(o.run.diagnostics), log);
  const auto fmt = cfg.output.checkpoint_format;
  const char* ext = fmt == CheckpointFormat::Binary ? ".bin" : ".csv";
  const auto& snaps = o.run.snapshots;
  for (std::size_t k = cfg.output.checkpoint_all ? 0 : (snaps.empty() ? 0 : snaps.size() - 1);
       k < snaps.size(); ++k) {
    std::ostringstream name;
    name << "state_" << std::setw(6) << std::setfill('0') << k << ext;
    write_checkpoint((dir / "checkpoints" / name.str()).string(), snaps[k], fmt);
  }
  ok = ok && write_text(dir / "monitors.json", to_json(o.monitors), log) &&
       write_text(dir / "monitors.csv", to_csv(o.monitors), log);
  log << "status: " << to_string(o.run.status);
  if (!o.run.message.empty()) log << " (" << o.run.message << ")";
  log << ", steps " << o.run.steps << ", alpha " << format_number(o.alpha) << "\n";
  if (!o.run.compact_support)
    log << "note: initial data not negligible near the wall (relative "
        << format_number(o.run.boundary_mass) << ")\n";
  if (o.run.status != RunStatus::Completed) return kBlowUp;
  log << summary_table(o.monitors);
  if (!ok) return kUsage;
  const bool all = std::all_of(o.monitors.begin(), o.monitors.end(),
                               [](const BoundFitReport& r) { return r.pass; });
  return all ? kOk : kFailed;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites,
               const std::string& out_dir, std::ostream& log) {
  const auto& names = suite_names();
  for (const auto& s : suites)
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      log << "unknown suite '" << s << "'\n";
      return kUsage;
    }
  const auto& chosen = suites.empty() ? names : suites;
  std::vector<std::vector<BoundFitReport>> lists;
  try {
    for (const auto& s : chosen) {
      log << "suite " << s << "\n";
      lists.push_back(run_suite(s, cfg));
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResolutionError& e) {
    log << "config error: " << e.what() << "\n";
    return kUsage;
  }
  std::vector<BoundFitReport> all;
  try {
    all = merge_reports(lists);
  } catch (const MergeConflict& e) {
    log << e.what() << "\n";
    return kUsage;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !write_text(fs::path(out_dir) / "report.json", to_json(all), log) ||
      !write_text(fs::path(out_dir) / "report.csv", to_csv(all), log))
    return kUsage;
  log << summary_table(all);
  const bool pass =
      std::all_of(all.begin(), all.end(), [](const BoundFitReport& r) { return r.pass; });
  return pass ? kOk : kFailed;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& out_dir,
               std::ostream& log) {
  std::vector<std::vector<BoundFitReport>> lists;
  for (const auto& p : paths) {
    std::ifstream is(p);
    if (!is) {
      log << "cannot open " << p << "\n";
      return kUsage;
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    try {
      lists.push_back(reports_from_json(ss.str()));
    } catch (const std::exception& e) {
      log << "malformed report " << p << ": " << e.what() << "\n";
      return kUsage;
    }
  }
  std::vector<BoundFitReport> all;
  try {
    all = merge_reports(lists);
  } catch (const MergeConflict& e) {
    log << e.what() << "\n";
    return kUsage;
  }
  const std::string table = summary_table(all);
  log << table;
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path dir(out_dir);
    if (ec || !write_text(dir / "summary.json", to_json(all), log) ||
        !write_text(dir / "summary.csv", to_csv(all), log) ||
        !write_text(dir / "summary.txt", table, log))
      return kUsage;
  }
  return kOk;
}

}  // namespace dsqg::harness
