#include "dsqg/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "dsqg/error.hpp"
#include "dsqg/interior.hpp"
#include "dsqg/spectral.hpp"
#include "fft.hpp"

namespace dsqg {

std::string to_string(Stepper s) {
  return s == Stepper::IntegratingFactorRK2 ? "rk2" : "rk3";
}

std::string to_string(Dealias d) { return d == Dealias::TwoThirds ? "two-thirds" : "refined-grid"; }

Stepper parse_stepper(const std::string& s) {
  if (s == "rk2") return Stepper::IntegratingFactorRK2;
  if (s == "rk3") return Stepper::IntegratingFactorRK3;
  throw ConfigError("stepper must be rk2 or rk3, got '" + s + "'");
}

Dealias parse_dealias(const std::string& s) {
  if (s == "two-thirds") return Dealias::TwoThirds;
  if (s == "refined-grid") return Dealias::RefinedGrid;
  throw ConfigError("dealias must be two-thirds or refined-grid, got '" + s + "'");
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed:
      return "completed";
    case RunStatus::BlowUp:
      return "blow-up";
    case RunStatus::ResolutionFailure:
      return "resolution-failure";
    case RunStatus::NonFinite:
      return "non-finite";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (!(dt > 0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(T_end >= 0) || !std::isfinite(T_end)) throw ConfigError("T_end must be nonnegative");
  if (record_every < 1) throw ConfigError("record_every must be at least 1");
  if (!(cfl > 0)) throw ConfigError("cfl must be positive");
  if (!(blowup_factor > 1)) throw ConfigError("blowup_factor must exceed 1");
  if (!(resolution_tolerance > 0)) throw ConfigError("resolution_tolerance must be positive");
  if (!(holder_alpha >= 0 && holder_alpha < 1)) throw ConfigError("holder_alpha must lie in [0, 1)");
}

namespace {

bool smooth7(int m) {
  for (int p : {2, 3, 5, 7})
    while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace

int dealias_grid(int n, Dealias dealias) {
  // Quadratic products of |k| <= n alias onto retained modes unless M >= 3n + 1.
  int m = dealias == Dealias::TwoThirds ? 3 * n + 2 : 4 * (n + 1);
  if (m % 2) ++m;
  while (!smooth7(m)) m += 2;
  return m;
}

namespace {

using cplx = std::complex<double>;

// Advection term on the doubled periodic box for a fixed band.
class Advection {
 public:
  Advection(const DomainSpec& dom, Dealias dealias)
      : dom_(dom),
        M1_(dealias_grid(dom.N1, dealias)),
        M2_(dealias_grid(dom.N2, dealias)),
        h2_(M2_ / 2 + 1) {}

  int M1() const { return M1_; }
  int M2() const { return M2_; }

  // Returns P_n(u . grad theta); umax and defect describe the evaluation.
  Array2D operator()(const Array2D& a, double* umax, double* defect) const {
    const int n1 = dom_.N1, n2 = dom_.N2;
    const std::size_t size = std::size_t(M1_) * h2_;
    std::vector<cplx> tx(size), ty(size), u1(size), u2(size);
    const double amp = dom_.mode_amplitude();
    const double kx = M_PI / dom_.L1, ky = M_PI / dom_.L2;
    const cplx I(0, 1);
    for (int j = 1; j <= n1; ++j)
      for (int k = 1; k <= n2; ++k) {
        const double b = amp * a(j - 1, k - 1);
        if (b == 0.0) continue;
        const double inv_sqrt = 1.0 / std::sqrt(dom_.eigenvalue(j, k));
        for (int sigma : {1, -1}) {
          // Coefficient of exp(i(sigma j x' + k y')) in sin(j x') sin(k y').
          const double c = -sigma * b / 4;
          const std::size_t at = std::size_t(sigma > 0 ? j : M1_ - j) * h2_ + k;
          const double wx = sigma * j * kx, wy = k * ky;
          tx[at] = I * wx * c;
          ty[at] = I * wy * c;
          u1[at] = -I * wy * c * inv_sqrt;
          u2[at] = I * wx * c * inv_sqrt;
        }
      }
    const Array2D gx = fft::inverse_c2r(std::move(tx), M1_, M2_);
    const Array2D gy = fft::inverse_c2r(std::move(ty), M1_, M2_);
    const Array2D v1 = fft::inverse_c2r(std::move(u1), M1_, M2_);
    const Array2D v2 = fft::inverse_c2r(std::move(u2), M1_, M2_);
    Array2D prod(M1_, M2_);
    double speed2 = 0;
    for (std::size_t p = 0; p < prod.size(); ++p) {
      const double w1 = v1.data()[p], w2 = v2.data()[p];
      prod.data()[p] = w1 * gx.data()[p] + w2 * gy.data()[p];
      speed2 = std::max(speed2, w1 * w1 + w2 * w2);
    }
    if (umax) *umax = std::sqrt(speed2);
    const auto F = fft::forward_r2c(prod);
    const double norm = 1.0 / (double(M1_) * M2_);
    Array2D out(n1, n2);
    for (int j = 1; j <= n1; ++j)
      for (int k = 1; k <= n2; ++k)
        out(j - 1, k - 1) = -4.0 * F[std::size_t(j) * h2_ + k].real() * norm / amp;
    if (defect) {
      double top = 0, off = 0;
      for (const auto& z : F) top = std::max(top, std::abs(z));
      for (int j = 0; j <= n1; ++j)
        for (int k = 0; k <= n2; ++k) {
          const cplx f = F[std::size_t(j) * h2_ + k];
          if (j == 0 || k == 0) {
            off = std::max(off, std::abs(f));
            continue;
          }
          const cplx g = F[std::size_t(M1_ - j) * h2_ + k];
          off = std::max({off, std::abs(f.imag()), std::abs(g.imag()), std::abs(f + g)});
        }
      *defect = top > 0 ? off / top : 0.0;
    }
    return out;
  }

 private:
  DomainSpec dom_;
  int M1_, M2_, h2_;
};

// e^{-tau sqrt(lambda)} per mode.
Array2D decay(const DomainSpec& dom, double tau) {
  Array2D e(dom.N1, dom.N2);
  for (int j = 1; j <= dom.N1; ++j)
    for (int k = 1; k <= dom.N2; ++k) e(j - 1, k - 1) = std::exp(-tau * std::sqrt(dom.eigenvalue(j, k)));
  return e;
}

Array2D axpy(const Array2D& x, double s, const Array2D& y) {
  Array2D r = x;
  for (std::size_t p = 0; p < r.size(); ++p) r.data()[p] += s * y.data()[p];
  return r;
}

class Integrator {
 public:
  Integrator(const DomainSpec& dom, const SolverConfig& cfg)
      : dom_(dom), cfg_(cfg), adv_(dom, cfg.dealias) {}

  Array2D N(const Array2D& a, double* umax = nullptr) {
    if (!cfg_.nonlinear) {
      if (umax) *umax = 0;
      return Array2D(a.rows(), a.cols());
    }
    double defect = 0;
    Array2D out = adv_(a, umax, &defect);
    odd_defect = std::max(odd_defect, defect);
    return out;
  }

  // One step of size dt starting from a with N(a) = n0 already known.
  Array2D advance(const Array2D& a, const Array2D& n0, double dt) {
    const Array2D E = decay(dom_, dt);
    if (cfg_.stepper == Stepper::IntegratingFactorRK2) {
      const Array2D a1 = hadamard(E, axpy(a, -dt, n0));
      const Array2D n1 = N(a1);
      Array2D r = hadamard(E, axpy(a, -0.5 * dt, n0));
      return axpy(r, -0.5 * dt, n1);
    }
    const Array2D Eh = decay(dom_, 0.5 * dt);
    const Array2D Emh = decay(dom_, -0.5 * dt);
    const Array2D a1 = hadamard(E, axpy(a, -dt, n0));
    const Array2D n1 = N(a1);
    const Array2D a2 = axpy(0.75 * hadamard(Eh, a), 0.25, hadamard(Emh, axpy(a1, -dt, n1)));
    const Array2D n2 = N(a2);
    return axpy((1.0 / 3.0) * hadamard(E, a), 2.0 / 3.0, hadamard(Eh, axpy(a2, -dt, n2)));
  }

  // Full step with CFL control; returns the substep count used.
  int step(Array2D& a) {
    double umax = 0;
    const Array2D n0 = N(a, &umax);
    const double dx = std::min(dom_.L1 / (dom_.N1 + 1), dom_.L2 / (dom_.N2 + 1));
    int sub = 1;
    if (umax > 0) sub = std::max(1, int(std::ceil(cfg_.dt * umax / (cfg_.cfl * dx) - 1e-12)));
    const double h = cfg_.dt / sub;
    a = advance(a, n0, h);
    for (int s = 1; s < sub; ++s) a = advance(a, N(a), h);
    if (!a.all_finite()) throw BlowUpError("non-finite coefficients after a step");
    return sub;
  }

  double odd_defect = 0;

 private:
  DomainSpec dom_;
  SolverConfig cfg_;
  Advection adv_;
};

double weighted_sum(const SpectralField& a, double power) {
  double s = 0;
  for (int j = 1; j <= a.domain.N1; ++j)
    for (int k = 1; k <= a.domain.N2; ++k)
      s += std::pow(a.domain.eigenvalue(j, k), power) * a(j, k) * a(j, k);
  return s;
}

double tail_fraction(const SpectralField& a) {
  double all = 0, tail = 0;
  const int h1 = a.domain.N1 / 2, h2 = a.domain.N2 / 2;
  for (int j = 1; j <= a.domain.N1; ++j)
    for (int k = 1; k <= a.domain.N2; ++k) {
      const double e = a(j, k) * a(j, k);
      all += e;
      if (j > h1 || k > h2) tail += e;
    }
  return all > 0 ? tail / all : 0.0;
}

DiagnosticsRow diagnose(const SolverState& s, const SolverConfig& cfg) {
  DiagnosticsRow r;
  r.t = s.t;
  r.L2 = std::sqrt(s.theta.coeffs.sum_squares());
  r.Linf = sup_norm(s.theta);
  r.H2 = std::sqrt(weighted_sum(s.theta, 2.0));
  r.H25 = std::sqrt(weighted_sum(s.theta, 2.5));
  const GridField g = from_spectral(s.theta);
  r.holder = cfg.holder_alpha > 0 ? weighted_holder_seminorm(g, cfg.holder_alpha).seminorm
                                  : std::numeric_limits<double>::quiet_NaN();
  r.grad_weighted =
      cfg.gradient_column ? weighted_gradient_sup(g).value : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias, double* odd_defect) {
  const Advection adv(theta.domain, dealias);
  return SpectralField(theta.domain, adv(theta.coeffs, nullptr, odd_defect));
}

double sup_norm(const SpectralField& theta) {
  const DomainSpec fine = theta.domain.refined(2);
  const GridField g = from_spectral(resample_modes(theta, fine));
  double best = 0;
  int bi = -1, bk = -1;
  for (int i = 0; i < fine.N1; ++i)
    for (int k = 0; k < fine.N2; ++k)
      if (std::abs(g(i, k)) > best) {
        best = std::abs(g(i, k));
        bi = i;
        bk = k;
      }
  if (bi < 0) return 0.0;
  // Newton on grad theta = 0 with a difference Hessian, kept inside the
  // cell around the grid maximum.
  Point p = fine.point(bi, bk);
  const double hx = fine.dx(), hy = fine.dy();
  const Point lo{p.x - hx, p.y - hy}, hi{p.x + hx, p.y + hy};
  const double e = 1e-6 * std::min(hx, hy);
  for (int it = 0; it < 8; ++it) {
    const auto [gx, gy] = evaluate_gradient(theta, p);
    const auto [ax, ay] = evaluate_gradient(theta, {p.x + e, p.y});
    const auto [bx, by] = evaluate_gradient(theta, {p.x, p.y + e});
    const double hxx = (ax - gx) / e, hxy = 0.5 * ((ay - gy) + (bx - gx)) / e, hyy = (by - gy) / e;
    const double det = hxx * hyy - hxy * hxy;
    if (!(std::abs(det) > 0)) break;
    const Point q{std::clamp(p.x - (hyy * gx - hxy * gy) / det, lo.x, hi.x),
                  std::clamp(p.y - (hxx * gy - hxy * gx) / det, lo.y, hi.y)};
    if (std::hypot(q.x - p.x, q.y - p.y) < 1e-14) break;
    p = q;
  }
  return std::max(best, std::abs(evaluate(theta, p)));
}

SolverState step(const SolverState& state, const SolverConfig& cfg) {
  cfg.validate();
  Integrator integ(state.theta.domain, cfg);
  Array2D a = state.theta.coeffs;
  integ.step(a);
  return {state.t + cfg.dt, SpectralField(state.theta.domain, std::move(a))};
}

RunResult run(const GridField& theta0, const SolverConfig& cfg, const Observer& observer) {
  cfg.validate();
  const DomainSpec& full = theta0.domain;
  if (cfg.n > full.N1 || cfg.n > full.N2)
    throw ConfigError("n exceeds the resolution of the initial data");
  const DomainSpec dom{full.L1, full.L2, cfg.n, cfg.n};
  RunResult out;

  // Support check: the data should be negligible near the wall.
  const double strip = std::min(full.L1, full.L2) / 16;
  const double top = theta0.max_abs();
  for (int i = 0; i < full.N1; ++i)
    for (int k = 0; k < full.N2; ++k)
      if (distance_to_boundary(full, full.point(i, k)) < strip)
        out.boundary_mass = std::max(out.boundary_mass, std::abs(theta0(i, k)));
  if (top > 0) out.boundary_mass /= top;
  out.compact_support = out.boundary_mass <= 1e-10;

  SolverState s{0.0, resample_modes(to_spectral(theta0), dom)};
  Integrator integ(dom, cfg);
  const auto record = [&](const SolverState& st) {
    const DiagnosticsRow row = diagnose(st, cfg);
    out.snapshots.push_back(st);
    out.diagnostics.push_back(row);
    if (observer) observer(out.snapshots.back(), out.diagnostics.back());
    return row;
  };
  const DiagnosticsRow first = record(s);
  if (tail_fraction(s.theta) > cfg.resolution_tolerance) {
    out.status = RunStatus::ResolutionFailure;
    out.message = "initial data not resolved by n = " + std::to_string(cfg.n) +
                  " modes (upper half-band energy fraction " + std::to_string(tail_fraction(s.theta)) + ")";
    return out;
  }
  const long total = std::lround(cfg.T_end / cfg.dt);
  for (long k = 1; k <= total; ++k) {
    try {
      out.max_substeps = std::max(out.max_substeps, integ.step(s.theta.coeffs));
    } catch (const BlowUpError& e) {
      out.status = RunStatus::NonFinite;
      out.message = std::string(e.what()) + " at t = " + std::to_string(s.t);
      break;
    }
    s.t = k * cfg.dt;
    ++out.steps;
    if (k % cfg.record_every != 0 && k != total) continue;
    const DiagnosticsRow row = record(s);
    if (row.H2 > cfg.blowup_factor * first.H2) {
      out.status = RunStatus::BlowUp;
      out.message = "|Lambda^2 theta| exceeded " + std::to_string(cfg.blowup_factor) +
                    " times its initial value at t = " + std::to_string(s.t);
      break;
    }
    const double tail = tail_fraction(s.theta);
    if (tail > cfg.resolution_tolerance) {
      out.status = RunStatus::ResolutionFailure;
      out.message = "upper half-band energy fraction " + std::to_string(tail) + " at t = " +
                    std::to_string(s.t) + " exceeds the resolution tolerance";
      break;
    }
  }
  out.odd_defect = integ.odd_defect;
  return out;
}

BoundFitReport h2_energy_check(const RunResult& run) {
  const auto& d = run.diagnostics;
  BoundFitReport r;
  r.id = "h2-energy";
  r.statement = "d/dt |L^2 theta|^2 + |L^{5/2} theta|^2 <= C |L^2 theta|^2 |L^{5/2} theta|";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = 0;
  r.sweep = std::to_string(d.size()) + " diagnostics rows, trapezoidal in time";
  r.sweep_size = d.size() > 0 ? d.size() - 1 : 0;
  double integral = 0, c_total = 0;
  const double y0 = d.empty() ? 0.0 : d.front().H2 * d.front().H2;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double dt = d[i + 1].t - d[i].t;
    if (!(dt > 0)) continue;
    const double a2 = d[i].H2 * d[i].H2, b2 = d[i + 1].H2 * d[i + 1].H2;
    const double p2 = 0.5 * (d[i].H25 * d[i].H25 + d[i + 1].H25 * d[i + 1].H25);
    const double lhs = (b2 - a2) / dt + p2;
    const double rhs = 0.5 * (a2 + b2) * std::sqrt(p2);
    if (lhs > 0 && rhs > 0 && lhs / rhs > r.constant) {
      r.constant = lhs / rhs;
      r.witness = {{"t", d[i].t}};
    }
    integral += p2 * dt;
    if (y0 > 0) c_total = std::max(c_total, (b2 + integral) / y0);
  }
  r.extra["C_integral"] = c_total;
  r.extra["int_H25_squared"] = integral;
  r.extra["T_loc"] = r.constant > 0 && y0 > 0 ? 1.0 / (r.constant * r.constant * y0)
                                              : std::numeric_limits<double>::infinity();
  if (y0 == 0) r.note = "zero data";
  r.pass = std::isfinite(r.constant) && std::isfinite(c_total);
  return r;
}

}  // namespace dsqg
