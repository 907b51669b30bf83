#include "dsqg/interior.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "dsqg/dissipation.hpp"
#include "dsqg/error.hpp"
#include "dsqg/parallel.hpp"
#include "dsqg/spectral.hpp"
#include "fft.hpp"

namespace dsqg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The ratio d^alpha |df| / |h|^alpha, written once so that the optimized and
// exhaustive searches round identically.
double holder_ratio(double d, double df, double h, double alpha) {
  return std::pow(d, alpha) * std::abs(df) / std::pow(h, alpha);
}

struct Offset {
  int a, b;
  double len;
};

// Grid displacements with 0 < |h| < reach, sorted by length.
std::vector<Offset> offsets_within(const DomainSpec& dom, double reach) {
  std::vector<Offset> out;
  const int na = int(reach / dom.dx()) + 1, nb = int(reach / dom.dy()) + 1;
  for (int a = -na; a <= na; ++a)
    for (int b = -nb; b <= nb; ++b) {
      if (a == 0 && b == 0) continue;
      const double len = std::hypot(a * dom.dx(), b * dom.dy());
      if (len < reach) out.push_back({a, b, len});
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const Offset& p, const Offset& q) { return p.len < q.len; });
  return out;
}

HolderReport finish(HolderReport r, const GridField& f) {
  r.norm = f.max_abs() + r.seminorm;
  return r;
}

void check_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
}

double norm2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

PartialField delta_h(const GridField& f, int hx, int hy) {
  const DomainSpec& dom = f.domain;
  PartialField p{GridField(dom), std::vector<std::uint8_t>(std::size_t(dom.N1) * dom.N2, 0)};
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const int ii = i + hx, kk = k + hy;
      // Closed-grid indices -1 and N are wall points, where f = 0.
      const bool inside = ii >= 0 && ii < dom.N1 && kk >= 0 && kk < dom.N2;
      const bool closed = ii >= -1 && ii <= dom.N1 && kk >= -1 && kk <= dom.N2;
      p.defined[std::size_t(i) * dom.N2 + k] = closed ? 1 : 0;
      p.values(i, k) = (inside ? f(ii, kk) : 0.0) - f(i, k);
    }
  return p;
}

HolderReport weighted_holder_seminorm(const GridField& f, double alpha) {
  check_alpha(alpha);
  const DomainSpec& dom = f.domain;
  const double spacing = std::min(dom.dx(), dom.dy());
  double dmax = 0;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k)
      dmax = std::max(dmax, distance_to_boundary(dom, dom.point(i, k)));
  const auto offs = offsets_within(dom, dmax);
  if (offs.empty() || offs.front().len >= dmax)
    throw ResolutionError("grid too coarse: no pair with spacing <= |h| < d(x)", 2 * dom.N1 + 1);
  const double fmax = f.max_abs();

  // Rows are searched independently; each keeps its own best so the
  // reduction below is deterministic.
  std::vector<HolderReport> rows(dom.N1);
  parallel_for(std::size_t(dom.N1), [&](std::size_t row) {
    const int i = int(row);
    HolderReport best;
    best.alpha = alpha;
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      // |df| <= 2 |f|_inf bounds every ratio at this x by the shortest step.
      if (2 * fmax * std::pow(d / spacing, alpha) <= best.seminorm) continue;
      const double fx = f(i, k);
      for (const auto& o : offs) {
        if (o.len >= d) break;
        if (2 * fmax * std::pow(d / o.len, alpha) <= best.seminorm) break;
        // len < d can round the wrong way next to the far wall.
        const int ii = i + o.a, kk = k + o.b;
        if (ii < 0 || ii >= dom.N1 || kk < 0 || kk >= dom.N2) continue;
        const double v = holder_ratio(d, f(ii, kk) - fx, o.len, alpha);
        if (v > best.seminorm) {
          best.seminorm = v;
          best.i = i;
          best.k = k;
          best.hx = o.a;
          best.hy = o.b;
        }
      }
    }
    rows[row] = best;
  });
  HolderReport r;
  r.alpha = alpha;
  for (const auto& b : rows)
    if (b.seminorm > r.seminorm) r = b;
  return finish(r, f);
}

HolderReport weighted_holder_seminorm_bruteforce(const GridField& f, double alpha) {
  check_alpha(alpha);
  const DomainSpec& dom = f.domain;
  HolderReport r;
  r.alpha = alpha;
  bool any = false;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      for (int ii = 0; ii < dom.N1; ++ii)
        for (int kk = 0; kk < dom.N2; ++kk) {
          const int a = ii - i, b = kk - k;
          if (a == 0 && b == 0) continue;
          const double len = std::hypot(a * dom.dx(), b * dom.dy());
          if (!(len < d)) continue;
          any = true;
          const double v = holder_ratio(d, f(ii, kk) - f(i, k), len, alpha);
          if (v > r.seminorm) {
            r.seminorm = v;
            r.i = i;
            r.k = k;
            r.hx = a;
            r.hy = b;
          }
        }
    }
  if (!any)
    throw ResolutionError("grid too coarse: no pair with spacing <= |h| < d(x)", 2 * dom.N1 + 1);
  return finish(r, f);
}

double uniform_holder_seminorm(const GridField& f, double alpha) {
  check_alpha(alpha);
  const DomainSpec& dom = f.domain;
  const int n1 = dom.N1 + 2, n2 = dom.N2 + 2;
  Array2D c(n1, n2);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) c(i + 1, k + 1) = f(i, k);
  // |h|^{-alpha} depends only on |a|, |b|.
  Array2D inv(n1, n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      inv(a, b) = (a || b) ? std::pow(std::hypot(a * dom.dx(), b * dom.dy()), -alpha) : 0.0;
  std::vector<double> rows(n1, 0.0);
  parallel_for(std::size_t(n1), [&](std::size_t row) {
    const int i = int(row);
    double best = 0;
    for (int k = 0; k < n2; ++k)
      for (int ii = i; ii < n1; ++ii)
        for (int kk = 0; kk < n2; ++kk) {
          if (ii == i && kk <= k) continue;
          best = std::max(best, std::abs(c(ii, kk) - c(i, k)) * inv(ii - i, std::abs(kk - k)));
        }
    rows[row] = best;
  });
  return *std::max_element(rows.begin(), rows.end());
}

double restricted_holder(const GridField& f, double alpha, double ell) {
  check_alpha(alpha);
  const DomainSpec& dom = f.domain;
  const double spacing = std::min(dom.dx(), dom.dy());
  std::vector<Offset> offs = offsets_within(dom, std::max(ell / 16, spacing) * (1 + 1e-12));
  std::erase_if(offs, [&](const Offset& o) { return o.len < spacing * (1 - 1e-12); });
  if (ell / 16 < spacing && !offs.empty()) {
    const double shortest = offs.front().len;
    std::erase_if(offs, [&](const Offset& o) { return o.len > shortest * (1 + 1e-12); });
  }
  double best = 0;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      if (distance_to_boundary(dom, dom.point(i, k)) < ell) continue;
      for (const auto& o : offs) {
        const int ii = i + o.a, kk = k + o.b;
        if (ii < 0 || ii >= dom.N1 || kk < 0 || kk >= dom.N2) continue;
        best = std::max(best, std::abs(f(ii, kk) - f(i, k)) / std::pow(o.len, alpha));
      }
    }
  return best;
}

GridField subsample(const GridField& f, int factor) {
  const DomainSpec& dom = f.domain;
  if (factor < 1 || (dom.N1 + 1) % factor || (dom.N2 + 1) % factor)
    throw DomainError("subsample factor must divide N + 1 in both directions");
  const DomainSpec coarse{dom.L1, dom.L2, (dom.N1 + 1) / factor - 1, (dom.N2 + 1) / factor - 1};
  coarse.validate();
  GridField g(coarse);
  for (int i = 0; i < coarse.N1; ++i)
    for (int k = 0; k < coarse.N2; ++k) g(i, k) = f((i + 1) * factor - 1, (k + 1) * factor - 1);
  return g;
}

GradientSup weighted_gradient_sup(const GridField& f) {
  const DomainSpec& dom = f.domain;
  const auto [gx, gy] = gradient(to_spectral(f));
  GradientSup r;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double v = distance_to_boundary(dom, dom.point(i, k)) * norm2(gx(i, k), gy(i, k));
      if (v > r.value) r = {v, i, k};
    }
  return r;
}

namespace {

GridField lambda(const GridField& g) { return from_spectral(apply_lambda_s(to_spectral(g), 1.0)); }

GridField times(const GridField& a, const GridField& b) {
  require_same_domain(a.domain, b.domain);
  return GridField(a.domain, hadamard(a.values, b.values));
}

std::string grid_text(const DomainSpec& dom) {
  return std::to_string(dom.N1) + "x" + std::to_string(dom.N2);
}

}  // namespace

CommutatorResult commutator_h(const GridField& theta, int hx, int hy, const Cutoff& chi) {
  const DomainSpec& dom = theta.domain;
  require_same_domain(dom, chi.chi.domain);
  if (hx == 0 && hy == 0) throw DomainError("displacement h must be nonzero");
  const double h = std::hypot(hx * dom.dx(), hy * dom.dy());
  if (h >= chi.ell)
    throw DomainError("|h| must be shorter than the cutoff scale so that x + h stays in the domain");
  const GridField dl = delta_h(lambda(theta), hx, hy).values;
  const GridField ld = lambda(times(chi.chi, delta_h(theta, hx, hy).values));
  CommutatorResult out;
  out.field.push_back(dl - ld);
  const double tinf = theta.max_abs();
  auto& r = out.report;
  r.id = "commutator-shift";
  r.statement = "|delta_h Lambda theta - Lambda(chi delta_h theta)| <= G0 |h| |theta|_inf / d(x)^2";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = 0;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d < chi.ell) continue;
      ++r.sweep_size;
      if (tinf == 0) continue;
      const double v = std::abs(out.field[0](i, k)) * d * d / (h * tinf);
      if (v > r.constant) {
        r.constant = v;
        r.witness = {{"x1", dom.x(i)}, {"x2", dom.y(k)}, {"h1", hx * dom.dx()}, {"h2", hy * dom.dy()}};
      }
    }
  r.sweep = grid_text(dom) + " grid, points with d(x) >= ell";
  r.extra["ell"] = chi.ell;
  r.extra["h"] = h;
  r.extra["hypothesis_met"] = h <= chi.ell / 16 ? 1.0 : 0.0;
  r.extra["within_ell0"] = chi.within_ell0 ? 1.0 : 0.0;
  if (tinf == 0) r.note = "theta = 0";
  r.pass = std::isfinite(r.constant);
  return out;
}

CommutatorResult commutator_grad(const GridField& theta, const Cutoff& chi) {
  const DomainSpec& dom = theta.domain;
  require_same_domain(dom, chi.chi.domain);
  const auto glt = gradient(apply_lambda_s(to_spectral(theta), 1.0));
  const auto gt = gradient(to_spectral(theta));
  CommutatorResult out;
  out.field.push_back(glt.first - lambda(times(chi.chi, gt.first)));
  out.field.push_back(glt.second - lambda(times(chi.chi, gt.second)));
  const double tinf = theta.max_abs();
  auto& r = out.report;
  r.id = "commutator-gradient";
  r.statement = "|grad Lambda theta - Lambda(chi grad theta)| <= G3 |theta|_inf / d(x)^2";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = 0;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d < chi.ell) continue;
      ++r.sweep_size;
      if (tinf == 0) continue;
      const double v = norm2(out.field[0](i, k), out.field[1](i, k)) * d * d / tinf;
      if (v > r.constant) {
        r.constant = v;
        r.witness = {{"x1", dom.x(i)}, {"x2", dom.y(k)}};
      }
    }
  r.sweep = grid_text(dom) + " grid, points with d(x) >= ell";
  r.extra["ell"] = chi.ell;
  r.extra["within_ell0"] = chi.within_ell0 ? 1.0 : 0.0;
  if (tinf == 0) r.note = "theta = 0";
  r.pass = std::isfinite(r.constant);
  return out;
}

namespace {

// Fourier multiplier on the 2 pi-periodic torus. m(k0, k1) receives signed
// integer wavenumbers; the Nyquist rows and columns are zeroed so that odd
// multipliers stay real.
template <class M>
Array2D torus_multiply(const Array2D& in, M&& m) {
  const std::size_t n0 = in.rows(), n1 = in.cols();
  auto spec = fft::forward_r2c(in);
  const std::size_t h1 = n1 / 2 + 1;
  for (std::size_t a = 0; a < n0; ++a)
    for (std::size_t b = 0; b < h1; ++b) {
      const long k0 = a <= n0 / 2 ? long(a) : long(a) - long(n0);
      const long k1 = long(b);
      const bool nyq = (n0 % 2 == 0 && a == n0 / 2) || (n1 % 2 == 0 && b == n1 / 2);
      spec[a * h1 + b] *= nyq ? std::complex<double>(0) : m(double(k0), double(k1));
    }
  Array2D out = fft::inverse_c2r(std::move(spec), n0, n1);
  out *= 1.0 / double(n0 * n1);
  return out;
}

Array2D torus_shift(const Array2D& in, int hx, int hy) {
  const long n0 = long(in.rows()), n1 = long(in.cols());
  Array2D out(in.rows(), in.cols());
  for (long a = 0; a < n0; ++a)
    for (long b = 0; b < n1; ++b)
      out(a, b) = in(((a + hx) % n0 + n0) % n0, ((b + hy) % n1 + n1) % n1);
  return out;
}

std::complex<double> abs_k(double k0, double k1) { return std::hypot(k0, k1); }

}  // namespace

double torus_commutator_h(const Array2D& theta, int hx, int hy) {
  if (theta.empty()) throw DomainError("empty torus sample");
  const Array2D lt = torus_multiply(theta, abs_k);
  const Array2D dt = torus_shift(theta, hx, hy) - theta;
  const Array2D dl = torus_shift(lt, hx, hy) - lt;
  return (dl - torus_multiply(dt, abs_k)).max_abs();
}

double torus_commutator_grad(const Array2D& theta) {
  if (theta.empty()) throw DomainError("empty torus sample");
  const std::complex<double> I(0, 1);
  const auto dx = [&](double k0, double) { return I * k0; };
  const auto dy = [&](double, double k1) { return I * k1; };
  const Array2D lt = torus_multiply(theta, abs_k);
  const double ex = (torus_multiply(lt, dx) - torus_multiply(torus_multiply(theta, dx), abs_k)).max_abs();
  const double ey = (torus_multiply(lt, dy) - torus_multiply(torus_multiply(theta, dy), abs_k)).max_abs();
  return std::max(ex, ey);
}

namespace {

struct RieszFit {
  double C = 0;
  double min_D = kInf;
  std::size_t points = 0;
  int wi = -1, wk = -1;
};

double rho_floor(const DomainSpec& dom, const RhoPolicy& rho) {
  return rho.floor_spacings * std::max(dom.dx(), dom.dy());
}

}  // namespace

BoundFitReport riesz_diff_bound_check(const GridField& theta, int hx, int hy, const Cutoff& chi,
                                      const RhoPolicy& rho) {
  const DomainSpec& dom = theta.domain;
  require_same_domain(dom, chi.chi.domain);
  if (hx == 0 && hy == 0) throw DomainError("displacement h must be nonzero");
  const double h = std::hypot(hx * dom.dx(), hy * dom.dy());
  const double tinf = theta.max_abs();
  const auto u = riesz_velocity(to_spectral(theta));
  const GridField du1 = delta_h(u.u1(), hx, hy).values;
  const GridField du2 = delta_h(u.u2(), hx, hy).values;
  const GridField dt = delta_h(theta, hx, hy).values;
  const GridField D = compute_D(times(chi.chi, dt), 1.0).D;

  RieszFit fit;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d < chi.ell) continue;
      ++fit.points;
      fit.min_D = std::min(fit.min_D, D(i, k));
      const double adt = std::abs(dt(i, k));
      double r = rho.c * d;
      if (adt > 0) r = std::min(r, tinf * h / adt);
      r = std::max(r, rho_floor(dom, rho));
      const double rhs = std::sqrt(r * std::max(D(i, k), 0.0)) + tinf * (h / d + h / r) + adt;
      const double lhs = norm2(du1(i, k), du2(i, k));
      if (!(rhs > 0)) continue;
      if (lhs / rhs > fit.C) {
        fit.C = lhs / rhs;
        fit.wi = i;
        fit.wk = k;
      }
    }
  BoundFitReport r;
  r.id = "riesz-finite-difference";
  r.statement =
      "|delta_h u| <= C (sqrt(rho D(f)) + |theta|_inf (|h|/d + |h|/rho) + |delta_h theta|), "
      "f = chi delta_h theta";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = fit.C;
  r.sweep = grid_text(dom) + " grid, points with d(x) >= ell";
  r.sweep_size = fit.points;
  r.extra["ell"] = chi.ell;
  r.extra["h"] = h;
  r.extra["rho_c"] = rho.c;
  r.extra["rho_floor"] = rho_floor(dom, rho);
  r.extra["min_D"] = fit.min_D;
  if (fit.wi >= 0)
    r.witness = {{"x1", dom.x(fit.wi)}, {"x2", dom.y(fit.wk)}, {"h1", hx * dom.dx()}, {"h2", hy * dom.dy()}};
  if (tinf == 0) r.note = "theta = 0: both sides vanish";
  r.pass = std::isfinite(r.constant);
  return r;
}

BoundFitReport riesz_grad_bound_check(const GridField& theta, const Cutoff& chi,
                                      const RhoPolicy& rho) {
  const DomainSpec& dom = theta.domain;
  require_same_domain(dom, chi.chi.domain);
  const double tinf = theta.max_abs();
  const SpectralField a = to_spectral(theta);
  // grad u from the Hessian of psi = Lambda^{-1} theta, u = (-psi_y, psi_x).
  const Hessian H = hessian(apply_lambda_inverse(a));
  const auto [gx, gy] = gradient(a);
  const GridField D =
      compute_D(times(chi.chi, gx), 1.0).D + compute_D(times(chi.chi, gy), 1.0).D;

  RieszFit fit;
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const double d = distance_to_boundary(dom, dom.point(i, k));
      if (d < chi.ell) continue;
      ++fit.points;
      fit.min_D = std::min(fit.min_D, D(i, k));
      const double g = norm2(gx(i, k), gy(i, k));
      double r = d;
      if (g > 0) r = std::min(r, 1.0 / (rho.C5 * g));
      r = std::max(r, rho_floor(dom, rho));
      const double rhs = std::sqrt(r * std::max(D(i, k), 0.0)) + tinf * (1 / d + 1 / r) + g;
      const double xy = H.xy(i, k);
      const double lhs = std::sqrt(H.xx(i, k) * H.xx(i, k) + 2 * xy * xy + H.yy(i, k) * H.yy(i, k));
      if (!(rhs > 0)) continue;
      if (lhs / rhs > fit.C) {
        fit.C = lhs / rhs;
        fit.wi = i;
        fit.wk = k;
      }
    }
  BoundFitReport r;
  r.id = "riesz-gradient";
  r.statement =
      "|grad u| <= C (sqrt(rho D(f)) + |theta|_inf (1/d + 1/rho) + |grad theta|), f = chi grad theta";
  r.sense = BoundFitReport::Sense::Upper;
  r.constant = fit.C;
  r.sweep = grid_text(dom) + " grid, points with d(x) >= ell";
  r.sweep_size = fit.points;
  r.extra["ell"] = chi.ell;
  r.extra["C5"] = rho.C5;
  r.extra["rho_floor"] = rho_floor(dom, rho);
  r.extra["min_D"] = fit.min_D;
  if (fit.wi >= 0) r.witness = {{"x1", dom.x(fit.wi)}, {"x2", dom.y(fit.wk)}};
  if (tinf == 0) r.note = "theta = 0: both sides vanish";
  r.pass = std::isfinite(r.constant);
  return r;
}

}  // namespace dsqg
