#include "dsqg/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dsqg/error.hpp"
#include "dsqg/parallel.hpp"
#include "dsqg/quadrature.hpp"

namespace dsqg {

namespace {

// Quintic on [0, 1] and the chain factor of the map u -> 4u - 1.
constexpr double kStretch = 4.0;

double q0(double v) { return v * v * v * (10 + v * (-15 + 6 * v)); }
double q1(double v) { return 30 * v * v * (1 - v) * (1 - v); }
double q2(double v) { return 60 * v * (1 - v) * (1 - 2 * v); }

double unit(double u) { return kStretch * u - 1.0; }

struct Factor {
  double v, d1, d2;
};

// S(a/ell) and its derivatives with respect to a.
Factor factor(double a, double ell) {
  const double u = a / ell;
  return {smoothstep(u), smoothstep_d1(u) / ell, smoothstep_d2(u) / (ell * ell)};
}

struct Local {
  double chi, gx, gy, hxx, hxy, hyy;
};

Local evaluate(const DomainSpec& dom, double ell, const Point& p) {
  const Factor l = factor(p.x, ell), r = factor(dom.L1 - p.x, ell);
  const Factor b = factor(p.y, ell), t = factor(dom.L2 - p.y, ell);
  // X(x) = S(x/ell) S((L1-x)/ell), Y likewise.
  const double X = l.v * r.v;
  const double Xd = l.d1 * r.v - l.v * r.d1;
  const double Xdd = l.d2 * r.v - 2 * l.d1 * r.d1 + l.v * r.d2;
  const double Y = b.v * t.v;
  const double Yd = b.d1 * t.v - b.v * t.d1;
  const double Ydd = b.d2 * t.v - 2 * b.d1 * t.d1 + b.v * t.d2;
  return {X * Y, Xd * Y, X * Yd, Xdd * Y, Xd * Yd, X * Ydd};
}

// Break points covering [0, L] with extra resolution in the two boundary
// strips of width ell/2 where 1 - chi is supported.
std::vector<double> strip_breaks(double L, double ell, bool whole) {
  std::vector<double> b;
  const int inner = 8;
  for (int i = 0; i <= inner; ++i) b.push_back(0.5 * ell * i / inner);
  if (whole) {
    const int mid = std::max(1, int(std::ceil((L - ell) / (0.25 * ell))));
    for (int i = 1; i < mid; ++i) b.push_back(0.5 * ell + (L - ell) * i / mid);
  }
  for (int i = inner; i >= 0; --i) b.push_back(L - 0.5 * ell * i / inner);
  return b;
}

}  // namespace

double smoothstep(double u) noexcept {
  if (u <= 0.25) return 0.0;
  if (u >= 0.5) return 1.0;
  return q0(unit(u));
}

double smoothstep_d1(double u) noexcept {
  if (u <= 0.25 || u >= 0.5) return 0.0;
  return kStretch * q1(unit(u));
}

double smoothstep_d2(double u) noexcept {
  if (u <= 0.25 || u >= 0.5) return 0.0;
  return kStretch * kStretch * q2(unit(u));
}

double Cutoff::value(const Point& p) const { return evaluate(chi.domain, ell, p).chi; }

std::pair<double, double> Cutoff::grad(const Point& p) const {
  const auto e = evaluate(chi.domain, ell, p);
  return {e.gx, e.gy};
}

double Cutoff::hessian_norm(const Point& p) const {
  const auto e = evaluate(chi.domain, ell, p);
  return std::sqrt(e.hxx * e.hxx + 2 * e.hxy * e.hxy + e.hyy * e.hyy);
}

Cutoff make_good_cutoff(const DomainSpec& dom, double ell) {
  dom.validate();
  if (!(ell > 0)) throw DomainError("cutoff scale must be positive");
  const double spacing = std::max(dom.dx(), dom.dy());
  if (ell < 4 * spacing) {
    const int need = int(std::ceil(4 * std::max(dom.L1, dom.L2) / ell)) - 1;
    throw ResolutionError("cutoff scale " + std::to_string(ell) +
                              " is shorter than 4 grid spacings; need N >= " + std::to_string(need),
                          need);
  }
  if (ell >= 0.5 * std::min(dom.L1, dom.L2))
    throw DomainError("cutoff scale leaves no point with d(x) >= ell");
  Cutoff c;
  c.ell = ell;
  c.within_ell0 = ell <= 0.25 * std::min(dom.L1, dom.L2);
  c.chi = GridField(dom);
  c.chi_x = GridField(dom);
  c.chi_y = GridField(dom);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) {
      const auto e = evaluate(dom, ell, dom.point(i, k));
      c.chi(i, k) = e.chi;
      c.chi_x(i, k) = e.gx;
      c.chi_y(i, k) = e.gy;
    }
  return c;
}

std::vector<BoundFitReport> verify_cutoff(const DomainSpec& dom, const std::vector<double>& ells,
                                          const std::vector<int>& js, double alpha) {
  if (ells.empty()) throw DomainError("cutoff sweep is empty");
  if (!(alpha > 0 && alpha < 2)) throw DomainError("alpha must lie in (0, 2)");
  for (int j : js)
    if (j <= -2) throw DomainError("j must exceed -2");

  const std::size_t nint = js.size() + 1;  // far-mass per j, then grad-mass
  std::vector<double> grad(ells.size()), hess(ells.size());
  std::vector<std::vector<double>> mass(nint, std::vector<double>(ells.size()));
  std::vector<std::vector<Point>> where(nint, std::vector<Point>(ells.size()));
  std::size_t fd_points = 0, x_points = 0;

  for (std::size_t e = 0; e < ells.size(); ++e) {
    const double ell = ells[e];
    const Cutoff c = make_good_cutoff(dom, ell);

    // Finite differences over the corner square [0, 3 ell/4]^2, which
    // contains every kind of transition point (edge and corner).
    const int m = 60;
    const double step = 0.75 * ell / m;
    const double fd = ell * 1e-4;
    double gmax = 0, hmax = 0;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b) {
        const Point p{std::max(a * step, fd), std::max(b * step, fd)};
        const double f0 = c.value(p);
        const double fxp = c.value({p.x + fd, p.y}), fxm = c.value({p.x - fd, p.y});
        const double fyp = c.value({p.x, p.y + fd}), fym = c.value({p.x, p.y - fd});
        const double gx = (fxp - fxm) / (2 * fd), gy = (fyp - fym) / (2 * fd);
        const double hxx = (fxp - 2 * f0 + fxm) / (fd * fd);
        const double hyy = (fyp - 2 * f0 + fym) / (fd * fd);
        const double hxy = (c.value({p.x + fd, p.y + fd}) - c.value({p.x + fd, p.y - fd}) -
                            c.value({p.x - fd, p.y + fd}) + c.value({p.x - fd, p.y - fd})) /
                           (4 * fd * fd);
        gmax = std::max(gmax, std::hypot(gx, gy));
        hmax = std::max(hmax, std::sqrt(hxx * hxx + 2 * hxy * hxy + hyy * hyy));
      }
    grad[e] = gmax * ell;
    hess[e] = hmax * ell * ell;
    fd_points += std::size_t(m + 1) * (m + 1);

    // Kernel integrals. 1 - chi lives in the boundary strips, grad chi in
    // the transition bands; both rules cover the strips finely.
    const auto bx = strip_breaks(dom.L1, ell, true);
    const auto by = strip_breaks(dom.L2, ell, true);
    const auto rx = quad::gauss_legendre_rule(bx, 10);
    const auto ry = quad::gauss_legendre_rule(by, 10);
    struct Node {
      double y1, y2, w, one_minus, gnorm;
    };
    std::vector<Node> nodes;
    for (std::size_t a = 0; a < rx.x.size(); ++a)
      for (std::size_t b = 0; b < ry.x.size(); ++b) {
        const Point y{rx.x[a], ry.x[b]};
        const auto v = evaluate(dom, ell, y);
        const double om = 1.0 - v.chi;
        const double gn = std::hypot(v.gx, v.gy);
        if (om == 0.0 && gn == 0.0) continue;
        nodes.push_back({y.x, y.y, rx.w[a] * ry.w[b], om, gn});
      }

    // Points x with d(x) >= ell on a 12 x 12 lattice of the lower-left quarter.
    std::vector<Point> xs;
    const int n = 12;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        const Point x{0.5 * dom.L1 * a / n, 0.5 * dom.L2 * b / n};
        if (distance_to_boundary(dom, x) >= ell) xs.push_back(x);
      }
    x_points += xs.size();
    std::vector<std::vector<double>> val(xs.size(), std::vector<double>(nint, 0.0));
    parallel_for(xs.size(), [&](std::size_t p) {
      const Point x = xs[p];
      for (const auto& nd : nodes) {
        const double r = std::hypot(x.x - nd.y1, x.y - nd.y2);
        for (std::size_t q = 0; q < js.size(); ++q)
          val[p][q] += nd.w * nd.one_minus * std::pow(r, -(2.0 + js[q]));
        val[p][js.size()] += nd.w * nd.gnorm * std::pow(r, -(2.0 - alpha));
      }
    });
    for (std::size_t q = 0; q < nint; ++q) {
      mass[q][e] = 0;
      for (std::size_t p = 0; p < xs.size(); ++p) {
        const double d = distance_to_boundary(dom, xs[p]);
        const double power = q < js.size() ? double(js[q]) : 1.0 - alpha;
        const double ratio = val[p][q] * std::pow(d, power);
        if (ratio > mass[q][e]) {
          mass[q][e] = ratio;
          where[q][e] = xs[p];
        }
      }
    }
  }

  std::string scales;
  for (double ell : ells) scales += (scales.empty() ? "" : ", ") + std::to_string(ell);
  const auto make = [&](std::string id, std::string statement, const std::vector<double>& per,
                        std::size_t size, std::string sweep, const std::vector<Point>* at) {
    BoundFitReport r;
    r.id = std::move(id);
    r.statement = std::move(statement);
    r.sense = BoundFitReport::Sense::Upper;
    const auto [lo, hi] = std::minmax_element(per.begin(), per.end());
    r.constant = *hi;
    r.stability_ratio = *lo > 0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    r.sweep = std::move(sweep);
    r.sweep_size = size;
    for (std::size_t e = 0; e < per.size(); ++e) r.extra["C(ell=" + std::to_string(ells[e]) + ")"] = per[e];
    const std::size_t arg = std::size_t(hi - per.begin());
    r.witness["ell"] = ells[arg];
    if (at) {
      r.witness["x1"] = (*at)[arg].x;
      r.witness["x2"] = (*at)[arg].y;
    }
    r.pass = std::isfinite(r.constant) && stable_ratio(r.stability_ratio);
    return r;
  };
  std::vector<BoundFitReport> out;
  out.push_back(make("cutoff-gradient", "|grad chi| <= C / ell", grad, fd_points,
                     "central differences on the corner square, ell in {" + scales + "}",
                     nullptr));
  out.push_back(make("cutoff-hessian", "|grad^2 chi| <= C / ell^2", hess, fd_points,
                     "central differences on the corner square, ell in {" + scales + "}",
                     nullptr));
  const std::string xs_text = "x on a 12x12 lattice of one quarter with d(x) >= ell, ell in {" +
                              scales + "}, tensor Gauss-Legendre over the boundary strips";
  for (std::size_t q = 0; q < js.size(); ++q) {
    auto r = make("cutoff-far-mass-j" + std::to_string(js[q]),
                  "int (1-chi(y))/|x-y|^{2+j} dy <= C d(x)^{-j}, j = " + std::to_string(js[q]),
                  mass[q], x_points, xs_text, &where[q]);
    r.extra["j"] = js[q];
    out.push_back(std::move(r));
  }
  auto r = make("cutoff-grad-mass",
                "int |grad chi(y)|/|x-y|^{2-alpha} dy <= C d(x)^{-(1-alpha)}", mass[js.size()],
                x_points, xs_text, &where[js.size()]);
  r.extra["alpha"] = alpha;
  out.push_back(std::move(r));
  return out;
}

}  // namespace dsqg
