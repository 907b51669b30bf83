#include "dsqg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsqg/error.hpp"
#include "fft.hpp"

namespace dsqg {

using fft::Basis;

namespace {

GridField interior_rows(const DomainSpec& dom, const Array2D& closed_x) {
  GridField g(dom);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) g(i, k) = closed_x(i + 1, k);
  return g;
}

GridField interior_cols(const DomainSpec& dom, const Array2D& closed_y) {
  GridField g(dom);
  for (int i = 0; i < dom.N1; ++i)
    for (int k = 0; k < dom.N2; ++k) g(i, k) = closed_y(i, k + 1);
  return g;
}

SpectralField scaled(const SpectralField& a, auto&& factor) {
  SpectralField out(a.domain);
  for (int j = 1; j <= a.domain.N1; ++j)
    for (int k = 1; k <= a.domain.N2; ++k) out(j, k) = factor(j, k) * a(j, k);
  return out;
}

std::vector<double> sines(int n, double wavenumber_step, double x) {
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) s[j] = std::sin((j + 1) * wavenumber_step * x);
  return s;
}

std::vector<double> cosines(int n, double wavenumber_step, double x) {
  std::vector<double> c(n);
  for (int j = 0; j < n; ++j) c[j] = std::cos((j + 1) * wavenumber_step * x);
  return c;
}

}  // namespace

SpectralField to_spectral(const GridField& g) {
  g.domain.validate();
  SpectralField a(g.domain, fft::analyze(g.values, Basis::Sine, Basis::Sine));
  a.coeffs *= 1.0 / g.domain.mode_amplitude();
  return a;
}

GridField from_spectral(const SpectralField& a) {
  a.domain.validate();
  GridField g(a.domain, fft::synthesize(a.coeffs, Basis::Sine, Basis::Sine));
  g.values *= a.domain.mode_amplitude();
  return g;
}

SpectralField apply_lambda_power(const SpectralField& a, double p) {
  const DomainSpec& d = a.domain;
  return scaled(a, [&](int j, int k) { return std::pow(d.eigenvalue(j, k), 0.5 * p); });
}

SpectralField apply_lambda_s(const SpectralField& a, double s) {
  if (!(s >= 0.0 && s <= 2.0)) throw DomainError("Lambda^s requires s in [0, 2]");
  if (s == 0.0) return a;
  if (s == 2.0) {
    const DomainSpec& d = a.domain;
    return scaled(a, [&](int j, int k) { return d.eigenvalue(j, k); });
  }
  return apply_lambda_power(a, s);
}

SpectralField apply_lambda_inverse(const SpectralField& a) {
  const DomainSpec& d = a.domain;
  return scaled(a, [&](int j, int k) { return 1.0 / std::sqrt(d.eigenvalue(j, k)); });
}

double dirichlet_norm(const SpectralField& a, double s) {
  double sum = 0.0;
  for (int j = 1; j <= a.domain.N1; ++j)
    for (int k = 1; k <= a.domain.N2; ++k)
      sum += std::pow(a.domain.eigenvalue(j, k), s) * a(j, k) * a(j, k);
  return std::sqrt(sum);
}

SpectralField truncate(const SpectralField& a, int n1, int n2) {
  SpectralField out = a;
  for (int j = 1; j <= a.domain.N1; ++j)
    for (int k = 1; k <= a.domain.N2; ++k)
      if (j > n1 || k > n2) out(j, k) = 0.0;
  return out;
}

SpectralField resample_modes(const SpectralField& a, const DomainSpec& target) {
  if (a.domain.L1 != target.L1 || a.domain.L2 != target.L2)
    throw DimensionError("resample_modes requires identical side lengths");
  SpectralField out(target);
  const int n1 = std::min(a.domain.N1, target.N1);
  const int n2 = std::min(a.domain.N2, target.N2);
  for (int j = 1; j <= n1; ++j)
    for (int k = 1; k <= n2; ++k) out(j, k) = a(j, k);
  return out;
}

std::pair<GridField, GridField> gradient(const SpectralField& a) {
  const DomainSpec& d = a.domain;
  d.validate();
  const double amp = d.mode_amplitude();

  Array2D cx(d.N1 + 2, d.N2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k) cx(j, k - 1) = amp * d.kx(j) * a(j, k);
  Array2D cy(d.N1, d.N2 + 2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k) cy(j - 1, k) = amp * d.ky(k) * a(j, k);

  return {interior_rows(d, fft::synthesize(cx, Basis::Cosine, Basis::Sine)),
          interior_cols(d, fft::synthesize(cy, Basis::Sine, Basis::Cosine))};
}

Hessian hessian(const SpectralField& a) {
  const DomainSpec& d = a.domain;
  d.validate();
  const double amp = d.mode_amplitude();
  Array2D cxy(d.N1 + 2, d.N2 + 2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k) cxy(j, k) = amp * d.kx(j) * d.ky(k) * a(j, k);
  Array2D closed = fft::synthesize(cxy, Basis::Cosine, Basis::Cosine);
  GridField xy(d);
  for (int i = 0; i < d.N1; ++i)
    for (int k = 0; k < d.N2; ++k) xy(i, k) = closed(i + 1, k + 1);

  auto xx = from_spectral(scaled(a, [&](int j, int) { return -d.kx(j) * d.kx(j); }));
  auto yy = from_spectral(scaled(a, [&](int, int k) { return -d.ky(k) * d.ky(k); }));
  return {std::move(xx), std::move(xy), std::move(yy)};
}

double evaluate(const SpectralField& a, const Point& p) {
  const DomainSpec& d = a.domain;
  const auto sx = sines(d.N1, d.kx(1), p.x);
  const auto sy = sines(d.N2, d.ky(1), p.y);
  double sum = 0.0;
  for (int j = 0; j < d.N1; ++j) {
    double row = 0.0;
    for (int k = 0; k < d.N2; ++k) row += a.coeffs(j, k) * sy[k];
    sum += sx[j] * row;
  }
  return d.mode_amplitude() * sum;
}

std::pair<double, double> evaluate_gradient(const SpectralField& a, const Point& p) {
  const DomainSpec& d = a.domain;
  const auto sx = sines(d.N1, d.kx(1), p.x);
  const auto sy = sines(d.N2, d.ky(1), p.y);
  const auto cx = cosines(d.N1, d.kx(1), p.x);
  const auto cy = cosines(d.N2, d.ky(1), p.y);
  double gx = 0.0;
  double gy = 0.0;
  for (int j = 0; j < d.N1; ++j) {
    for (int k = 0; k < d.N2; ++k) {
      const double c = a.coeffs(j, k);
      gx += d.kx(j + 1) * c * cx[j] * sy[k];
      gy += d.ky(k + 1) * c * sx[j] * cy[k];
    }
  }
  const double amp = d.mode_amplitude();
  return {amp * gx, amp * gy};
}

VelocityField::VelocityField(const DomainSpec& dom, Array2D u1_closed, Array2D u2_closed)
    : dom_(dom), u1_(std::move(u1_closed)), u2_(std::move(u2_closed)) {
  const auto r = static_cast<std::size_t>(dom.N1 + 2);
  const auto c = static_cast<std::size_t>(dom.N2 + 2);
  if (u1_.rows() != r || u1_.cols() != c || u2_.rows() != r || u2_.cols() != c)
    throw DimensionError("velocity components must live on the closed grid");
}

GridField VelocityField::u1() const {
  GridField g(dom_);
  for (int i = 0; i < dom_.N1; ++i)
    for (int k = 0; k < dom_.N2; ++k) g(i, k) = u1_(i + 1, k + 1);
  return g;
}

GridField VelocityField::u2() const {
  GridField g(dom_);
  for (int i = 0; i < dom_.N1; ++i)
    for (int k = 0; k < dom_.N2; ++k) g(i, k) = u2_(i + 1, k + 1);
  return g;
}

double VelocityField::max_speed() const noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < u1_.size(); ++n)
    m = std::max(m, std::hypot(u1_.data()[n], u2_.data()[n]));
  return m;
}

double VelocityField::max_boundary_normal() const noexcept {
  const std::size_t r = u1_.rows();
  const std::size_t c = u1_.cols();
  double m = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    m = std::max(m, std::abs(u1_(0, k)));
    m = std::max(m, std::abs(u1_(r - 1, k)));
  }
  for (std::size_t i = 0; i < r; ++i) {
    m = std::max(m, std::abs(u2_(i, 0)));
    m = std::max(m, std::abs(u2_(i, c - 1)));
  }
  return m;
}

VelocityField riesz_velocity(const SpectralField& theta) {
  const DomainSpec& d = theta.domain;
  d.validate();
  const SpectralField psi = apply_lambda_inverse(theta);
  const double amp = d.mode_amplitude();

  // u1 = -psi_y: sine in x, cosine in y.
  Array2D c1(d.N1, d.N2 + 2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k) c1(j - 1, k) = -amp * d.ky(k) * psi(j, k);
  const Array2D s1 = fft::synthesize(c1, Basis::Sine, Basis::Cosine);
  Array2D u1(d.N1 + 2, d.N2 + 2);
  for (int i = 0; i < d.N1; ++i)
    for (int k = 0; k < d.N2 + 2; ++k) u1(i + 1, k) = s1(i, k);

  // u2 = psi_x: cosine in x, sine in y.
  Array2D c2(d.N1 + 2, d.N2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k) c2(j, k - 1) = amp * d.kx(j) * psi(j, k);
  const Array2D s2 = fft::synthesize(c2, Basis::Cosine, Basis::Sine);
  Array2D u2(d.N1 + 2, d.N2 + 2);
  for (int i = 0; i < d.N1 + 2; ++i)
    for (int k = 0; k < d.N2; ++k) u2(i, k + 1) = s2(i, k);

  return VelocityField(d, std::move(u1), std::move(u2));
}

Array2D divergence(const VelocityField& u) {
  const DomainSpec& d = u.domain();
  // d/dx u1: u1 is a sine series in x and a cosine series in y.
  Array2D s1(d.N1, d.N2 + 2);
  for (int i = 0; i < d.N1; ++i)
    for (int k = 0; k < d.N2 + 2; ++k) s1(i, k) = u.u1_closed()(i + 1, k);
  const Array2D a1 = fft::analyze(s1, Basis::Sine, Basis::Cosine);
  Array2D d1(d.N1 + 2, d.N2 + 2);
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 0; k < d.N2 + 2; ++k) d1(j, k) = d.kx(j) * a1(j - 1, k);

  // d/dy u2: cosine series in x, sine series in y.
  Array2D s2(d.N1 + 2, d.N2);
  for (int i = 0; i < d.N1 + 2; ++i)
    for (int k = 0; k < d.N2; ++k) s2(i, k) = u.u2_closed()(i, k + 1);
  const Array2D a2 = fft::analyze(s2, Basis::Cosine, Basis::Sine);
  Array2D d2(d.N1 + 2, d.N2 + 2);
  for (int j = 0; j < d.N1 + 2; ++j)
    for (int k = 1; k <= d.N2; ++k) d2(j, k) = d.ky(k) * a2(j, k - 1);

  return fft::synthesize(d1, Basis::Cosine, Basis::Cosine) +
         fft::synthesize(d2, Basis::Cosine, Basis::Cosine);
}

}  // namespace dsqg
