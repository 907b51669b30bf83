#include "dsqg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsqg/error.hpp"

namespace dsqg {

void DomainSpec::validate() const {
  if (!(L1 > 0.0) || !(L2 > 0.0) || !std::isfinite(L1) || !std::isfinite(L2))
    throw DomainError("domain side lengths must be positive and finite");
  if (N1 < 4 || N2 < 4) throw DomainError("domain needs at least 4 grid points per direction");
}

double DomainSpec::kx(int j) const noexcept { return j * std::numbers::pi / L1; }
double DomainSpec::ky(int k) const noexcept { return k * std::numbers::pi / L2; }

double DomainSpec::eigenvalue(int j, int k) const noexcept {
  const double a = kx(j);
  const double b = ky(k);
  return a * a + b * b;
}

double DomainSpec::mode_amplitude() const noexcept { return 2.0 / std::sqrt(L1 * L2); }

DomainSpec DomainSpec::refined(int factor) const {
  if (factor < 1) throw DomainError("refinement factor must be >= 1");
  return {L1, L2, factor * (N1 + 1) - 1, factor * (N2 + 1) - 1};
}

bool DomainSpec::contains(const Point& p) const noexcept {
  return p.x > 0.0 && p.x < L1 && p.y > 0.0 && p.y < L2;
}

double distance_to_boundary(const DomainSpec& dom, const Point& p) {
  constexpr double slack = 1e-12;
  if (p.x < -slack * dom.L1 || p.x > dom.L1 * (1 + slack) || p.y < -slack * dom.L2 ||
      p.y > dom.L2 * (1 + slack))
    throw DomainError("point lies outside the rectangle");
  const double d = std::min({p.x, dom.L1 - p.x, p.y, dom.L2 - p.y});
  return std::max(d, 0.0);
}

Spectrum::Spectrum(const DomainSpec& dom) : dom_(dom), lambda_(dom.N1, dom.N2) {
  dom.validate();
  for (int j = 1; j <= dom.N1; ++j)
    for (int k = 1; k <= dom.N2; ++k) lambda_(j - 1, k - 1) = dom.eigenvalue(j, k);
}

void require_same_domain(const DomainSpec& a, const DomainSpec& b) {
  if (!(a == b))
    throw DimensionError("domain mismatch: (" + std::to_string(a.N1) + "x" + std::to_string(a.N2) +
                         ") vs (" + std::to_string(b.N1) + "x" + std::to_string(b.N2) + ")");
}

GridField::GridField(const DomainSpec& dom) : domain(dom), values(dom.N1, dom.N2) {}

GridField::GridField(const DomainSpec& dom, Array2D v) : domain(dom), values(std::move(v)) {
  if (values.rows() != static_cast<std::size_t>(dom.N1) ||
      values.cols() != static_cast<std::size_t>(dom.N2))
    throw DimensionError("grid values do not match the domain grid");
}

double GridField::l2_norm() const noexcept {
  return std::sqrt(values.sum_squares() * domain.dx() * domain.dy());
}

SpectralField::SpectralField(const DomainSpec& dom) : domain(dom), coeffs(dom.N1, dom.N2) {}

SpectralField::SpectralField(const DomainSpec& dom, Array2D c) : domain(dom), coeffs(std::move(c)) {
  if (coeffs.rows() != static_cast<std::size_t>(dom.N1) ||
      coeffs.cols() != static_cast<std::size_t>(dom.N2))
    throw DimensionError("coefficient matrix does not match the domain modes");
}

SpectralField SpectralField::mode(const DomainSpec& dom, int j, int k, double amplitude) {
  if (j < 1 || k < 1 || j > dom.N1 || k > dom.N2) throw DomainError("mode index out of range");
  SpectralField a(dom);
  a(j, k) = amplitude;
  return a;
}

double SpectralField::l2_norm() const noexcept { return std::sqrt(coeffs.sum_squares()); }

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_domain(a.domain, b.domain);
  return {a.domain, a.coeffs + b.coeffs};
}
SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_domain(a.domain, b.domain);
  return {a.domain, a.coeffs - b.coeffs};
}
SpectralField operator*(double s, const SpectralField& a) { return {a.domain, s * a.coeffs}; }

GridField operator+(const GridField& a, const GridField& b) {
  require_same_domain(a.domain, b.domain);
  return {a.domain, a.values + b.values};
}
GridField operator-(const GridField& a, const GridField& b) {
  require_same_domain(a.domain, b.domain);
  return {a.domain, a.values - b.values};
}
GridField operator*(double s, const GridField& a) { return {a.domain, s * a.values}; }

}  // namespace dsqg
