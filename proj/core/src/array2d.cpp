#include "dsqg/array2d.hpp"

#include <algorithm>
#include <cmath>

#include "dsqg/error.hpp"

namespace dsqg {

namespace {
void require_same(const Array2D& a, const Array2D& b) {
  if (!a.same_shape(b)) throw DimensionError("Array2D shape mismatch");
}
}  // namespace

Array2D& Array2D::operator+=(const Array2D& o) {
  require_same(*this, o);
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
  return *this;
}

Array2D& Array2D::operator-=(const Array2D& o) {
  require_same(*this, o);
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
  return *this;
}

Array2D& Array2D::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Array2D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Array2D::sum_squares() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

bool Array2D::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Array2D operator+(Array2D a, const Array2D& b) { return a += b; }
Array2D operator-(Array2D a, const Array2D& b) { return a -= b; }
Array2D operator*(double s, Array2D a) { return a *= s; }

Array2D hadamard(const Array2D& a, const Array2D& b) {
  require_same(a, b);
  Array2D out(a.rows(), a.cols());
  auto fa = a.flat();
  auto fb = b.flat();
  auto fo = out.flat();
  for (std::size_t n = 0; n < fo.size(); ++n) fo[n] = fa[n] * fb[n];
  return out;
}

}  // namespace dsqg
