#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "dsqg/error.hpp"

namespace dsqg::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using R2RKey = std::tuple<int, int, int, int>;
using DftKey = std::tuple<int, int, int>;  // n0, n1, direction

fftw_plan r2r_plan(int n0, int n1, fftw_r2r_kind k0, fftw_r2r_kind k1) {
  static std::map<R2RKey, fftw_plan> cache;
  std::lock_guard lock(planner_mutex());
  const R2RKey key{n0, n1, static_cast<int>(k0), static_cast<int>(k1)};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<double> scratch(static_cast<std::size_t>(n0) * n1);
  fftw_plan p = fftw_plan_r2r_2d(n0, n1, scratch.data(), scratch.data(), k0, k1,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw Error("FFTW failed to create an r2r plan");
  cache.emplace(key, p);
  return p;
}

fftw_plan dft_plan(int n0, int n1, int direction) {
  static std::map<DftKey, fftw_plan> cache;
  std::lock_guard lock(planner_mutex());
  const DftKey key{n0, n1, direction};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t nc = static_cast<std::size_t>(n0) * (n1 / 2 + 1);
  std::vector<double> real(static_cast<std::size_t>(n0) * n1);
  std::vector<std::complex<double>> cplx(nc);
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  fftw_plan p = direction == FFTW_FORWARD
                    ? fftw_plan_dft_r2c_2d(n0, n1, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED)
                    : fftw_plan_dft_c2r_2d(n0, n1, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw Error("FFTW failed to create a dft plan");
  cache.emplace(key, p);
  return p;
}

fftw_r2r_kind kind_of(Basis b) { return b == Basis::Sine ? FFTW_RODFT00 : FFTW_REDFT00; }

void transform(Array2D& a, Basis bx, Basis by) {
  const int n0 = static_cast<int>(a.rows());
  const int n1 = static_cast<int>(a.cols());
  if ((bx == Basis::Cosine && n0 < 2) || (by == Basis::Cosine && n1 < 2) || n0 < 1 || n1 < 1)
    throw DimensionError("transform size too small");
  fftw_execute_r2r(r2r_plan(n0, n1, kind_of(bx), kind_of(by)), a.data(), a.data());
}

// Halve the interior cosine coefficients along the requested axes (FFTW's
// REDFT00 weights them by 2).
void scale_cosine_interior(Array2D& a, Basis bx, Basis by, double factor) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  for (std::size_t i = 0; i < r; ++i) {
    const bool ix = bx == Basis::Cosine && i > 0 && i + 1 < r;
    for (std::size_t k = 0; k < c; ++k) {
      const bool ik = by == Basis::Cosine && k > 0 && k + 1 < c;
      double s = 1.0;
      if (ix) s *= factor;
      if (ik) s *= factor;
      a(i, k) *= s;
    }
  }
}

double sine_axis_n(Basis b, std::size_t len) {
  // Number of intervals n+1 of the underlying grid.
  return b == Basis::Sine ? static_cast<double>(len + 1) : static_cast<double>(len - 1);
}

}  // namespace

Array2D synthesize(const Array2D& coeffs, Basis bx, Basis by) {
  Array2D a = coeffs;
  scale_cosine_interior(a, bx, by, 0.5);
  transform(a, bx, by);
  double s = 1.0;
  if (bx == Basis::Sine) s *= 0.5;
  if (by == Basis::Sine) s *= 0.5;
  a *= s;
  return a;
}

Array2D analyze(const Array2D& samples, Basis bx, Basis by) {
  Array2D a = samples;
  transform(a, bx, by);
  const double mx = sine_axis_n(bx, a.rows());
  const double my = sine_axis_n(by, a.cols());
  double s = 1.0;
  s /= bx == Basis::Sine ? mx : 2.0 * mx;
  s /= by == Basis::Sine ? my : 2.0 * my;
  a *= s;
  scale_cosine_interior(a, bx, by, 2.0);
  return a;
}

std::vector<std::complex<double>> forward_r2c(const Array2D& in) {
  const int n0 = static_cast<int>(in.rows());
  const int n1 = static_cast<int>(in.cols());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n0) * (n1 / 2 + 1));
  Array2D copy = in;
  fftw_execute_dft_r2c(dft_plan(n0, n1, FFTW_FORWARD), copy.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Array2D inverse_c2r(std::vector<std::complex<double>> spec, std::size_t n0, std::size_t n1) {
  if (spec.size() != n0 * (n1 / 2 + 1)) throw DimensionError("c2r spectrum size mismatch");
  Array2D out(n0, n1);
  fftw_execute_dft_c2r(dft_plan(static_cast<int>(n0), static_cast<int>(n1), FFTW_BACKWARD),
                       reinterpret_cast<fftw_complex*>(spec.data()), out.data());
  return out;
}

}  // namespace dsqg::fft
