#pragma once

// Reductions shared by the bound-fitting sweeps. Inputs are per-sample
// vectors filled in index order, so results do not depend on threading.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace dsqg::fit {

struct Extremum {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::size_t index = 0;
  std::size_t count = 0;  // number of finite samples seen
};

/// Largest finite entry (NaN entries mark skipped samples).
inline Extremum max_of(const std::vector<double>& v) {
  Extremum e;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) continue;
    if (e.count == 0 || v[i] > e.value) e = {v[i], i, e.count};
    ++e.count;
  }
  return e;
}

inline Extremum min_of(const std::vector<double>& v) {
  Extremum e;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) continue;
    if (e.count == 0 || v[i] < e.value) e = {v[i], i, e.count};
    ++e.count;
  }
  return e;
}

/// Envelope value <= C e^{-u/K}. K is fitted by least squares of log(value)
/// against u, then C is the smallest constant that covers every sample.
/// Samples with value below `floor` are clamped: excluded from the fit and
/// counted as satisfied.
struct ExpFit {
  double K = std::numeric_limits<double>::quiet_NaN();
  double C = std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  std::size_t clamped = 0;
  std::size_t argmax = 0;
};

/// Smallest C with value <= C e^{-u/K} at every unclamped sample.
inline ExpFit cover_envelope(const std::vector<double>& u, const std::vector<double>& value,
                             double K, double floor = 1e-50) {
  ExpFit f;
  f.K = K;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(value[i])) continue;
    if (value[i] < floor) {
      ++f.clamped;
      continue;
    }
    ++f.used;
    const double c = std::log(value[i]) + u[i] / K;
    if (c > best) {
      best = c;
      f.argmax = i;
    }
  }
  f.C = std::exp(best);
  return f;
}

/// Regression fit. `margin` scales the fitted K before C is computed, so
/// polynomial prefactors in u are absorbed inside the sampled range.
inline ExpFit fit_exponential_envelope(const std::vector<double>& u,
                                       const std::vector<double>& value, double floor = 1e-50,
                                       double margin = 1.0) {
  ExpFit f;
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(value[i])) continue;
    if (value[i] < floor) {
      ++f.clamped;
      continue;
    }
    const double v = std::log(value[i]);
    su += u[i];
    sv += v;
    suu += u[i] * u[i];
    suv += u[i] * v;
    ++f.used;
  }
  if (f.used < 2) return f;
  const double n = static_cast<double>(f.used);
  const double den = n * suu - su * su;
  if (den <= 0) return f;
  const double slope = (n * suv - su * sv) / den;
  // A non-negative slope means no decay was observed; no finite K exists.
  if (!(slope < 0)) return f;
  return cover_envelope(u, value, -margin / slope, floor);
}

}  // namespace dsqg::fit
