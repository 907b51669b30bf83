#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace dsqg {

/// Outcome of fitting the best constant of one inequality over a sweep.
///
/// `sense` tells whether the constant is an upper constant (smallest C that
/// makes "lhs <= C * rhs" hold) or a lower constant (largest c for
/// "lhs >= c * rhs").
struct BoundFitReport {
  enum class Sense { Upper, Lower };

  std::string id;
  std::string statement;
  Sense sense = Sense::Upper;
  double constant = std::numeric_limits<double>::quiet_NaN();
  /// Constant refitted on the refined sweep divided by `constant`; NaN when
  /// no refinement was run.
  double stability_ratio = std::numeric_limits<double>::quiet_NaN();
  std::string sweep;
  std::size_t sweep_size = 0;
  bool pass = false;
  /// Named auxiliary quantities (secondary constants, thresholds, flags).
  std::map<std::string, double> extra;
  /// Location of the extremal ratio (coordinates, displacement, time).
  std::map<std::string, double> witness;
  std::string note;
};

/// Stability test used across the harness: ratio finite and in [1/f, f].
bool stable_ratio(double ratio, double factor = 2.0) noexcept;

std::string to_json(const std::vector<BoundFitReport>& reports);
std::vector<BoundFitReport> reports_from_json(const std::string& text);

/// Header plus one CSV row per report (id, sense, constant, stability_ratio,
/// sweep_size, verdict, statement).
std::string to_csv(const std::vector<BoundFitReport>& reports);

}  // namespace dsqg
