#pragma once

// Run configuration for sqgctl. Files are flat `key = value` lines grouped
// under `[section]` headers; the grammar is in docs/config.md.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dsqg/checkpoint.hpp"
#include "dsqg/galerkin.hpp"

namespace dsqg {

/// Parsed key-value text. Keys are "section.key" (or "key" before the first
/// header). Unknown keys are rejected by RunConfig, not here.
class ConfigFile {
 public:
  /// Throws ConfigError with the line number on malformed input or a
  /// repeated key.
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get(const std::string& key, double fallback) const;
  int get(const std::string& key, int fallback) const;
  std::uint64_t get(const std::string& key, std::uint64_t fallback) const;
  bool get(const std::string& key, bool fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

struct InitialData {
  /// "zero", "bump", "random" or "mode:j,k".
  std::string field = "bump";
  double amplitude = 1.0;
};

struct MonitorSettings {
  bool enabled = true;
  /// Holder exponent; 0 picks alpha with alpha |theta_0|_inf = 0.1.
  double holder_alpha = 0.0;
  double ell = 0.5;
  /// Relative slack of the maximum-principle monitor.
  double max_principle_slack = 1e-8;
};

struct OutputSettings {
  CheckpointFormat checkpoint_format = CheckpointFormat::Binary;
  /// Write a checkpoint for every recorded state (otherwise the last one only).
  bool checkpoint_all = false;
};

/// Settings of the verification suites.
struct VerifySettings {
  /// Interior grid points per direction.
  int N = 63;
  /// Sample points per direction of the kernel sweeps.
  int kernel_n = 16;
  /// Dissipation order.
  double s = 1.0;
  /// Refined-grid stability ratios.
  bool refine = true;
  /// Cutoff scale of the lower-bound, commutator and Riesz suites.
  double ell = 0.5;
  /// Number of random fields in the Cordoba suite.
  int random_fields = 3;
};

struct RunConfig {
  double L1 = 3.141592653589793;
  double L2 = 3.141592653589793;
  std::uint64_t seed = 0;
  /// 0 keeps the library default.
  int threads = 0;
  InitialData initial{};
  SolverConfig solver{};
  MonitorSettings monitors{};
  OutputSettings output{};
  VerifySettings verify{};

  /// Throws ConfigError on an unknown key or an invalid value.
  static RunConfig from(const ConfigFile& file);
  static RunConfig load(const std::string& path);
  /// Every key with its value, in the file grammar; parsing it back gives
  /// the same RunConfig.
  std::string to_text() const;
  void validate() const;
};

/// Keys RunConfig understands, as "section.key".
const std::vector<std::string>& known_config_keys();

}  // namespace dsqg
