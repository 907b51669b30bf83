#include "dsqg/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "dsqg/error.hpp"

namespace dsqg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(std::string v) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return v;
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string v = unquote(raw);
  T out{};
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  // The INI reader only knows ';' comments; '#' lines are accepted too.
  std::istringstream in(text);
  std::ostringstream norm;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    norm << (!t.empty() && t.front() == '#' ? ";" + t : line) << '\n';
  }
  boost::property_tree::ptree tree;
  std::istringstream src(norm.str());
  try {
    boost::property_tree::ini_parser::read_ini(src, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigFile cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.values_[trim(name)] = trim(node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) cfg.values_[trim(name) + "." + trim(key)] = trim(leaf.data());
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

std::string ConfigFile::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : unquote(it->second);
}

double ConfigFile::get(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = parse_number<double>(key, it->second);
  if (!std::isfinite(v)) throw ConfigError("config key '" + key + "' must be finite");
  return v;
}

int ConfigFile::get(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_number<int>(key, it->second);
}

std::uint64_t ConfigFile::get(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_number<std::uint64_t>(key, it->second);
}

bool ConfigFile::get(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string v = unquote(it->second);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys{
      "run.seed",
      "run.threads",
      "domain.L1",
      "domain.L2",
      "initial.field",
      "initial.amplitude",
      "solver.n",
      "solver.dt",
      "solver.T_end",
      "solver.dealias",
      "solver.stepper",
      "solver.nonlinear",
      "solver.record_every",
      "solver.cfl",
      "solver.blowup_factor",
      "solver.resolution_tolerance",
      "solver.holder_alpha",
      "solver.gradient_column",
      "monitors.enabled",
      "monitors.holder_alpha",
      "monitors.ell",
      "monitors.max_principle_slack",
      "output.checkpoint_format",
      "output.checkpoint_all",
      "verify.N",
      "verify.kernel_n",
      "verify.s",
      "verify.refine",
      "verify.ell",
      "verify.random_fields",
  };
  return keys;
}

RunConfig RunConfig::from(const ConfigFile& f) {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : f.values())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  RunConfig c;
  c.seed = f.get("run.seed", c.seed);
  c.threads = f.get("run.threads", c.threads);
  c.L1 = f.get("domain.L1", c.L1);
  c.L2 = f.get("domain.L2", c.L2);
  c.initial.field = f.get("initial.field", c.initial.field);
  c.initial.amplitude = f.get("initial.amplitude", c.initial.amplitude);
  auto& s = c.solver;
  s.n = f.get("solver.n", s.n);
  s.dt = f.get("solver.dt", s.dt);
  s.T_end = f.get("solver.T_end", s.T_end);
  s.dealias = parse_dealias(f.get("solver.dealias", to_string(s.dealias)));
  s.stepper = parse_stepper(f.get("solver.stepper", to_string(s.stepper)));
  s.nonlinear = f.get("solver.nonlinear", s.nonlinear);
  s.record_every = f.get("solver.record_every", s.record_every);
  s.cfl = f.get("solver.cfl", s.cfl);
  s.blowup_factor = f.get("solver.blowup_factor", s.blowup_factor);
  s.resolution_tolerance = f.get("solver.resolution_tolerance", s.resolution_tolerance);
  s.holder_alpha = f.get("solver.holder_alpha", s.holder_alpha);
  s.gradient_column = f.get("solver.gradient_column", s.gradient_column);
  auto& m = c.monitors;
  m.enabled = f.get("monitors.enabled", m.enabled);
  m.holder_alpha = f.get("monitors.holder_alpha", m.holder_alpha);
  m.ell = f.get("monitors.ell", m.ell);
  m.max_principle_slack = f.get("monitors.max_principle_slack", m.max_principle_slack);
  c.output.checkpoint_format =
      parse_checkpoint_format(f.get("output.checkpoint_format", std::string("binary")));
  c.output.checkpoint_all = f.get("output.checkpoint_all", c.output.checkpoint_all);
  auto& v = c.verify;
  v.N = f.get("verify.N", v.N);
  v.kernel_n = f.get("verify.kernel_n", v.kernel_n);
  v.s = f.get("verify.s", v.s);
  v.refine = f.get("verify.refine", v.refine);
  v.ell = f.get("verify.ell", v.ell);
  v.random_fields = f.get("verify.random_fields", v.random_fields);
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) { return from(ConfigFile::load(path)); }

void RunConfig::validate() const {
  if (!(L1 > 0) || !(L2 > 0)) throw ConfigError("domain lengths must be positive");
  if (threads < 0) throw ConfigError("run.threads must be nonnegative");
  solver.validate();
  if (!(monitors.holder_alpha >= 0 && monitors.holder_alpha < 1))
    throw ConfigError("monitors.holder_alpha must lie in [0, 1)");
  if (!(monitors.ell > 0)) throw ConfigError("monitors.ell must be positive");
  if (!(monitors.max_principle_slack >= 0))
    throw ConfigError("monitors.max_principle_slack must be nonnegative");
  if (verify.N < 15) throw ConfigError("verify.N must be at least 15");
  if (verify.kernel_n < 4) throw ConfigError("verify.kernel_n must be at least 4");
  if (!(verify.s > 0 && verify.s < 2)) throw ConfigError("verify.s must lie in (0, 2)");
  if (!(verify.ell > 0)) throw ConfigError("verify.ell must be positive");
  if (verify.random_fields < 1) throw ConfigError("verify.random_fields must be at least 1");
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17) << std::boolalpha;
  os << "[run]\nseed = " << seed << "\nthreads = " << threads << "\n\n";
  os << "[domain]\nL1 = " << L1 << "\nL2 = " << L2 << "\n\n";
  os << "[initial]\nfield = " << initial.field << "\namplitude = " << initial.amplitude << "\n\n";
  os << "[solver]\nn = " << solver.n << "\ndt = " << solver.dt << "\nT_end = " << solver.T_end
     << "\ndealias = " << to_string(solver.dealias) << "\nstepper = " << to_string(solver.stepper)
     << "\nnonlinear = " << solver.nonlinear << "\nrecord_every = " << solver.record_every
     << "\ncfl = " << solver.cfl << "\nblowup_factor = " << solver.blowup_factor
     << "\nresolution_tolerance = " << solver.resolution_tolerance
     << "\nholder_alpha = " << solver.holder_alpha
     << "\ngradient_column = " << solver.gradient_column << "\n\n";
  os << "[monitors]\nenabled = " << monitors.enabled << "\nholder_alpha = " << monitors.holder_alpha
     << "\nell = " << monitors.ell << "\nmax_principle_slack = " << monitors.max_principle_slack
     << "\n\n";
  os << "[output]\ncheckpoint_format = "
     << (output.checkpoint_format == CheckpointFormat::Binary ? "binary" : "csv")
     << "\ncheckpoint_all = " << output.checkpoint_all << "\n\n";
  os << "[verify]\nN = " << verify.N << "\nkernel_n = " << verify.kernel_n << "\ns = " << verify.s << "\nrefine = " << verify.refine
     << "\nell = " << verify.ell << "\nrandom_fields = " << verify.random_fields << "\n";
  return os.str();
}

}  // namespace dsqg
