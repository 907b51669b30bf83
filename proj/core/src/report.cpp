#include "dsqg/report.hpp"

#include <cmath>
#include <sstream>

#include "dsqg/error.hpp"
#include "json.hpp"

namespace dsqg {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("unexpected string in numeric field: " + s);
  }
  return j.get<double>();
}

json number_map(const std::map<std::string, double>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[k] = number(v);
  return o;
}

std::map<std::string, double> read_map(const json& j) {
  std::map<std::string, double> m;
  if (!j.is_object()) return m;
  for (const auto& [k, v] : j.items()) m[k] = read_number(v);
  return m;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

bool stable_ratio(double ratio, double factor) noexcept {
  return std::isfinite(ratio) && ratio >= 1.0 / factor && ratio <= factor;
}

std::string to_json(const std::vector<BoundFitReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"id", r.id},
                   {"statement", r.statement},
                   {"sense", r.sense == BoundFitReport::Sense::Upper ? "upper" : "lower"},
                   {"constant", number(r.constant)},
                   {"stability_ratio", number(r.stability_ratio)},
                   {"sweep", r.sweep},
                   {"sweep_size", r.sweep_size},
                   {"verdict", r.pass ? "pass" : "fail"},
                   {"extra", number_map(r.extra)},
                   {"witness", number_map(r.witness)},
                   {"note", r.note}});
  }
  return json{{"schema", "dsqg-report/1"}, {"reports", arr}}.dump(2);
}

std::vector<BoundFitReport> reports_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("reports") || !doc["reports"].is_array())
    throw ConfigError("report JSON lacks a 'reports' array");
  std::vector<BoundFitReport> out;
  try {
    for (const auto& j : doc["reports"]) {
      BoundFitReport r;
      r.id = j.at("id").get<std::string>();
      r.statement = j.value("statement", "");
      r.sense = j.value("sense", "upper") == "lower" ? BoundFitReport::Sense::Lower
                                                     : BoundFitReport::Sense::Upper;
      r.constant = read_number(j.value("constant", json(nullptr)));
      r.stability_ratio = read_number(j.value("stability_ratio", json(nullptr)));
      r.sweep = j.value("sweep", "");
      r.sweep_size = j.value("sweep_size", std::size_t{0});
      r.pass = j.value("verdict", "fail") == "pass";
      if (j.contains("extra")) r.extra = read_map(j["extra"]);
      if (j.contains("witness")) r.witness = read_map(j["witness"]);
      r.note = j.value("note", "");
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report entry: ") + e.what());
  }
  return out;
}

std::string to_csv(const std::vector<BoundFitReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "id,sense,constant,stability_ratio,sweep_size,verdict,statement\n";
  for (const auto& r : reports) {
    os << csv_escape(r.id) << ',' << (r.sense == BoundFitReport::Sense::Upper ? "upper" : "lower")
       << ',' << r.constant << ',' << r.stability_ratio << ',' << r.sweep_size << ','
       << (r.pass ? "pass" : "fail") << ',' << csv_escape(r.statement) << '\n';
  }
  return os.str();
}

}  // namespace dsqg
