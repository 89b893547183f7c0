#include "lvlab_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifndef LVLAB_VERSION
#define LVLAB_VERSION "0.0.0"
#endif

namespace lvlab::cli {

std::string version_string() { return LVLAB_VERSION; }

void Report::check(const std::string& name, double value, double threshold, bool pass, const std::string& detail) {
  checks.push_back({name, value, threshold, pass, detail});
}

bool Report::alarmed() const {
  for (const auto& c : checks)
    if (!c.pass) return true;
  return false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;
  j["results"] = results;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                     {"status", c.pass ? "pass" : "alarm"}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["alarm"] = alarmed();
  j["version"] = version_string();
  if (include_timing) j["wall_time_s"] = wall_time;
  return normalize(j);
}

nlohmann::json normalize(const nlohmann::json& j) {
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = normalize(it.value());
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) out.push_back(normalize(e));
    return out;
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) r = 0.0;  // drops the sign of -0
    return r;
  }
  return j;
}

std::string dump_json(const nlohmann::json& j) { return normalize(j).dump(2) + "\n"; }

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string dump_csv(const CsvTable& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_field(r[i]);
    }
    out += "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

}  // namespace lvlab::cli
