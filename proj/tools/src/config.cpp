#include "lvlab_cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lvlab/errors.hpp"

namespace lvlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  const char* b = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(b, &end);
  if (end == b || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw InvalidInput("parameter '" + key + "': '" + text + "' is not a finite number");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  if (text.empty() || text[0] == '-') throw InvalidInput("parameter '" + key + "': '" + text + "' is not a non-negative integer");
  const char* b = text.c_str();
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(b, &end, 10);
  if (end == b || *end != '\0' || errno == ERANGE)
    throw InvalidInput("parameter '" + key + "': '" + text + "' is not a non-negative integer");
  return v;
}

}  // namespace

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "q", "T", "N", "sigma", "eps", "seed", "delta", "source", "smoothed", "mollifier_X", "t_min", "t_max",
      "t_step", "chi", "moments", "M", "M2", "D", "size", "wset", "cutoff", "decompose", "max_points",
      "max_lattice", "memory_budget", "alarm", "X", "Y", "classify", "threshold", "kind", "moduli", "base",
      "max_power", "ceiling", "threads", "format", "output", "deterministic"};
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!known_keys().count(key)) throw InvalidInput("unknown parameter '" + key + "'");
  values_[key] = value;
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t def, std::uint64_t min) {
  std::uint64_t v = def;
  if (auto it = values_.find(key); it != values_.end()) v = parse_u64(key, it->second);
  if (v < min) throw InvalidInput("parameter '" + key + "' must be >= " + std::to_string(min));
  echo_[key] = v;
  return v;
}

double RunConfig::get_double(const std::string& key, double def) {
  double v = def;
  if (auto it = values_.find(key); it != values_.end()) v = parse_double(key, it->second);
  echo_[key] = v;
  return v;
}

double RunConfig::get_positive(const std::string& key, double def) {
  const double v = get_double(key, def);
  if (!(v > 0.0)) throw InvalidInput("parameter '" + key + "' must be positive");
  return v;
}

bool RunConfig::get_bool(const std::string& key, bool def) {
  bool v = def;
  if (auto it = values_.find(key); it != values_.end()) {
    const std::string& s = it->second;
    if (s == "1" || s == "true" || s == "yes" || s == "on") v = true;
    else if (s == "0" || s == "false" || s == "no" || s == "off") v = false;
    else throw InvalidInput("parameter '" + key + "': '" + s + "' is not a boolean");
  }
  echo_[key] = v;
  return v;
}

std::string RunConfig::get_string(const std::string& key, const std::string& def) {
  std::string v = def;
  if (auto it = values_.find(key); it != values_.end()) v = it->second;
  echo_[key] = v;
  return v;
}

std::vector<double> RunConfig::get_double_list(const std::string& key, const std::vector<double>& def) {
  std::vector<double> v = def;
  if (auto it = values_.find(key); it != values_.end()) {
    v.clear();
    for (const auto& item : split_list(it->second)) v.push_back(parse_double(key, item));
  }
  echo_[key] = v;
  return v;
}

std::vector<std::uint64_t> RunConfig::get_u64_list(const std::string& key, const std::vector<std::uint64_t>& def) {
  std::vector<std::uint64_t> v = def;
  if (auto it = values_.find(key); it != values_.end()) {
    v.clear();
    for (const auto& item : split_list(it->second)) v.push_back(parse_u64(key, item));
  }
  echo_[key] = v;
  return v;
}

void parse_config_text(const std::string& text, RunConfig& cfg, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw InvalidInput(where + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidInput(where + ": empty key");
    if (!known_keys().count(key)) throw InvalidInput(where + ": unknown key '" + key + "'");
    cfg.set(key, value);
  }
}

void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  parse_config_text(ss.str(), cfg, path);
}

}  // namespace lvlab::cli
