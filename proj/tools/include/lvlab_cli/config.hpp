#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace lvlab::cli {

// Every key a config file or flag may set. Flags use the same names with '-' for '_'.
const std::set<std::string>& known_keys();

// Parsed key=value parameters plus a record of what each command actually read.
class RunConfig {
 public:
  std::string command;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  // Typed getters validate the text, record the resolved value in the echo and
  // throw InvalidInput naming the key on malformed or out-of-range input.
  std::uint64_t get_u64(const std::string& key, std::uint64_t def, std::uint64_t min = 0);
  double get_double(const std::string& key, double def);
  double get_positive(const std::string& key, double def);
  bool get_bool(const std::string& key, bool def);
  std::string get_string(const std::string& key, const std::string& def);
  std::vector<double> get_double_list(const std::string& key, const std::vector<double>& def);
  std::vector<std::uint64_t> get_u64_list(const std::string& key, const std::vector<std::uint64_t>& def);

  const nlohmann::json& echo() const { return echo_; }

 private:
  std::map<std::string, std::string> values_;
  nlohmann::json echo_ = nlohmann::json::object();
};

// key=value lines, '#' starts a comment, blank lines ignored. Unknown keys and
// malformed lines raise InvalidInput with the line number.
void load_config(const std::string& path, RunConfig& cfg);
void parse_config_text(const std::string& text, RunConfig& cfg, const std::string& origin = "<text>");

}  // namespace lvlab::cli
