#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lvlab::cli {

std::string version_string();

// A named invariant or ratio threshold; failing checks turn into exit code 1.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::string detail;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool empty() const { return header.empty(); }
};

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  CsvTable csv;
  double wall_time = 0.0;
  bool include_timing = true;

  void check(const std::string& name, double value, double threshold, bool pass, const std::string& detail = "");
  bool alarmed() const;
  nlohmann::json to_json() const;
};

// Doubles rounded to 12 significant digits, non-finite values as null.
nlohmann::json normalize(const nlohmann::json& j);
// Sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

std::string format_number(double v);
std::string csv_field(const std::string& s);
std::string dump_csv(const CsvTable& t);

}  // namespace lvlab::cli
