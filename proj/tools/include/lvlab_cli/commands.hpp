#pragma once

#include <string>
#include <vector>

#include "lvlab_cli/config.hpp"
#include "lvlab_cli/report.hpp"

namespace lvlab::cli {

struct CommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> keys;  // parameters exposed as --flags
  bool csv_default;               // default output format is CSV
};

const std::vector<CommandInfo>& commands();

// Routes to the module operation. Throws lvlab::Error subclasses on failure.
Report dispatch(RunConfig& cfg);

// Exit status for a finished report: 0, or 1 when any check alarmed.
int exit_code(const Report& r);

}  // namespace lvlab::cli
