#pragma once

#include <map>
#include <string>
#include <vector>

#include "orlicz/report.hpp"

namespace orlicz {

struct ScenarioResult {
  int exit_code = 0;  // 0 ok, 1 expectation missed, 2 input error
  Json report;
  std::vector<std::string> failures;
  std::string report_path;  // from [output], may be empty
};

// Flat key=value scenario config; see README for the grammar. Throws
// InputError (exit code 2 at the CLI) on malformed input; missed
// expectations are collected, not thrown.
ScenarioResult run_scenario_text(const std::string& config_text, const std::string& base_dir = ".");
ScenarioResult run_scenario_file(const std::string& path);

}  // namespace orlicz
