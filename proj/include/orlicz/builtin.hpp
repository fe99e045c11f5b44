#pragma once

#include <string>
#include <vector>

#include "orlicz/report.hpp"

namespace orlicz::builtin {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
  Json data;
};

// Acceptance criteria 1..10; each runs self-contained with pinned
// tolerances and reports what it measured.
CriterionResult run_criterion(int index);

int criterion_count();

// Built-in scenario configs runnable as `orlicz-kit run <name>`.
std::vector<std::string> scenario_names();
bool is_scenario_name(const std::string& name);
std::string scenario_config(const std::string& name);

// Shared desk-scale corpus.
std::vector<std::pair<std::string, ScalarField>> corpus_fields();  // 20 finite fields
ScalarField step_field(const BoxGrid& grid);                       // 0 / 1 / 2 by sign of x_1
ScalarField inv_abs_field(const BoxGrid& grid, int axis);          // |x_k|^{-1}, +inf on the axis line
ScalarField gate_strip_field(const BoxGrid& grid, int axis, double amp, double width);

}  // namespace orlicz::builtin
