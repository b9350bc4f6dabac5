// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/config.hpp"

namespace nl {

// Result of one CLI-level experiment: verdict (0 pass, 1 fail), a one-line
// summary, and the report files (CSV tables, JSON verdicts) to be written by
// the caller.
struct RunReport {
  int verdict = 0;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
};

RunReport run_experiment(const Config& config);
RunReport run_experiment_text(const std::string& config_text);

std::string tool_version();

}  // namespace nl
