// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace nl {

// Flat "section.key = value" view of the experiment configuration. Keys are
// validated against the per-command schema; unknown keys are rejected.
class Config {
public:
  static Config parse(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::string echo() const;  // re-serialized config text

  void validate() const;  // command known, keys in schema

private:
  std::map<std::string, std::string> entries_;
};

/// "2^-4..2^-9" (geometric halving) or a comma list; strictly decreasing.
std::vector<double> parse_t_list(const std::string& text);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace nl
