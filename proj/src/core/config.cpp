// SPDX-License-Identifier: Apache-2.0
#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace nl {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys = {
      "command",
      // kernel family block
      "family.id", "family.dim", "family.p", "family.s", "family.m", "family.variant",
      // test function block
      "function.kind", "function.dim", "function.center", "function.width", "function.lo",
      "function.hi", "function.radius", "function.halfwidth", "function.h", "function.pad",
      // raster set block (heat-content)
      "set.kind", "set.a", "set.b", "set.lo", "set.hi", "set.center", "set.radius", "set.pgm",
      "set.resolution", "set.spacing",
      // run parameters
      "run.t", "run.model", "run.rel_tol", "run.tol", "run.check", "run.region", "run.eps",
      "run.profile", "run.s", "run.p", "run.fit", "run.grid_check", "run.which", "run.x",
      "run.n", "run.alpha", "run.predicted",
      // output
      "output.prefix",
  };
  return keys;
}

const std::set<std::string>& known_commands() {
  static const std::set<std::string> cmds = {"constants",    "energy",       "diagnose",
                                             "bbm-limit",    "frac-limit",   "heat-content",
                                             "probe-compactness"};
  return cmds;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', ErrorCode::config,
              "config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::config,
            "config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), ErrorCode::config,
            "config: empty key at line " + std::to_string(lineno));
    // dotted keys are already fully qualified (flag overrides)
    const bool qualified = key.find('.') != std::string::npos || section.empty();
    cfg.set(qualified ? key : section + "." + key, value);
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  require(it != entries_.end(), ErrorCode::config, "config: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::number(const std::string& key) const {
  const std::string v = get(key);
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    require(pos == v.size(), ErrorCode::config, "config: bad number for '" + key + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(ErrorCode::config, "config: bad number for '" + key + "': " + v);
  }
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Config::integer_or(const std::string& key, int fallback) const {
  return has(key) ? static_cast<int>(std::llround(number(key))) : fallback;
}

std::string Config::echo() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  return out.str();
}

void Config::validate() const {
  const std::string cmd = get("command");
  require(known_commands().count(cmd) > 0, ErrorCode::config, "config: unknown command " + cmd);
  for (const auto& [k, v] : entries_) {
    (void)v;
    require(allowed_keys().count(k) > 0, ErrorCode::config, "config: unknown key '" + k + "'");
  }
}

std::vector<double> parse_t_list(const std::string& text) {
  // geometric range "2^-a..2^-b" or an explicit comma list
  const auto range = text.find("..");
  std::vector<double> out;
  if (range != std::string::npos && text.rfind("2^-", 0) == 0) {
    const int a = std::stoi(text.substr(3, range - 3));
    const auto second = text.substr(range + 2);
    require(second.rfind("2^-", 0) == 0, ErrorCode::config,
            "t list: range endpoints must both be 2^-k");
    const int b = std::stoi(second.substr(3));
    require(b > a, ErrorCode::config, "t list: range must decrease");
    for (int k = a; k <= b; ++k) out.push_back(std::pow(2.0, -k));
    return out;
  }
  out = parse_number_list(text);
  require(std::is_sorted(out.rbegin(), out.rend()), ErrorCode::config,
          "t list: must be strictly decreasing");
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  require(!out.empty(), ErrorCode::config, "expected a non-empty number list");
  return out;
}

}  // namespace nl
