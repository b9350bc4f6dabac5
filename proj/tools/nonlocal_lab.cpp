// SPDX-License-Identifier: Apache-2.0
//
// nonlocal-lab: command-line front end over the shared library. Flags are
// folded into the experiment config (flags win over --config file entries);
// the library runs the experiment and hands back the report files.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "nonlocal.h"

namespace {

struct CommonState {
  std::string config_path;
  std::string out_dir = ".";
  std::map<std::string, std::string> overrides;
};

int status_exit_code(nl_status status) {
  switch (status) {
    case NL_OK: return 0;
    case NL_ERR_INVALID_ARGUMENT:
    case NL_ERR_DOMAIN:
    case NL_ERR_CONFIG:
    case NL_ERR_IO: return 2;
    default: return 1;
  }
}

std::string compose_config(const CommonState& state, const std::string& command) {
  std::ostringstream out;
  if (!state.config_path.empty()) {
    std::ifstream in(state.config_path);
    if (!in.good()) {
      std::cerr << "error: cannot open config file " << state.config_path << "\n";
      std::exit(2);
    }
    out << in.rdbuf() << "\n";
    out << "[]\n";  // leave whatever section the file ended in
  }
  out << "command = " << command << "\n";
  for (const auto& [key, value] : state.overrides) out << key << " = " << value << "\n";
  return out.str();
}

int run_and_emit(const CommonState& state, const std::string& command, bool print_summary) {
  const std::string config = compose_config(state, command);
  nl_report* report = nullptr;
  const nl_status status = nl_run(config.c_str(), &report);
  if (status != NL_OK) {
    std::cerr << "error: " << nl_last_error() << "\n";
    return status_exit_code(status);
  }
  std::filesystem::create_directories(state.out_dir);
  for (size_t i = 0; i < nl_report_file_count(report); ++i) {
    const std::filesystem::path path =
        std::filesystem::path(state.out_dir) / nl_report_file_name(report, i);
    std::ofstream out(path, std::ios::binary);
    out << nl_report_file_content(report, i);
    if (!out.good()) {
      std::cerr << "error: cannot write " << path << "\n";
      nl_report_free(report);
      return 2;
    }
  }
  if (print_summary) std::cout << nl_report_summary(report) << "\n";
  const int verdict = nl_report_verdict(report);
  nl_report_free(report);
  return verdict == 0 ? 0 : 1;
}

void add_family_flags(CLI::App* cmd, CommonState& state) {
  static std::map<std::string, std::string> keys = {
      {"--family", "family.id"}, {"--N", "family.dim"},      {"--p", "family.p"},
      {"--s", "family.s"},       {"--m", "family.m"},        {"--variant", "family.variant"},
  };
  for (const auto& [flag, key] : keys) {
    const std::string k = key;
    cmd->add_option_function<std::string>(
        flag, [&state, k](const std::string& v) { state.overrides[k] = v; });
  }
}

void add_function_flags(CLI::App* cmd, CommonState& state) {
  static std::map<std::string, std::string> keys = {
      {"--function", "function.kind"},   {"--dim", "function.dim"},
      {"--width", "function.width"},     {"--center", "function.center"},
      {"--flo", "function.lo"},          {"--fhi", "function.hi"},
      {"--radius", "function.radius"},   {"--halfwidth", "function.halfwidth"},
      {"--grid-h", "function.h"},        {"--pad", "function.pad"},
  };
  for (const auto& [flag, key] : keys) {
    const std::string k = key;
    cmd->add_option_function<std::string>(
        flag, [&state, k](const std::string& v) { state.overrides[k] = v; });
  }
}

void add_run_option(CLI::App* cmd, CommonState& state, const std::string& flag,
                    const std::string& key) {
  cmd->add_option_function<std::string>(
      flag, [&state, key](const std::string& v) { state.overrides[key] = v; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for nonlocal energies and heat-content asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();  // --config/--out may follow the subcommand
  app.set_version_flag("--version", std::string(nl_version()));

  CommonState state;
  app.add_option("--config", state.config_path, "experiment config file (flags override it)");
  app.add_option("--out", state.out_dir, "output directory for report files");

  // constants: prints the value and writes constants.json
  auto* constants = app.add_subcommand("constants", "closed-form limit constants");
  bool flag_bbm_heat = false, flag_frac_tail = false, flag_frac_local = false,
       flag_regime = false;
  constants->add_option_function<std::string>(
      "--gamma", [&](const std::string& v) {
        state.overrides["run.which"] = "gamma";
        state.overrides["run.x"] = v;
      },
      "Gamma(x)");
  constants->add_flag("--bbm-heat", flag_bbm_heat, "2 Gamma(p)/Gamma(p/2)");
  constants->add_flag("--frac-tail", flag_frac_tail, "kernel tail coefficient zeta_{N,s}");
  constants->add_flag("--frac-local", flag_frac_local, "supercritical constant (2s > p)");
  constants->add_flag("--regime", flag_regime, "scaling regime label for (s, p)");
  constants->add_option_function<std::string>(
      "--psi-at", [&](const std::string& v) {
        state.overrides["run.which"] = "psi";
        state.overrides["run.x"] = v;
      },
      "psi_{s,p}(t) at the given t");
  add_family_flags(constants, state);
  constants->callback([&] {
    if (flag_bbm_heat) state.overrides["run.which"] = "bbm-heat";
    if (flag_frac_tail) state.overrides["run.which"] = "frac-tail";
    if (flag_frac_local) state.overrides["run.which"] = "frac-local";
    if (flag_regime) state.overrides["run.which"] = "regime";
  });

  auto* energy = app.add_subcommand("energy", "F_{t,p} scan over a t grid (CSV)");
  add_family_flags(energy, state);
  add_function_flags(energy, state);
  add_run_option(energy, state, "--t-list", "run.t");
  add_run_option(energy, state, "--region", "run.region");
  add_run_option(energy, state, "--tol", "run.tol");
  add_run_option(energy, state, "--grid-check", "run.grid_check");
  add_run_option(energy, state, "--prefix", "output.prefix");

  auto* diagnose = app.add_subcommand("diagnose", "sharp-condition verdicts (JSON)");
  add_family_flags(diagnose, state);
  add_run_option(diagnose, state, "--check", "run.check");
  add_run_option(diagnose, state, "--prefix", "output.prefix");

  auto* bbm = app.add_subcommand("bbm-limit", "extrapolated limit vs prediction");
  add_family_flags(bbm, state);
  add_function_flags(bbm, state);
  add_run_option(bbm, state, "--t-list", "run.t");
  add_run_option(bbm, state, "--model", "run.model");
  add_run_option(bbm, state, "--rel-tol", "run.rel_tol");
  add_run_option(bbm, state, "--tol", "run.tol");
  add_run_option(bbm, state, "--predicted", "run.predicted");
  add_run_option(bbm, state, "--prefix", "output.prefix");

  auto* frac = app.add_subcommand("frac-limit", "fractional heat-content limit by regime");
  add_function_flags(frac, state);
  add_run_option(frac, state, "--s", "run.s");
  add_run_option(frac, state, "--p", "run.p");
  add_run_option(frac, state, "--t-list", "run.t");
  add_run_option(frac, state, "--rel-tol", "run.rel_tol");
  add_run_option(frac, state, "--prefix", "output.prefix");

  auto* hc = app.add_subcommand("heat-content", "Q_E(t) curve and perimeter fit");
  add_run_option(hc, state, "--set", "set.kind");
  add_run_option(hc, state, "--a", "set.a");
  add_run_option(hc, state, "--b", "set.b");
  add_run_option(hc, state, "--lo", "set.lo");
  add_run_option(hc, state, "--hi", "set.hi");
  add_run_option(hc, state, "--center", "set.center");
  add_run_option(hc, state, "--radius", "set.radius");
  add_run_option(hc, state, "--pgm", "set.pgm");
  add_run_option(hc, state, "--resolution", "set.resolution");
  add_run_option(hc, state, "--spacing", "set.spacing");
  add_run_option(hc, state, "--t-list", "run.t");
  add_run_option(hc, state, "--s", "run.s");
  add_run_option(hc, state, "--fit", "run.fit");
  add_run_option(hc, state, "--rel-tol", "run.rel_tol");
  add_run_option(hc, state, "--prefix", "output.prefix");

  auto* probe = app.add_subcommand("probe-compactness", "mollifier-bound probes (JSON)");
  add_family_flags(probe, state);
  add_function_flags(probe, state);
  add_run_option(probe, state, "--check", "run.check");
  add_run_option(probe, state, "--profile", "run.profile");
  add_run_option(probe, state, "--pexp", "run.p");
  add_run_option(probe, state, "--t-list", "run.t");
  add_run_option(probe, state, "--eps", "run.eps");
  add_run_option(probe, state, "--prefix", "output.prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help / --version
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return run_and_emit(state, command, true);
}
