// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <string>

#include "nonlocal.h"

TEST_CASE("constants through the shared library surface") {
  double v = 0.0;
  CHECK(nl_gamma(0.5, &v) == NL_OK);
  CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));

  CHECK(nl_bbm_heat_constant(2.0, &v) == NL_OK);
  CHECK(v == doctest::Approx(2.0));

  CHECK(nl_frac_tail_constant(1, 0.5, &v) == NL_OK);
  CHECK(v == doctest::Approx(1.0 / std::numbers::pi));

  CHECK(nl_frac_heat_local_constant(0.75, 1.0, &v) == NL_OK);
  CHECK(v == doctest::Approx(2.0 * std::tgamma(1.0 / 3.0) / std::numbers::pi).epsilon(1e-12));

  // the pole is a domain error with a message
  CHECK(nl_frac_heat_local_constant(0.5, 1.0, &v) == NL_ERR_DOMAIN);
  CHECK(std::strlen(nl_last_error()) > 0);

  int regime = -1;
  CHECK(nl_regime(0.75, 1.0, &regime) == NL_OK);
  CHECK(regime == 0);
  CHECK(nl_regime(0.5, 1.0, &regime) == NL_OK);
  CHECK(regime == 1);
  CHECK(nl_regime(0.25, 1.0, &regime) == NL_OK);
  CHECK(regime == 2);

  CHECK(nl_scaling_psi(0.5, 1.0, 0.125, &v) == NL_OK);
  CHECK(v == doctest::Approx(0.125 * std::log(8.0)));

  CHECK(nl_gamma(0.5, nullptr) == NL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("kernel handles") {
  nl_kernel* heat = nullptr;
  REQUIRE(nl_kernel_heat(1, &heat) == NL_OK);
  double v = 0.0;
  const double origin[1] = {0.0};
  CHECK(nl_kernel_eval(heat, 1.0, origin, &v) == NL_OK);
  CHECK(v == doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi)));
  nl_kernel_free(heat);

  nl_kernel* named = nullptr;
  REQUIRE(nl_kernel_named("frac-bbm", 1, 1.0, 0.5, 1, 1, &named) == NL_OK);
  const double unit[1] = {1.0};
  CHECK(nl_kernel_eval(named, 0.1, unit, &v) == NL_OK);
  CHECK(v == doctest::Approx(0.1));
  nl_kernel_free(named);

  CHECK(nl_kernel_frac_heat(1, 1.5, &named) == NL_ERR_INVALID_ARGUMENT);
  CHECK(nl_kernel_named("no-such-family", 1, 1.0, 0.5, 1, 1, &named) == NL_ERR_CONFIG);
}

TEST_CASE("grid function handles and energies") {
  nl_function* u = nullptr;
  const double center[1] = {0.0};
  REQUIRE(nl_function_gaussian(1, center, 1.0, 0.01, &u) == NL_OK);

  double norm2 = 0.0;
  CHECK(nl_function_lp_norm(u, 2.0, &norm2) == NL_OK);
  CHECK(norm2 * norm2 == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-6));

  double grad = 0.0;
  CHECK(nl_function_gradient_norm_pp(u, 2.0, &grad) == NL_OK);
  CHECK(grad == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-3));

  const double z[1] = {0.0};
  double diff = -1.0;
  CHECK(nl_function_shift_diff_norm(u, z, 2.0, &diff) == NL_OK);
  CHECK(diff == 0.0);

  // t^{-1} * heat-content energy approaches 2 ||u'||^2 already at small t
  double e1 = 0.0;
  CHECK(nl_heat_content_energy(u, 1e-3, 2.0, &e1) == NL_OK);
  CHECK(e1 / 1e-3 == doctest::Approx(2.0 * grad).epsilon(0.05));

  nl_kernel* fam = nullptr;
  REQUIRE(nl_kernel_named("heat-bbm", 1, 2.0, 0.5, 1, 1, &fam) == NL_OK);
  double value = 0.0, err = 0.0;
  CHECK(nl_bbm_energy(u, fam, 1e-3, 2.0, 1e-5, &value, &err) == NL_OK);
  CHECK(value == doctest::Approx(e1 / 1e-3).epsilon(1e-6));
  nl_kernel_free(fam);
  nl_function_free(u);
}

TEST_CASE("limit extraction through the C surface") {
  double t[6], y[6];
  for (int k = 0; k < 6; ++k) {
    t[k] = std::pow(2.0, -4 - k);
    y[k] = 5.0 + 2.0 * t[k];
  }
  double a0 = 0.0, bar = -1.0;
  CHECK(nl_extract_limit(t, y, 6, "richardson", &a0, &bar) == NL_OK);
  CHECK(a0 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(nl_extract_limit(t, y, 6, "no-such-model", &a0, &bar) == NL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("experiment runner and report files") {
  nl_report* report = nullptr;
  const char* config =
      "command = constants\n"
      "[run]\n"
      "which = bbm-heat\n"
      "[family]\n"
      "p = 2\n";
  REQUIRE(nl_run(config, &report) == NL_OK);
  CHECK(nl_report_verdict(report) == 0);
  CHECK(std::string(nl_report_summary(report)) == "2");
  REQUIRE(nl_report_file_count(report) == 1);
  CHECK(std::string(nl_report_file_name(report, 0)) == "constants.json");
  const std::string content = nl_report_file_content(report, 0);
  CHECK(content.find("\"value\": 2.0") != std::string::npos);
  nl_report_free(report);

  // unknown keys are rejected before any computation
  CHECK(nl_run("command = constants\nbogus = 1\n", &report) == NL_ERR_CONFIG);
  CHECK(nl_run("command = no-such\n", &report) == NL_ERR_CONFIG);
}

TEST_CASE("identical config means byte-identical CSV, independent of workers") {
  const char* config =
      "command = energy\n"
      "[family]\n"
      "id = heat-bbm\n"
      "dim = 1\n"
      "p = 2\n"
      "[function]\n"
      "kind = gaussian\n"
      "dim = 1\n"
      "h = 0.02\n"
      "[run]\n"
      "t = 2^-4..2^-7\n"
      "grid_check = false\n";
  std::string first;
  for (const char* workers : {"1", "4"}) {
    setenv("NONLOC_THREADS", workers, 1);
    nl_report* report = nullptr;
    REQUIRE(nl_run(config, &report) == NL_OK);
    REQUIRE(nl_report_file_count(report) == 1);
    const std::string csv = nl_report_file_content(report, 0);
    CHECK(csv.rfind("t,value,err_quad,err_grid", 0) == 0);
    if (first.empty())
      first = csv;
    else
      CHECK(first == csv);
    nl_report_free(report);
  }
  unsetenv("NONLOC_THREADS");
}
