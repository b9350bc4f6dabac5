// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/constants.hpp"
#include "core/error.hpp"
#include "core/special_functions.hpp"

using namespace nl;

TEST_CASE("gamma at integers and half-integers") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma functional equation on a grid") {
  for (double x = 0.1; x <= 20.0; x += 0.1) {
    const double lhs = gamma_fn(x + 1.0);
    const double rhs = x * gamma_fn(x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("gamma against the library implementation on [0.05, 50]") {
  // std::tgamma is an independent implementation of the same function
  for (double x = 0.05; x <= 50.0; x *= 1.07) {
    const double ref = std::tgamma(x);
    CHECK(std::abs(gamma_fn(x) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("gamma pole errors") {
  CHECK_THROWS_AS(gamma_fn(0.0), Error);
  CHECK_THROWS_AS(gamma_fn(-1.0), Error);
  CHECK_THROWS_AS(gamma_fn(-7.0), Error);
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("heat energy constant") {
  CHECK(bbm_heat_constant(2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(bbm_heat_constant(1.0) ==
        doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(bbm_heat_constant(4.0) == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("kernel tail coefficient") {
  CHECK(frac_tail_constant(1, 0.5) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(frac_tail_constant(2, 0.5) ==
        doctest::Approx(gamma_fn(1.5) / std::pow(std::numbers::pi, 1.5)).epsilon(1e-13));
  // at s = 1/2 the coefficient collapses to Gamma((N+1)/2) / pi^{(N+1)/2}
  for (int dim : {1, 2, 3}) {
    const double expect =
        gamma_fn(0.5 * (dim + 1)) / std::pow(std::numbers::pi, 0.5 * (dim + 1));
    CHECK(std::abs(frac_tail_constant(dim, 0.5) - expect) <= 1e-12 * expect);
  }
  // direct formula at s = 1/4 (the Gamma factors cancel)
  const double expect = 0.25 * std::pow(4.0, 0.25) / std::sqrt(std::numbers::pi);
  CHECK(frac_tail_constant(1, 0.25) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("supercritical local constant") {
  // algebraic simplification at s = 0.6, p = 1: Gamma(1/6) * 2 / pi
  CHECK(frac_heat_local_constant(0.6, 1.0) ==
        doctest::Approx(gamma_fn(1.0 / 6.0) * 2.0 / std::numbers::pi).epsilon(1e-13));
  // s -> 1 reduces the Gamma ratio to 1
  CHECK(frac_heat_local_constant(0.999999, 1.0) ==
        doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-4));
  CHECK_THROWS_AS(frac_heat_local_constant(0.5, 1.0), Error);   // pole at 2s = p
  CHECK_THROWS_AS(frac_heat_local_constant(0.25, 1.0), Error);  // 2s < p
}

TEST_CASE("regime split and psi") {
  CHECK(regime(0.75, 1.0).regime == Regime::supercritical);
  CHECK(regime(0.75, 1.0).tag == "supercritical-2s>p");
  CHECK(scaling_psi(0.75, 1.0, 0.125) == doctest::Approx(std::pow(0.125, 2.0 / 3.0)));
  CHECK(regime(0.5, 1.0).regime == Regime::critical);
  CHECK(scaling_psi(0.5, 1.0, 0.125) == doctest::Approx(0.125 * std::log(8.0)));
  CHECK(regime(0.25, 1.0).regime == Regime::subcritical);
  CHECK(scaling_psi(0.25, 1.0, 0.125) == doctest::Approx(0.125));
}

TEST_CASE("sphere areas") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}
