// SPDX-License-Identifier: Apache-2.0
#include "core/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace nl {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
  // valid for x >= 0.5
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::domain, "gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    fail(ErrorCode::domain, "gamma: pole at non-positive integer " + std::to_string(x));
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double log_gamma(double x) {
  require(x > 0.0, ErrorCode::domain, "log_gamma: requires x > 0");
  if (x < 30.0) return std::log(gamma_fn(x));
  // Stirling with a few correction terms, enough beyond 30
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

double unit_ball_volume(int dim) {
  require(dim >= 1, ErrorCode::invalid_argument, "unit_ball_volume: dim >= 1");
  return std::pow(std::numbers::pi, 0.5 * dim) / gamma_fn(0.5 * dim + 1.0);
}

double unit_sphere_area(int dim) { return dim * unit_ball_volume(dim); }

}  // namespace nl
