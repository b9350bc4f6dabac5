// SPDX-License-Identifier: Apache-2.0
#include "core/constants.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/special_functions.hpp"

namespace nl {

double bbm_heat_constant(double p) {
  require(p >= 1.0, ErrorCode::domain, "bbm_heat_constant: requires p >= 1");
  return 2.0 * gamma_fn(p) / gamma_fn(0.5 * p);
}

double frac_tail_constant(int dim, double s) {
  require(dim >= 1, ErrorCode::domain, "frac_tail_constant: requires N >= 1");
  require(s > 0.0 && s < 1.0, ErrorCode::domain, "frac_tail_constant: requires s in (0,1)");
  return s * std::pow(4.0, s) * gamma_fn(0.5 * dim + s) /
         (std::pow(std::numbers::pi, 0.5 * dim) * gamma_fn(1.0 - s));
}

double frac_heat_local_constant(double s, double p) {
  require(s > 0.0 && s < 1.0, ErrorCode::domain, "frac_heat_local_constant: requires s in (0,1)");
  require(p >= 1.0, ErrorCode::domain, "frac_heat_local_constant: requires p >= 1");
  if (2.0 * s <= p)
    fail(ErrorCode::domain,
         "frac_heat_local_constant: requires 2s > p (Gamma pole at 2s = p; the critical "
         "constant is measured, not predicted)");
  // 2s > p and s < 1 force p < 2, so Gamma(1 - p/2) is finite.
  return gamma_fn(1.0 - p / (2.0 * s)) / gamma_fn(1.0 - 0.5 * p) * bbm_heat_constant(p);
}

RegimeLabel regime(double s, double p) {
  require(s > 0.0 && s < 1.0, ErrorCode::domain, "regime: requires s in (0,1)");
  require(p >= 1.0, ErrorCode::domain, "regime: requires p >= 1");
  const double d = 2.0 * s - p;
  if (d > 0.0) return {Regime::supercritical, "supercritical-2s>p"};
  if (d == 0.0) return {Regime::critical, "critical-2s=p"};
  return {Regime::subcritical, "subcritical-2s<p"};
}

double scaling_psi(double s, double p, double t) {
  require(t > 0.0 && t < 1.0, ErrorCode::domain, "scaling_psi: requires t in (0,1)");
  switch (regime(s, p).regime) {
    case Regime::supercritical: return std::pow(t, p / (2.0 * s));
    case Regime::critical: return t * std::abs(std::log(t));
    case Regime::subcritical: return t;
  }
  fail(ErrorCode::internal, "unreachable");
}

}  // namespace nl
