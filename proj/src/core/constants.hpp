// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace nl {

// Small-time scaling regime of the fractional heat energy, decided by the
// sign of 2s - p.
enum class Regime { supercritical, critical, subcritical };

struct RegimeLabel {
  Regime regime;
  std::string tag;  // "supercritical-2s>p" | "critical-2s=p" | "subcritical-2s<p"
};

/// 2 Gamma(p) / Gamma(p/2), the local heat-energy constant (p >= 1).
double bbm_heat_constant(double p);

/// zeta_{N,s} = s 4^s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s)): coefficient of the
/// |x|^{-N-2s} kernel tail. Requires N >= 1 and s in (0,1).
double frac_tail_constant(int dim, double s);

/// [Gamma(1-p/(2s)) / Gamma(1-p/2)] * 2 Gamma(p)/Gamma(p/2).
/// Only defined for 1 <= p < 2s; at 2s = p the first factor hits the
/// Gamma pole and no closed form is provided (the critical constant is
/// measured, not predicted).
double frac_heat_local_constant(double s, double p);

RegimeLabel regime(double s, double p);

/// The normalizer psi_{s,p}(t): t^{p/(2s)}, t|log t| or t by regime.
double scaling_psi(double s, double p, double t);

}  // namespace nl
