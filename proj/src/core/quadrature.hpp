// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace nl::quad {

using Fn = std::function<double(double)>;

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

/// Gauss-Legendre rule of order n (cached).
const Rule& gauss_legendre(int n);

/// Single Gauss-Legendre panel over [a, b].
double panel(const Fn& f, double a, double b, int order = 16);

struct Result {
  double value = 0.0;
  double abs_err = 0.0;
  bool converged = false;
};

/// Adaptive bisection with GL panels until the global refinement delta drops
/// below rel_tol (plus a tiny absolute floor).
Result adaptive(const Fn& f, double a, double b, double rel_tol = 1e-10, int max_depth = 48);

/// Panels equally spaced in log r on [r0, r1], refined by doubling the panel
/// count until two passes agree to rel_tol.
Result log_panels(const Fn& f, double r0, double r1, double rel_tol = 1e-9,
                  int per_decade = 8, int order = 8);

struct TailResult {
  double value = 0.0;
  double abs_err = 0.0;
  bool converged = false;
  bool divergent = false;
  double reached = 0.0;  // outermost radius integrated
};

/// Integrates f over [r0, infinity) decade by decade. Stops when decade
/// increments fall below rel_tol of the running sum; flags divergence when
/// increments fail to decay by r_cap.
TailResult decades_to_infinity(const Fn& f, double r0, double rel_tol = 1e-10,
                               double r_cap = 1e9, int per_decade = 8, int order = 8);

/// Semi-infinite oscillatory integral: sums GL panels over the sub-intervals
/// [cuts[k], cuts[k+1]] given by the oscillation's sign-change estimates, then
/// accelerates the (eventually alternating) partial sums by repeated
/// averaging. `cut(k)` must be increasing with cut(0) = 0.
double oscillatory(const Fn& f, const std::function<double(int)>& cut, int max_terms = 2000,
                   int order = 16, double abs_floor = 1e-300);

}  // namespace nl::quad
