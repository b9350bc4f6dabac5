// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "core/grid_function.hpp"

namespace nl {

// Evaluator of z |-> ||u(.+z) - u||_{L^p}^p with the route picked per (u, p):
//   * exact set geometry for indicators at p = 1,
//   * an FFT autocorrelation table for p = 2 (interpolating the bounded
//     quotient d(z)/|z|^2 so the small-z regime stays accurate),
//   * direct resampling otherwise (memoized).
class ShiftEnergy {
public:
  ShiftEnergy(const GridFunction& u, double p);

  double p() const { return p_; }
  const GridFunction& function() const { return u_; }

  double pp(const Vec& z) const;  // Delta_p(z)^p
  double two_lp_pp() const { return two_lp_pp_; }

  /// Radius beyond which every |z| >= R has disjoint supports.
  double disjoint_radius() const { return disjoint_radius_; }

  /// ||Du||_{L^p}^p, the cap for Delta_p^p / |z|^p near the origin.
  double grad_pp() const { return grad_pp_; }

  /// Geometry-backed differences carry no grid-resolution floor.
  bool resolution_free() const;

  const char* method_name() const;

private:
  enum class Method { geometry, autocorr, direct };

  const GridFunction& u_;
  double p_;
  Method method_;
  double two_lp_pp_ = 0.0;
  double disjoint_radius_ = 0.0;
  double grad_pp_ = 0.0;

  // autocorrelation table of g(z) = Delta_2(z)^2 / |z|^2 on the shift lattice
  std::array<int, 3> pad_shape_{1, 1, 1};
  std::vector<double> g_table_;
  double table_at(int m0, int m1, int m2) const;
  double autocorr_pp(const Vec& z) const;

  mutable std::unordered_map<size_t, double> cache_;  // direct-route memo
};

}  // namespace nl
