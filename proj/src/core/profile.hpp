// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "core/sphere.hpp"

namespace nl {

// A fixed kernel profile K : R^N -> [0, inf), the building block of rescaled
// families and of the sphere-density moments.
struct Profile {
  int dim = 1;
  std::string id;
  bool is_radial = false;
  std::function<double(const Vec&)> point;
  std::function<double(double)> radial;  // set when is_radial
  double support_radius = std::numeric_limits<double>::infinity();

  double operator()(const Vec& x) const { return point(x); }
};

/// Unit-mass Gaussian exp(-|x|^2/4)/(4 pi)^{N/2}.
Profile gaussian_profile(int dim);

/// Indicator of the unit ball.
Profile ball_indicator_profile(int dim);

/// Gaussian stretched by `factor` along the first axis (2D), unit mass.
Profile stretched_gaussian_profile(double factor);

/// c / (1 + |x|)^{N + q}, normalized to unit mass.
Profile power_tail_profile(int dim, double q);

/// Fractional heat kernel at unit time as a profile (tabulated for general s).
Profile frac_heat_profile(int dim, double s);

}  // namespace nl
