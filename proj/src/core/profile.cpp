// SPDX-License-Identifier: Apache-2.0
#include "core/profile.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/frac_heat_table.hpp"
#include "core/special_functions.hpp"

namespace nl {

namespace {

Profile radial_profile(int dim, std::string id, std::function<double(double)> radial,
                       double support_radius = std::numeric_limits<double>::infinity()) {
  Profile p;
  p.dim = dim;
  p.id = std::move(id);
  p.is_radial = true;
  p.radial = std::move(radial);
  p.point = [dim, f = p.radial](const Vec& x) { return f(norm(x, dim)); };
  p.support_radius = support_radius;
  return p;
}

}  // namespace

Profile gaussian_profile(int dim) {
  const double c = std::pow(4.0 * std::numbers::pi, -0.5 * dim);
  return radial_profile(dim, "gaussian",
                        [c](double r) { return c * std::exp(-0.25 * r * r); });
}

Profile ball_indicator_profile(int dim) {
  return radial_profile(dim, "ball-indicator", [](double r) { return r <= 1.0 ? 1.0 : 0.0; },
                        1.0);
}

Profile stretched_gaussian_profile(double factor) {
  require(factor > 0.0, ErrorCode::invalid_argument, "stretched gaussian: factor > 0");
  Profile p;
  p.dim = 2;
  p.id = "stretched-gaussian";
  p.is_radial = false;
  const double c = 1.0 / (4.0 * std::numbers::pi * factor);
  p.point = [c, factor](const Vec& x) {
    const double x1 = x[0] / factor;
    return c * std::exp(-0.25 * (x1 * x1 + x[1] * x[1]));
  };
  return p;
}

Profile power_tail_profile(int dim, double q) {
  require(q > 0.0, ErrorCode::invalid_argument, "power tail: q > 0");
  // unit mass: N omega_N int r^{N-1}(1+r)^{-N-q} dr = N omega_N B(N, q)
  const double beta = gamma_fn(static_cast<double>(dim)) * gamma_fn(q) / gamma_fn(dim + q);
  const double c = 1.0 / (unit_sphere_area(dim) * beta);
  const double expo = dim + q;
  return radial_profile(dim, "power-tail",
                        [c, expo](double r) { return c * std::pow(1.0 + r, -expo); });
}

Profile frac_heat_profile(int dim, double s) {
  if (s == 0.5) {
    const double c = gamma_fn(0.5 * (dim + 1)) / std::pow(std::numbers::pi, 0.5 * (dim + 1));
    return radial_profile(dim, "frac-heat", [c, dim](double r) {
      return c / std::pow(1.0 + r * r, 0.5 * (dim + 1));
    });
  }
  auto table = shared_frac_heat_table(dim, s);
  return radial_profile(dim, "frac-heat",
                        [table](double r) { return table->value_t1(r); });
}

}  // namespace nl
