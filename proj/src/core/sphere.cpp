// SPDX-License-Identifier: Apache-2.0
#include "core/sphere.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace nl {

double norm(const Vec& v, int dim) {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) acc += v[i] * v[i];
  return std::sqrt(acc);
}

double dot(const Vec& a, const Vec& b, int dim) {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) acc += a[i] * b[i];
  return acc;
}

double AngularGrid::total_weight() const {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return acc;
}

AngularGrid make_angular_grid(int dim) {
  switch (dim) {
    case 1: return make_angular_grid(1, 0);
    case 2: return make_angular_grid(2, 64);
    case 3: return make_angular_grid(3, 32);
    default: fail(ErrorCode::invalid_argument, "angular grid: dim must be 1, 2 or 3");
  }
}

AngularGrid make_angular_grid(int dim, int resolution) {
  AngularGrid g;
  g.dim = dim;
  if (dim == 1) {
    g.nodes = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
    g.weights = {1.0, 1.0};  // counting measure on S^0
    return g;
  }
  if (dim == 2) {
    const int m = resolution > 0 ? resolution : 64;
    const double dphi = 2.0 * std::numbers::pi / m;
    g.nodes.reserve(m);
    g.weights.assign(m, dphi);
    for (int j = 0; j < m; ++j) {
      const double phi = j * dphi;
      g.nodes.push_back({std::cos(phi), std::sin(phi), 0.0});
    }
    return g;
  }
  if (dim == 3) {
    const int n_theta = resolution > 0 ? resolution : 32;
    const int n_phi = 2 * n_theta;
    const auto& rule = quad::gauss_legendre(n_theta);  // nodes in cos(theta)
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    g.nodes.reserve(static_cast<size_t>(n_theta) * n_phi);
    g.weights.reserve(g.nodes.capacity());
    for (int i = 0; i < n_theta; ++i) {
      const double ct = rule.x[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < n_phi; ++j) {
        const double phi = j * dphi;
        g.nodes.push_back({st * std::cos(phi), st * std::sin(phi), ct});
        g.weights.push_back(rule.w[i] * dphi);
      }
    }
    return g;
  }
  fail(ErrorCode::invalid_argument, "angular grid: dim must be 1, 2 or 3");
}

double SphericalDensity::total_mass() const {
  double acc = 0.0;
  for (size_t j = 0; j < values.size(); ++j) acc += grid.weights[j] * values[j];
  return acc;
}

SphericalDensity& SphericalDensity::scale(double c) {
  for (double& v : values) v *= c;
  return *this;
}

SphericalDensity uniform_density(int dim, double total_mass, int resolution) {
  SphericalDensity d;
  d.grid = resolution > 0 ? make_angular_grid(dim, resolution) : make_angular_grid(dim);
  d.values.assign(d.grid.size(), total_mass / d.grid.total_weight());
  return d;
}

SphericalDensity axis_atoms_density(int dim, int axis, int resolution) {
  require(axis >= 0 && axis < dim, ErrorCode::invalid_argument, "axis_atoms_density: bad axis");
  SphericalDensity d;
  d.grid = resolution > 0 ? make_angular_grid(dim, resolution) : make_angular_grid(dim);
  d.values.assign(d.grid.size(), 0.0);
  Vec plus{0.0, 0.0, 0.0};
  plus[axis] = 1.0;
  for (int sign : {+1, -1}) {
    size_t best = 0;
    double best_dot = -2.0;
    for (size_t j = 0; j < d.grid.size(); ++j) {
      const double c = sign * dot(d.grid.nodes[j], plus, dim);
      if (c > best_dot) {
        best_dot = c;
        best = j;
      }
    }
    d.values[best] += 0.5 / d.grid.weights[best];
  }
  return d;
}

}  // namespace nl
