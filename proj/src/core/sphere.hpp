// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

namespace nl {

using Vec = std::array<double, 3>;  // points in R^N, N <= 3, trailing zeros

double norm(const Vec& v, int dim);
double dot(const Vec& a, const Vec& b, int dim);

// Quadrature grid on S^{N-1}: weights sum to the sphere area N*omega_N.
// N=1 is the two-point sphere, N=2 the uniform trapezoid on the circle,
// N=3 a Gauss-Legendre x trapezoid product grid.
struct AngularGrid {
  int dim = 1;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  size_t size() const { return nodes.size(); }
  double total_weight() const;
};

AngularGrid make_angular_grid(int dim);                 // default resolutions (2, 64, 32x64)
AngularGrid make_angular_grid(int dim, int resolution); // N=2: nodes on circle; N=3: polar count

// Density on the sphere sampled on an angular grid; integrals against it use
// the grid weights.
struct SphericalDensity {
  AngularGrid grid;
  std::vector<double> values;

  double total_mass() const;
  SphericalDensity& scale(double c);
};

SphericalDensity uniform_density(int dim, double total_mass, int resolution = 0);

// Two antipodal atoms of mass 1/2 placed on the grid nodes closest to +/-axis.
SphericalDensity axis_atoms_density(int dim, int axis, int resolution = 0);

}  // namespace nl
