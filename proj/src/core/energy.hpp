// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "core/grid_function.hpp"
#include "core/kernels.hpp"
#include "core/shift_energy.hpp"
#include "core/sphere.hpp"

namespace nl {

struct EnergySample {
  double t = 0.0;
  double value = 0.0;
  double err_quad = 0.0;
  double err_grid = 0.0;
};

struct EnergyOptions {
  double rel_tol = 1e-4;
  int panels_per_decade = 8;
  int gl_order = 8;
  int angular_resolution = 0;   // 0 = per-dim default
  double r_min_factor = 0.25;   // inner cutoff r_lo = factor * h
  double region_r0 = 0.0;       // restricted energy over {r0 <= |z| <= r1}
  double region_r1 = std::numeric_limits<double>::infinity();
};

/// F_{t,p}(u) for the kernel family, by radial-angular product quadrature in
/// log radius with an analytic disjoint-support tail completion. Families with
/// box supports are integrated by corner-graded tensor panels instead.
EnergySample bbm_energy(ShiftEnergy& shift, const KernelFamily& family, double t,
                        const EnergyOptions& opt = {});
EnergySample bbm_energy(const GridFunction& u, const KernelFamily& family, double t, double p,
                        const EnergyOptions& opt = {});

/// Same engine with the kernel itself as the shift weight (no |z|^{-p}):
/// int Delta_p(z)^p k_t(z) dz.
EnergySample convolution_energy(ShiftEnergy& shift, const KernelFamily& kernel, double t,
                                const EnergyOptions& opt = {});

// nu = alpha delta_0 + sum_i w_i delta_{z_i}.
struct AtomicPlusDiffuseMeasure {
  double atom = 0.0;
  std::vector<std::pair<Vec, double>> points;
};

/// D_p^mu with mu = theta dH^{N-1}: angular quadrature of the directional
/// seminorms against theta.
double local_energy_weighted(const GridFunction& u, const SphericalDensity& theta, double p);

/// G_p^{mu,nu}: local part plus the diffuse nonlocal sum. The atom at the
/// origin contributes nothing unless include_atom_as_local is set, in which
/// case it adds alpha times the isotropic directional average.
double mixed_energy(const GridFunction& u, const SphericalDensity& theta,
                    const AtomicPlusDiffuseMeasure& nu, double p,
                    bool include_atom_as_local = false);

struct SeminormOptions {
  double rel_tol = 1e-5;
  int angular_resolution = 0;
  double r_min_factor = 0.25;
};

struct SeminormResult {
  double value = 0.0;
  double err = 0.0;
};

/// [u]_{W^{kappa,p}}^p for a shift kernel kappa >= 0; reports a divergence
/// error when the small-|z| decade sums do not decay (u outside W^{kappa,p})
/// or the large-|z| tail fails to converge.
SeminormResult nonlocal_seminorm(ShiftEnergy& shift,
                                 const std::function<double(double)>& kappa_radial,
                                 const SeminormOptions& opt = {});
SeminormResult nonlocal_seminorm(const GridFunction& u,
                                 const std::function<double(double)>& kappa_radial, double p,
                                 const SeminormOptions& opt = {});

}  // namespace nl
