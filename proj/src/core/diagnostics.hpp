// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "core/kernels.hpp"
#include "core/sphere.hpp"

namespace nl {

enum class Verdict { satisfied, violated, inconclusive };

std::string to_string(Verdict v);

struct ConditionEntry {
  double R = 0.0;
  double t = 0.0;
  double value = 0.0;  // +inf marks quadrature divergence
};

// Per-(R,t) table of a tested quantity plus the finite-t estimate of its
// limsup. A limsup over t -> 0+ cannot be certified from finitely many t; the
// estimate takes the max over the smallest t values and flags rising trends.
struct ConditionReport {
  std::string condition;
  std::vector<ConditionEntry> table;
  std::vector<double> R_grid;
  std::vector<double> limsup_per_R;
  double sup_estimate = 0.0;
  bool increasing_trend = false;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

struct DiagnosticsOptions {
  std::vector<double> t_grid;   // default 2^-k, k = 2..10
  std::vector<double> R_grid;   // default 11 log-spaced in [1e-2, 1e3]
  std::vector<double> deltas;   // default {0.5, 0.25, 0.1, 0.05}
  int angular_resolution = 0;
  double trend_tolerance = 0.05;  // inconclusive above this relative rise
};

DiagnosticsOptions default_diagnostics_options();

/// sup_R limsup_t R^p int rho_t(z) / (R^p + |z|^p) dz.
ConditionReport condition_i(const KernelFamily& family, double p,
                            const DiagnosticsOptions& opt = default_diagnostics_options());

// The equivalent split conditions: bounded mass on balls, R^p-weighted tail,
// tail vanishing for large R, and the (1 ^ |z|^-p) form.
struct SplitReport {
  ConditionReport mass_bounded;       // sup_R limsup_t int_{B_R} rho_t
  ConditionReport weighted_tail;      // sup_R limsup_t R^p int_{B_R^c} rho_t/|z|^p
  ConditionReport tail_vanishing;     // limsup_t int_{B_R^c} rho_t/|z|^p -> 0 as R grows
  ConditionReport one_wedge;          // limsup_t int (1 ^ |z|^-p) rho_t
  ConditionReport one_wedge_tail;     // its tail, vanishing for large R
  Verdict combined = Verdict::inconclusive;
};

SplitReport condition_split(const KernelFamily& family, double p,
                            const DiagnosticsOptions& opt = default_diagnostics_options());

struct ConcentrationReport {
  std::vector<double> t_grid;
  std::vector<double> deltas;
  std::vector<std::vector<double>> inner_mass;  // [delta][t]
  std::vector<std::vector<double>> outer_mass;  // mass in B_Rmax \ B_delta
  double atom_estimate = 0.0;
  double atom_uncertainty = 0.0;
  bool concentrated = false;
  std::string note;
};

/// Weak-star concentration of nu_t = rho_t L^N onto an atom at the origin.
ConcentrationReport nu_concentration(const KernelFamily& family,
                                     const DiagnosticsOptions& opt = default_diagnostics_options(),
                                     double R_max = 10.0);

/// mu_t^delta: per angular node, the radial integral of rho_t(sigma r) r^{N-1}
/// over (0, delta).
SphericalDensity spherical_density(const KernelFamily& family, double t, double delta,
                                   int angular_resolution = 0);

/// theta_{K,p}: normalized ray moments of a profile.
SphericalDensity theta_density(const Profile& profile, double p, int angular_resolution = 0);

struct ConeMassEntry {
  int direction = 0;
  double delta = 0.0;
  double t = 0.0;
  double mass = 0.0;
};

struct MaxRankReport {
  std::vector<ConeMassEntry> table;
  double min_stable_mass = 0.0;
  bool positive = false;
  std::string note;
};

/// Cone-mass probe of the maximal-rank condition for a basis of directions and
/// cone parameter tau; fails with a construction error when cones overlap.
MaxRankReport maximal_rank_probe(const KernelFamily& family, const std::vector<Vec>& basis,
                                 double tau,
                                 const DiagnosticsOptions& opt = default_diagnostics_options());

/// min over v in S^{N-1} of Theta_mu(v) = int |v.sigma| theta(sigma) dH.
double theta_mu_min(const SphericalDensity& theta, int v_resolution = 0);

}  // namespace nl
