// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "core/grid_function.hpp"
#include "core/kernels.hpp"
#include "core/profile.hpp"

namespace nl {

// Values on a symmetric box lattice (internal helper for mollifier fields).
struct LatticeField {
  int dim = 1;
  std::array<int, 3> shape{1, 1, 1};
  Vec origin{0, 0, 0};
  double h = 1.0;
  std::vector<double> v;

  double at(const std::array<int, 3>& idx) const;
  Vec coord(const std::array<int, 3>& idx) const;
  double l1() const;
  double max() const;
};

// G = min{K, 1}, its self-convolution G*G, and an admissible bump phi with
// phi <= G*G and |grad phi| <= G*G node-wise (with margin).
struct MollifierPair {
  LatticeField G;
  LatticeField GG;
  double bump_radius = 0.0;
  double amplitude = 0.0;
  double margin = 0.0;  // smallest node-wise slack factor observed
  std::function<double(const Vec&)> phi;
  std::function<double(const Vec&)> grad_phi_mag;
  double phi_l1 = 0.0;
  double g_l1 = 0.0;
};

MollifierPair build_mollifier(const Profile& K, double h = 0.0);

/// Re-checks the two node-wise inequalities on a lattice `factor` times finer;
/// returns the worst slack (> 1 means the inequalities hold strictly).
double recheck_mollifier(const MollifierPair& mp, int factor = 2);

struct SupcompRow {
  double t = 0.0;
  double energy = 0.0;   // F^K_{t,p}(u)
  double r1 = 0.0;       // ||v_t - u||_p beta^p / F
  double r2 = 0.0;       // ||grad v_t||_p / F
};

struct SupcompReport {
  std::vector<SupcompRow> rows;
  bool bounded = false;
  bool vacuous = false;  // degenerate 0/0 case
  double max_r1 = 0.0, max_r2 = 0.0;
};

/// Mollification bounds behind the compactness argument: builds v_t = u*phi_t
/// and reports the two bounded ratios across t_list (spread < 10x).
SupcompReport verify_supcomp_bounds(const GridFunction& u, const Profile& K,
                                    const std::function<double(double)>& beta, double p,
                                    const std::vector<double>& t_list);

struct StarloneResult {
  double lhs = 0.0;  // int Delta_p^p (G*G)
  double rhs = 0.0;  // 2^p ||G||_1 int Delta_p^p G
  bool pass = false;
};

StarloneResult verify_starlone(const GridFunction& u, const Profile& G, double p);

struct MollifierDistanceRow {
  double epsilon = 0.0;
  double delta = 0.0;
  double t = 0.0;
  double lhs = 0.0;  // ||eta_delta * u - u||_p^p
  double rhs = 0.0;  // (eps/|B_1|) F_{t,p}(u)
  bool pass = false;
};

/// For each eps finds a delta certifying the kernel lower bound
/// rho_t(z)/|z|^p >= 1/(eps delta^N) on B_delta for t in (0, delta), then
/// checks the mollifier distance inequality at t = delta/2. Fails with a
/// divergence error when no delta certifies the bound.
std::vector<MollifierDistanceRow> verify_mollifier_distance(
    const GridFunction& u, const KernelFamily& family, const std::vector<double>& eps_list);

}  // namespace nl
