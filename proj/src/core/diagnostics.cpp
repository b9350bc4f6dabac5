// SPDX-License-Identifier: Apache-2.0
#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "core/special_functions.hpp"

namespace nl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_{r0}^{r1} rho_t(r sigma) w(r) r^{N-1} dr along one ray, cut at the
// support edge. Families carrying a radial primitive get their unresolvable
// near-origin mass from the antiderivative, weighted by w at the floor.
double ray_integral(const KernelFamily& fam, double t, const Vec& sigma, double r0, double r1,
                    const std::function<double(double)>& w) {
  const Support sup = fam.support(t);
  const double cut = sup.radial_cut(sigma, fam.dim);
  r1 = std::min(r1, cut);
  if (sup.kind == Support::Kind::annulus) r0 = std::max(r0, sup.r0);
  if (r1 <= r0) return 0.0;
  const int dim = fam.dim;
  const auto f = [&](double r) {
    const Vec z{r * sigma[0], r * sigma[1], r * sigma[2]};
    const double v = fam.evaluate(t, z);
    return v == 0.0 ? 0.0 : v * w(r) * std::pow(r, dim - 1);
  };
  if (fam.radial_primitive && r0 == 0.0) {
    const double floor = std::min(1e-6, 1e-3 * r1);
    const double inner = (fam.radial_primitive(t, floor) - fam.radial_primitive(t, 0.0)) *
                         w(floor);
    return inner + quad::log_panels(f, floor, r1, 1e-11).value;
  }
  return quad::adaptive(f, r0, r1, 1e-10).value;
}

struct TailValue {
  double value = 0.0;
  bool divergent = false;
};

// angular x radial integral of rho_t * w over {r0 < |z| < r1}; semi-infinite
// upper end handled by decades with divergence detection
TailValue family_integral(const KernelFamily& fam, double t, double r0, double r1,
                          const std::function<double(double)>& w, int angular_res) {
  TailValue out;
  const int dim = fam.dim;
  const Support sup = fam.support(t);
  if (fam.is_radial) {
    const double area = unit_sphere_area(dim);
    const auto f = [&](double r) {
      const double v = fam.radial_value(t, r);
      return v == 0.0 ? 0.0 : area * v * w(r) * std::pow(r, dim - 1);
    };
    double lo = std::max(r0, sup.kind == Support::Kind::annulus ? sup.r0 : 0.0);
    double hi = std::min(r1, sup.r1);
    if (hi <= lo) return out;
    if (lo == 0.0 && fam.radial_primitive) {
      const double floor = std::min(1e-6, std::isfinite(hi) ? 1e-3 * hi : 1e-6);
      out.value += area * fam.radial_primitive(t, floor) * w(floor);
      lo = floor;
    }
    if (std::isfinite(hi)) {
      out.value += lo == 0.0 ? quad::adaptive(f, lo, hi, 1e-10).value
                             : quad::log_panels(f, lo, hi, 1e-11).value;
      return out;
    }
    const double split = std::max(1.0, 2.0 * lo);
    out.value += lo == 0.0 ? quad::adaptive(f, lo, split, 1e-10).value
                           : quad::log_panels(f, lo, split, 1e-11).value;
    const auto tail = quad::decades_to_infinity(f, split, 1e-10);
    out.value += tail.value;
    out.divergent = tail.divergent;
    return out;
  }
  if (dim == 2 && sup.kind == Support::Kind::box) {
    // extreme aspect ratios defeat angular grids; integrate in Cartesian
    // coordinates with the annulus {r0 < |z| < r1} clipped per column
    const double a = sup.halfwidth[0], b = sup.halfwidth[1];
    const auto column = [&](double x1) {
      const double r1sq = r1 * r1 - x1 * x1;
      if (r1sq <= 0.0) return 0.0;
      const double hi2 = std::min(b, std::sqrt(r1sq));
      const double r0sq = r0 * r0 - x1 * x1;
      const double lo2 = r0sq > 0.0 ? std::sqrt(r0sq) : 0.0;
      if (hi2 <= lo2) return 0.0;
      const auto g = [&](double x2) {
        const Vec z{x1, x2, 0.0};
        const double v = fam.evaluate(t, z);
        return v == 0.0 ? 0.0 : v * w(std::hypot(x1, x2));
      };
      return 2.0 * quad::adaptive(g, lo2, hi2, 1e-9).value;  // +-x2 symmetry of the box
    };
    const double x1_max = std::min(a, std::isfinite(r1) ? r1 : a);
    out.value = quad::adaptive(column, -x1_max, x1_max, 1e-8).value;
    return out;
  }
  const AngularGrid grid = angular_res > 0 ? make_angular_grid(dim, angular_res)
                                           : make_angular_grid(dim, dim == 2 ? 512 : 48);
  for (size_t j = 0; j < grid.size(); ++j) {
    const double cut = sup.radial_cut(grid.nodes[j], dim);
    const double hi = std::min(r1, cut);
    if (!std::isfinite(hi))
      fail(ErrorCode::internal, "family_integral: unbounded non-radial support");
    out.value += grid.weights[j] * ray_integral(fam, t, grid.nodes[j], r0, hi, w);
  }
  return out;
}

double mass_in_ball(const KernelFamily& fam, double t, double R, int angular_res) {
  return family_integral(fam, t, 0.0, R, [](double) { return 1.0; }, angular_res).value;
}

TailValue tail_over_rp(const KernelFamily& fam, double t, double R, double p, int angular_res) {
  return family_integral(fam, t, R, kInf, [p](double r) { return std::pow(r, -p); },
                         angular_res);
}

TailValue condition_i_value(const KernelFamily& fam, double t, double R, double p,
                            int angular_res) {
  const double Rp = std::pow(R, p);
  return family_integral(fam, t, 0.0, kInf,
                         [Rp, p](double r) { return Rp / (Rp + std::pow(r, p)); }, angular_res);
}

struct LimsupEstimate {
  double value = 0.0;
  bool diverged = false;
  bool increasing = false;
  double rise = 0.0;  // relative growth over the smallest t values
};

// max over the 3 smallest t plus a monotone trend flag
LimsupEstimate estimate_limsup(const std::vector<double>& t_grid,
                               const std::vector<double>& values) {
  LimsupEstimate est;
  const size_t n = values.size();
  const size_t k = std::min<size_t>(3, n);
  for (size_t i = n - k; i < n; ++i) {
    if (std::isinf(values[i])) est.diverged = true;
    est.value = std::max(est.value, values[i]);
  }
  if (n >= 3) {
    const double a = values[n - 3], b = values[n - 2], c = values[n - 1];
    est.increasing = c > b && b > a;
    if (est.increasing && a > 0.0) est.rise = (c - a) / a;
  }
  (void)t_grid;
  return est;
}

ConditionReport make_report(const std::string& name, const DiagnosticsOptions& opt,
                            const std::vector<std::vector<double>>& values_per_R,
                            bool vanishing_condition) {
  ConditionReport rep;
  rep.condition = name;
  rep.R_grid = opt.R_grid;
  std::vector<LimsupEstimate> ests;
  for (size_t ri = 0; ri < opt.R_grid.size(); ++ri) {
    for (size_t ti = 0; ti < opt.t_grid.size(); ++ti)
      rep.table.push_back({opt.R_grid[ri], opt.t_grid[ti], values_per_R[ri][ti]});
    ests.push_back(estimate_limsup(opt.t_grid, values_per_R[ri]));
    rep.limsup_per_R.push_back(ests.back().value);
    rep.sup_estimate = std::max(rep.sup_estimate, ests.back().value);
  }
  if (!vanishing_condition) {
    // The condition is a statement about sup_R of a t-limsup, so the trend
    // that matters is the trend of the R-envelope: individual radii below the
    // kernel scale legitimately rise while the envelope stays put.
    for (const auto& est : ests)
      if (est.diverged) {
        rep.verdict = Verdict::violated;
        return rep;
      }
    const size_t nt = opt.t_grid.size();
    const size_t k = std::min<size_t>(3, nt);
    // continuum sup over R estimated by parabolic peak interpolation in
    // log R; the raw discrete max aliases against the moving profile as t
    // shrinks and fakes a trend
    std::vector<double> sup_per_t(k, 0.0);
    for (size_t j = 0; j < k; ++j) {
      const size_t nR = opt.R_grid.size();
      size_t best = 0;
      for (size_t ri = 0; ri < nR; ++ri)
        if (values_per_R[ri][nt - k + j] > values_per_R[best][nt - k + j]) best = ri;
      double sup = values_per_R[best][nt - k + j];
      if (best > 0 && best + 1 < nR) {
        const double ym = values_per_R[best - 1][nt - k + j];
        const double y0 = sup;
        const double yp = values_per_R[best + 1][nt - k + j];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom < 0.0) {
          const double shift = 0.5 * (ym - yp) / denom;
          if (std::abs(shift) <= 1.0) sup = y0 - 0.25 * (ym - yp) * shift;
        }
      }
      sup_per_t[j] = sup;
    }
    const bool rising = k >= 3 && sup_per_t[2] > sup_per_t[1] && sup_per_t[1] > sup_per_t[0];
    const double rise = rising && sup_per_t[0] > 0.0
                            ? (sup_per_t[2] - sup_per_t[0]) / sup_per_t[0]
                            : 0.0;
    rep.increasing_trend = rising && rise > opt.trend_tolerance;
    if (rising && rise > 0.5)
      rep.verdict = Verdict::violated;
    else if (rep.increasing_trend)
      rep.verdict = Verdict::inconclusive;
    else
      rep.verdict = Verdict::satisfied;
    return rep;
  }
  // vanishing: the per-R limsup must die off as R grows
  for (const auto& est : ests)
    if (est.diverged) {
      rep.verdict = Verdict::violated;
      rep.note = "tail integral diverged";
      return rep;
    }
  const double peak = *std::max_element(rep.limsup_per_R.begin(), rep.limsup_per_R.end());
  const double last = rep.limsup_per_R.back();
  if (peak <= 0.0) {
    rep.verdict = Verdict::satisfied;
    return rep;
  }
  const size_t n = rep.limsup_per_R.size();
  const bool decreasing_end =
      n < 3 || (rep.limsup_per_R[n - 1] <= rep.limsup_per_R[n - 2] + 1e-14 &&
                rep.limsup_per_R[n - 2] <= rep.limsup_per_R[n - 3] + 1e-14);
  if (last <= 0.02 * peak && decreasing_end)
    rep.verdict = Verdict::satisfied;
  else if (last > 0.1 * peak && !decreasing_end)
    rep.verdict = Verdict::violated;
  else
    rep.verdict = Verdict::inconclusive;
  return rep;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    default: return "inconclusive";
  }
}

DiagnosticsOptions default_diagnostics_options() {
  DiagnosticsOptions opt;
  for (int k = 2; k <= 10; ++k) opt.t_grid.push_back(std::pow(2.0, -k));
  for (int i = 0; i < 11; ++i) opt.R_grid.push_back(std::pow(10.0, -2.0 + 0.5 * i));
  opt.deltas = {0.5, 0.25, 0.1, 0.05};
  return opt;
}

ConditionReport condition_i(const KernelFamily& family, double p,
                            const DiagnosticsOptions& opt) {
  require(opt.t_grid.size() >= 5, ErrorCode::invalid_argument,
          "condition_i: need at least 5 t values");
  require(std::is_sorted(opt.t_grid.begin(), opt.t_grid.end(), std::greater<double>()),
          ErrorCode::invalid_argument, "condition_i: t grid must decrease toward 0");
  std::vector<std::vector<double>> values(opt.R_grid.size());
  for (size_t ri = 0; ri < opt.R_grid.size(); ++ri)
    for (double t : opt.t_grid) {
      const TailValue v = condition_i_value(family, t, opt.R_grid[ri], p,
                                            opt.angular_resolution);
      values[ri].push_back(v.divergent ? kInf : v.value);
    }
  return make_report("R^p * integral of rho_t/(R^p+|z|^p)", opt, values, false);
}

SplitReport condition_split(const KernelFamily& family, double p,
                            const DiagnosticsOptions& opt) {
  SplitReport rep;
  const size_t nR = opt.R_grid.size();
  const size_t nt = opt.t_grid.size();
  // unit-ball pieces shared across the R grid
  std::vector<double> m1(nt), t1(nt);
  std::vector<bool> t1_div(nt);
  for (size_t ti = 0; ti < nt; ++ti) {
    m1[ti] = mass_in_ball(family, opt.t_grid[ti], 1.0, opt.angular_resolution);
    const TailValue v = tail_over_rp(family, opt.t_grid[ti], 1.0, p, opt.angular_resolution);
    t1[ti] = v.value;
    t1_div[ti] = v.divergent;
  }
  std::vector<std::vector<double>> mass(nR), weighted(nR), tail(nR), wedge(nR), wedge_tail(nR);
  for (size_t ri = 0; ri < nR; ++ri) {
    const double R = opt.R_grid[ri];
    for (size_t ti = 0; ti < nt; ++ti) {
      const double t = opt.t_grid[ti];
      const double m = mass_in_ball(family, t, R, opt.angular_resolution);
      const TailValue tl = tail_over_rp(family, t, R, p, opt.angular_resolution);
      mass[ri].push_back(m);
      weighted[ri].push_back(tl.divergent ? kInf : std::pow(R, p) * tl.value);
      tail[ri].push_back(tl.divergent ? kInf : tl.value);
      // (1 ^ |z|^-p) rho_t over B_R^c
      double wt;
      if (tl.divergent || t1_div[ti]) {
        wt = kInf;
      } else if (R >= 1.0) {
        wt = tl.value;
      } else {
        wt = (m1[ti] - m) + t1[ti];
      }
      wedge_tail[ri].push_back(wt);
      wedge[ri].push_back(t1_div[ti] ? kInf : m1[ti] + t1[ti]);
    }
  }
  rep.mass_bounded = make_report("integral of rho_t over B_R", opt, mass, false);
  rep.weighted_tail = make_report("R^p * tail of rho_t/|z|^p", opt, weighted, false);
  rep.tail_vanishing = make_report("tail of rho_t/|z|^p vanishing for large R", opt, tail, true);
  rep.one_wedge = make_report("integral of (1 ^ |z|^-p) rho_t", opt, wedge, false);
  rep.one_wedge_tail =
      make_report("tail of (1 ^ |z|^-p) rho_t vanishing for large R", opt, wedge_tail, true);

  const auto verdicts = {rep.mass_bounded.verdict, rep.weighted_tail.verdict,
                         rep.tail_vanishing.verdict, rep.one_wedge.verdict,
                         rep.one_wedge_tail.verdict};
  if (std::any_of(verdicts.begin(), verdicts.end(),
                  [](Verdict v) { return v == Verdict::violated; }))
    rep.combined = Verdict::violated;
  else if (std::all_of(verdicts.begin(), verdicts.end(),
                       [](Verdict v) { return v == Verdict::satisfied; }))
    rep.combined = Verdict::satisfied;
  else
    rep.combined = Verdict::inconclusive;
  return rep;
}

ConcentrationReport nu_concentration(const KernelFamily& family, const DiagnosticsOptions& opt,
                                     double R_max) {
  ConcentrationReport rep;
  rep.t_grid = opt.t_grid;
  rep.deltas = opt.deltas;
  rep.inner_mass.resize(opt.deltas.size());
  rep.outer_mass.resize(opt.deltas.size());
  for (size_t di = 0; di < opt.deltas.size(); ++di) {
    for (double t : opt.t_grid) {
      const double inner = mass_in_ball(family, t, opt.deltas[di], opt.angular_resolution);
      const double total = mass_in_ball(family, t, R_max, opt.angular_resolution);
      rep.inner_mass[di].push_back(inner);
      rep.outer_mass[di].push_back(std::max(0.0, total - inner));
    }
  }
  // the atom is read off at the smallest delta whose outer mass dies out
  const size_t nt = opt.t_grid.size();
  rep.concentrated = false;
  for (size_t di = opt.deltas.size(); di-- > 0;) {
    const double inner_last = rep.inner_mass[di][nt - 1];
    const double outer_last = rep.outer_mass[di][nt - 1];
    const double total_last = inner_last + outer_last;
    bool outer_decaying = true;
    if (nt >= 3) {
      const double a = rep.outer_mass[di][nt - 3];
      const double b = rep.outer_mass[di][nt - 2];
      const double c = rep.outer_mass[di][nt - 1];
      outer_decaying = c <= b + 1e-12 && b <= a + 1e-12;
    }
    const double outer_frac = total_last > 0.0 ? outer_last / total_last : 0.0;
    if (outer_decaying && outer_frac < 0.05) {
      rep.concentrated = true;
      rep.atom_estimate = inner_last;
      rep.atom_uncertainty = nt >= 2 ? std::abs(inner_last - rep.inner_mass[di][nt - 2]) : 0.0;
      rep.note = "nu concentrates onto an atom at the origin (delta = " +
                 std::to_string(opt.deltas[di]) + ")";
      break;
    }
  }
  if (!rep.concentrated)
    rep.note = "nu not concentrated: mass persists away from the origin";
  return rep;
}

SphericalDensity spherical_density(const KernelFamily& family, double t, double delta,
                                   int angular_resolution) {
  require(delta > 0.0 && delta <= 1.0, ErrorCode::invalid_argument,
          "spherical_density: delta in (0,1]");
  SphericalDensity d;
  d.grid = angular_resolution > 0 ? make_angular_grid(family.dim, angular_resolution)
                                  : make_angular_grid(family.dim);
  d.values.resize(d.grid.size());
  for (size_t j = 0; j < d.grid.size(); ++j)
    d.values[j] = ray_integral(family, t, d.grid.nodes[j], 0.0, delta,
                               [](double) { return 1.0; });
  return d;
}

SphericalDensity theta_density(const Profile& profile, double p, int angular_resolution) {
  MomentFunction moment(profile, p);
  if (moment.infinite())
    fail(ErrorCode::divergent, "theta_density: |.|^p K moment diverges, cannot normalize");
  const double normalizer = moment.infinity_value();
  require(normalizer > 0.0, ErrorCode::construction, "theta_density: zero moment");
  SphericalDensity d;
  d.grid = angular_resolution > 0 ? make_angular_grid(profile.dim, angular_resolution)
                                  : make_angular_grid(profile.dim);
  d.values.resize(d.grid.size());
  const int dim = profile.dim;
  for (size_t j = 0; j < d.grid.size(); ++j) {
    const Vec& sigma = d.grid.nodes[j];
    const auto f = [&](double r) {
      const Vec x{r * sigma[0], r * sigma[1], r * sigma[2]};
      return std::pow(r, dim + p - 1.0) * profile.point(x);
    };
    double ray;
    if (std::isfinite(profile.support_radius)) {
      ray = quad::adaptive(f, 0.0, profile.support_radius, 1e-11).value;
    } else {
      ray = quad::adaptive(f, 0.0, 1.0, 1e-11).value;
      const auto tail = quad::decades_to_infinity(f, 1.0, 1e-11);
      if (tail.divergent)
        fail(ErrorCode::divergent, "theta_density: ray moment diverges");
      ray += tail.value;
    }
    d.values[j] = ray / normalizer;
  }
  return d;
}

MaxRankReport maximal_rank_probe(const KernelFamily& family, const std::vector<Vec>& basis,
                                 double tau, const DiagnosticsOptions& opt) {
  require(static_cast<int>(basis.size()) == family.dim, ErrorCode::invalid_argument,
          "maximal_rank_probe: need N basis directions");
  require(tau > 0.0 && tau < 1.0, ErrorCode::invalid_argument, "maximal_rank_probe: tau in (0,1)");
  const int dim = family.dim;
  const AngularGrid grid = opt.angular_resolution > 0
                               ? make_angular_grid(dim, opt.angular_resolution)
                               : make_angular_grid(dim, dim == 1 ? 0 : (dim == 2 ? 1024 : 64));
  // cone membership per node; overlap check on the sampled sphere
  std::vector<std::vector<size_t>> members(basis.size());
  for (size_t j = 0; j < grid.size(); ++j) {
    int hits = 0;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (dot(grid.nodes[j], basis[i], dim) >= (1.0 - tau)) {
        members[i].push_back(j);
        ++hits;
      }
    }
    if (hits > 1)
      fail(ErrorCode::construction,
           "maximal_rank_probe: cones overlap away from the origin; decrease tau");
  }
  for (size_t i = 0; i < basis.size(); ++i)
    require(!members[i].empty(), ErrorCode::construction,
            "maximal_rank_probe: angular grid does not resolve a cone; refine it");

  MaxRankReport rep;
  double max_mass = 0.0;
  std::vector<std::vector<std::vector<double>>> mass(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) {
    mass[i].resize(opt.deltas.size());
    for (size_t di = 0; di < opt.deltas.size(); ++di) {
      for (double t : opt.t_grid) {
        double acc = 0.0;
        for (size_t j : members[i])
          acc += grid.weights[j] * ray_integral(family, t, grid.nodes[j], 0.0, opt.deltas[di],
                                                [](double) { return 1.0; });
        mass[i][di].push_back(acc);
        rep.table.push_back({static_cast<int>(i), opt.deltas[di], t, acc});
        max_mass = std::max(max_mass, acc);
      }
    }
  }
  const size_t nt = opt.t_grid.size();
  const size_t di = opt.deltas.size() - 1;
  rep.min_stable_mass = kInf;
  bool vanishing = false;
  for (size_t i = 0; i < basis.size(); ++i) {
    const double last = mass[i][di][nt - 1];
    const double prev = nt >= 2 ? mass[i][di][nt - 2] : last;
    rep.min_stable_mass = std::min(rep.min_stable_mass, std::min(last, prev));
    const double largest_t = mass[i][di][0];
    if (largest_t > 0.0 && last < 0.25 * largest_t) vanishing = true;
  }
  rep.positive = !vanishing && rep.min_stable_mass > 1e-8 * std::max(max_mass, 1e-300);
  rep.note = rep.positive ? "uniform cone mass in every basis direction"
                          : "cone mass degenerates in some direction";
  return rep;
}

double theta_mu_min(const SphericalDensity& theta, int v_resolution) {
  const int dim = theta.grid.dim;
  const AngularGrid vgrid = v_resolution > 0
                                ? make_angular_grid(dim, v_resolution)
                                : make_angular_grid(dim, dim == 1 ? 0 : (dim == 2 ? 720 : 48));
  double best = kInf;
  for (size_t vi = 0; vi < vgrid.size(); ++vi) {
    double acc = 0.0;
    for (size_t j = 0; j < theta.grid.size(); ++j)
      acc += theta.grid.weights[j] * theta.values[j] *
             std::abs(dot(vgrid.nodes[vi], theta.grid.nodes[j], dim));
    best = std::min(best, acc);
  }
  return best;
}

}  // namespace nl
