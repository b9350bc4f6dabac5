// SPDX-License-Identifier: Apache-2.0
#include "core/compactness.hpp"

#include <cmath>

#include "core/energy.hpp"
#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "core/shift_energy.hpp"
#include "core/special_functions.hpp"

namespace nl {

double LatticeField::at(const std::array<int, 3>& idx) const {
  for (int k = 0; k < dim; ++k)
    if (idx[k] < 0 || idx[k] >= shape[k]) return 0.0;
  return v[static_cast<size_t>(idx[0]) +
           static_cast<size_t>(shape[0]) *
               (static_cast<size_t>(dim > 1 ? idx[1] : 0) +
                static_cast<size_t>(shape[1]) * (dim > 2 ? idx[2] : 0))];
}

Vec LatticeField::coord(const std::array<int, 3>& idx) const {
  Vec x{0, 0, 0};
  for (int k = 0; k < dim; ++k) x[k] = origin[k] + idx[k] * h;
  return x;
}

double LatticeField::l1() const {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc * std::pow(h, dim);
}

double LatticeField::max() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

namespace {

double bump_value(double rho2) {
  // standard bump exp(1 - 1/(1-|y|^2)) on |y| < 1
  if (rho2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - rho2));
}

double bump_grad_mag(double rho) {
  const double rho2 = rho * rho;
  if (rho2 >= 1.0) return 0.0;
  const double den = 1.0 - rho2;
  return bump_value(rho2) * 2.0 * rho / (den * den);
}

double clipped_profile(const Profile& K, const Vec& x) { return std::min(K.point(x), 1.0); }

// decay radius beyond which min{K,1} is negligible
double profile_reach(const Profile& K) {
  if (std::isfinite(K.support_radius)) return K.support_radius;
  require(K.is_radial, ErrorCode::invalid_argument,
          "mollifier: unbounded non-radial profiles not supported");
  double r = 1.0;
  while (K.radial(r) > 1e-14 && r < 1e4) r *= 1.25;
  return r;
}

LatticeField sample_clipped(const Profile& K, double h, double reach) {
  LatticeField f;
  f.dim = K.dim;
  f.h = h;
  const int half = static_cast<int>(std::ceil(reach / h));
  size_t total = 1;
  for (int k = 0; k < f.dim; ++k) {
    f.shape[k] = 2 * half + 1;
    f.origin[k] = -half * h;
    total *= static_cast<size_t>(f.shape[k]);
  }
  f.v.resize(total);
  std::array<int, 3> idx{0, 0, 0};
  for (int i2 = 0; i2 < (f.dim > 2 ? f.shape[2] : 1); ++i2)
    for (int i1 = 0; i1 < (f.dim > 1 ? f.shape[1] : 1); ++i1)
      for (int i0 = 0; i0 < f.shape[0]; ++i0) {
        idx = {i0, i1, i2};
        f.v[static_cast<size_t>(i0) +
            static_cast<size_t>(f.shape[0]) *
                (static_cast<size_t>(i1) + static_cast<size_t>(f.shape[1]) * i2)] =
            clipped_profile(K, f.coord(idx));
      }
  return f;
}

// direct lattice convolution (G*G)(x) = sum_y G(y) G(x - y) h^N on the
// doubled lattice; the profiles here are small enough for the direct sum
LatticeField self_convolve(const LatticeField& g) {
  LatticeField out;
  out.dim = g.dim;
  out.h = g.h;
  size_t total = 1;
  for (int k = 0; k < g.dim; ++k) {
    out.shape[k] = 2 * g.shape[k] - 1;
    out.origin[k] = 2.0 * g.origin[k];
    total *= static_cast<size_t>(out.shape[k]);
  }
  out.v.assign(total, 0.0);
  const double cell = std::pow(g.h, g.dim);
  const int n1 = g.dim > 1 ? g.shape[1] : 1;
  const int o1 = g.dim > 1 ? out.shape[1] : 1;
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a0 = 0; a0 < g.shape[0]; ++a0) {
      const double ga = g.v[static_cast<size_t>(a0) + static_cast<size_t>(g.shape[0]) * a1];
      if (ga == 0.0) continue;
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b0 = 0; b0 < g.shape[0]; ++b0) {
          const double gb = g.v[static_cast<size_t>(b0) + static_cast<size_t>(g.shape[0]) * b1];
          if (gb == 0.0) continue;
          const size_t dst = static_cast<size_t>(a0 + b0) +
                             static_cast<size_t>(out.shape[0]) * (a1 + b1);
          (void)o1;
          out.v[dst] += ga * gb * cell;
        }
    }
  return out;
}

}  // namespace

MollifierPair build_mollifier(const Profile& K, double h) {
  require(K.dim <= 2, ErrorCode::invalid_argument, "mollifier: N in {1,2}");
  const double reach = profile_reach(K);
  if (h <= 0.0) h = reach / (K.dim == 1 ? 128 : 48);
  MollifierPair mp;
  mp.G = sample_clipped(K, h, reach);
  mp.GG = self_convolve(mp.G);
  mp.g_l1 = mp.G.l1();
  const double gg_max = mp.GG.max();
  if (gg_max <= 0.0)
    fail(ErrorCode::construction, "mollifier: G*G vanishes on the grid");

  // bump supported where G*G is at least half its max (radius along axis 1)
  const int half0 = (mp.GG.shape[0] - 1) / 2;
  double r = 0.0;
  for (int i = 0; i <= half0; ++i) {
    std::array<int, 3> idx{half0 + i, (mp.GG.shape[1] - 1) / 2 * (K.dim > 1 ? 1 : 0), 0};
    if (mp.GG.at(idx) >= 0.5 * gg_max) r = i * mp.GG.h;
  }
  require(r > 0.0, ErrorCode::construction, "mollifier: half-max region unresolved");
  mp.bump_radius = r;

  // the amplitude is pinned node-wise by both inequalities
  double c = std::numeric_limits<double>::infinity();
  const int n1 = K.dim > 1 ? mp.GG.shape[1] : 1;
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i0 = 0; i0 < mp.GG.shape[0]; ++i0) {
      const std::array<int, 3> idx{i0, i1, 0};
      const Vec x = mp.GG.coord(idx);
      const double rho = norm(x, K.dim) / r;
      const double b = bump_value(rho * rho);
      const double gb = bump_grad_mag(rho) / r;
      const double need = std::max(b, gb);
      if (need <= 0.0) continue;
      c = std::min(c, mp.GG.at(idx) / need);
    }
  require(std::isfinite(c) && c > 0.0, ErrorCode::construction,
          "mollifier: no admissible bump amplitude");
  // the margin covers the inter-node variation of G*G, so the inequalities
  // survive the finer recheck
  mp.amplitude = 0.95 * c;
  mp.margin = 0.05;

  const double amp = mp.amplitude;
  const double radius = mp.bump_radius;
  const int dim = K.dim;
  mp.phi = [amp, radius, dim](const Vec& x) {
    const double rho = norm(x, dim) / radius;
    return amp * bump_value(rho * rho);
  };
  mp.grad_phi_mag = [amp, radius, dim](const Vec& x) {
    const double rho = norm(x, dim) / radius;
    return amp * bump_grad_mag(rho) / radius;
  };
  // ||phi||_1 by quadrature of the radial bump
  const auto f = [&](double s) {
    return unit_sphere_area(dim) * std::pow(s, dim - 1) * amp * bump_value(s * s / (radius * radius));
  };
  mp.phi_l1 = quad::adaptive(f, 0.0, radius, 1e-12).value;

  require(recheck_mollifier(mp, 2) >= 1.0, ErrorCode::construction,
          "mollifier: node-wise inequalities violated on the doubled lattice");
  return mp;
}

double recheck_mollifier(const MollifierPair& mp, int factor) {
  // worst slack of (G*G)/phi and (G*G)/|grad phi| on a lattice `factor` finer;
  // G*G between nodes is taken multilinearly (it is concave-ish and smooth)
  const int dim = mp.GG.dim;
  const double h = mp.GG.h / factor;
  double worst = std::numeric_limits<double>::infinity();
  const int n0 = (mp.GG.shape[0] - 1) * factor;
  const int n1 = dim > 1 ? (mp.GG.shape[1] - 1) * factor : 0;
  for (int i1 = 0; i1 <= n1; ++i1)
    for (int i0 = 0; i0 <= n0; ++i0) {
      Vec x{mp.GG.origin[0] + i0 * h, dim > 1 ? mp.GG.origin[1] + i1 * h : 0.0, 0.0};
      const double need = std::max(mp.phi(x), mp.grad_phi_mag(x));
      if (need <= 0.0) continue;
      // multilinear value of GG at x
      std::array<int, 3> base{0, 0, 0};
      std::array<double, 3> frac{0, 0, 0};
      for (int k = 0; k < dim; ++k) {
        const double s = (x[k] - mp.GG.origin[k]) / mp.GG.h;
        base[k] = static_cast<int>(std::floor(s));
        frac[k] = s - base[k];
      }
      double gg = 0.0;
      for (int d1 = 0; d1 <= (dim > 1 ? 1 : 0); ++d1)
        for (int d0 = 0; d0 <= 1; ++d0) {
          const double w =
              (d0 ? frac[0] : 1.0 - frac[0]) * (dim > 1 ? (d1 ? frac[1] : 1.0 - frac[1]) : 1.0);
          gg += w * mp.GG.at({base[0] + d0, base[1] + d1, 0});
        }
      worst = std::min(worst, gg / need);
    }
  return worst;
}

SupcompReport verify_supcomp_bounds(const GridFunction& u, const Profile& K,
                                    const std::function<double(double)>& beta, double p,
                                    const std::vector<double>& t_list) {
  RescaledFamily fam = make_rescaled(K, beta, p);
  MollifierPair mp = build_mollifier(K);
  ShiftEnergy shift(u, p);
  SupcompReport rep;
  const double h = u.spacing();
  const int dim = u.dim();

  bool all_zero = true;
  for (double t : t_list) {
    const double b = beta(t);
    const double F = bbm_energy(shift, fam.family, t).value;
    // stencil of phi_t(x) = b^N phi(b x) / ||phi||_1 sampled on the grid
    const int reach = std::max(1, static_cast<int>(std::ceil(mp.bump_radius / (b * h))) + 1);
    std::vector<double> w;
    const int n1 = dim > 1 ? 2 * reach + 1 : 1;
    w.resize(static_cast<size_t>(2 * reach + 1) * n1);
    double mass = 0.0;
    for (int j1 = 0; j1 < n1; ++j1)
      for (int j0 = 0; j0 < 2 * reach + 1; ++j0) {
        const Vec x{(j0 - reach) * h, dim > 1 ? (j1 - reach) * h : 0.0, 0.0};
        const double val = std::pow(b, dim) * mp.phi({b * x[0], b * x[1], 0.0}) / mp.phi_l1;
        w[static_cast<size_t>(j0) + static_cast<size_t>(2 * reach + 1) * j1] = val;
        mass += val;
      }
    mass *= std::pow(h, dim);
    require(mass > 0.0, ErrorCode::construction, "supcomp: mollifier stencil unresolved");
    for (auto& x : w) x /= mass;  // unit discrete mass

    // v_t on the grid extended by the stencil reach
    const auto& shp = u.shape();
    const int e0 = shp[0] + 2 * reach;
    const int e1 = dim > 1 ? shp[1] + 2 * reach : 1;
    std::vector<double> v(static_cast<size_t>(e0) * e1, 0.0);
    for (int i1 = 0; i1 < e1; ++i1)
      for (int i0 = 0; i0 < e0; ++i0) {
        double acc = 0.0;
        for (int j1 = 0; j1 < n1; ++j1)
          for (int j0 = 0; j0 < 2 * reach + 1; ++j0) {
            const double wv =
                w[static_cast<size_t>(j0) + static_cast<size_t>(2 * reach + 1) * j1];
            if (wv == 0.0) continue;
            acc += wv * u.value_at_node({i0 - reach - (j0 - reach), i1 - reach - (j1 - reach), 0});
          }
        v[static_cast<size_t>(i0) + static_cast<size_t>(e0) * i1] = acc * std::pow(h, dim);
      }
    const auto v_at = [&](int i0, int i1) {
      if (i0 < 0 || i0 >= e0 || i1 < 0 || i1 >= e1) return 0.0;
      return v[static_cast<size_t>(i0) + static_cast<size_t>(e0) * i1];
    };

    double diff_pp = 0.0, grad_pp = 0.0;
    for (int i1 = 0; i1 < e1; ++i1)
      for (int i0 = 0; i0 < e0; ++i0) {
        const double uv = u.value_at_node({i0 - reach, dim > 1 ? i1 - reach : 0, 0});
        diff_pp += std::pow(std::abs(v_at(i0, i1) - uv), p);
        double g2 = 0.0;
        const double dx = (v_at(i0 + 1, i1) - v_at(i0 - 1, i1)) / (2.0 * h);
        g2 += dx * dx;
        if (dim > 1) {
          const double dy = (v_at(i0, i1 + 1) - v_at(i0, i1 - 1)) / (2.0 * h);
          g2 += dy * dy;
        }
        grad_pp += std::pow(g2, 0.5 * p);
      }
    const double cell = std::pow(h, dim);
    const double diff_norm = std::pow(diff_pp * cell, 1.0 / p);
    const double grad_norm = std::pow(grad_pp * cell, 1.0 / p);

    SupcompRow row;
    row.t = t;
    row.energy = F;
    if (F > 0.0) {
      row.r1 = diff_norm * std::pow(b, p) / F;
      row.r2 = grad_norm / F;
      all_zero = false;
    }
    rep.rows.push_back(row);
    rep.max_r1 = std::max(rep.max_r1, row.r1);
    rep.max_r2 = std::max(rep.max_r2, row.r2);
  }
  if (all_zero) {
    rep.vacuous = true;
    rep.bounded = true;
    return rep;
  }
  double min_r1 = std::numeric_limits<double>::infinity();
  double min_r2 = min_r1;
  for (const auto& row : rep.rows) {
    if (row.r1 > 0.0) min_r1 = std::min(min_r1, row.r1);
    if (row.r2 > 0.0) min_r2 = std::min(min_r2, row.r2);
  }
  rep.bounded = std::isfinite(rep.max_r1) && std::isfinite(rep.max_r2) &&
                rep.max_r1 / min_r1 < 10.0 && rep.max_r2 / min_r2 < 10.0;
  return rep;
}

StarloneResult verify_starlone(const GridFunction& u, const Profile& G, double p) {
  MollifierPair mp = build_mollifier(G);
  ShiftEnergy shift(u, p);
  const auto lattice_sum = [&](const LatticeField& f) {
    double acc = 0.0;
    const int n1 = f.dim > 1 ? f.shape[1] : 1;
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < f.shape[0]; ++i0) {
        const double w = f.at({i0, i1, 0});
        if (w == 0.0) continue;
        const Vec z = f.coord({i0, i1, 0});
        acc += w * shift.pp(z);
      }
    return acc * std::pow(f.h, f.dim);
  };
  StarloneResult res;
  res.lhs = lattice_sum(mp.GG);
  res.rhs = std::pow(2.0, p) * mp.g_l1 * lattice_sum(mp.G);
  res.pass = res.lhs <= res.rhs * (1.0 + 1e-3);
  return res;
}

std::vector<MollifierDistanceRow> verify_mollifier_distance(
    const GridFunction& u, const KernelFamily& family, const std::vector<double>& eps_list) {
  require(u.source() != nullptr && !u.source()->is_indicator, ErrorCode::invalid_argument,
          "mollifier distance: requires an analytic (smooth) source for sub-grid averaging");
  const int dim = u.dim();
  const double ball_vol = unit_ball_volume(dim);

  const auto certify = [&](double eps) -> double {
    // scan delta downward; the kernel bound must hold on sampled (z, t)
    for (double delta = 1.0; delta >= 1e-6; delta *= 0.7) {
      bool ok = true;
      const double target = 1.0 / (eps * std::pow(delta, dim));
      for (int zi = 0; zi < 24 && ok; ++zi) {
        const double r = delta * std::pow(10.0, -3.0 * (1.0 - zi / 23.0));
        for (int ti = 0; ti < 9 && ok; ++ti) {
          const double t = delta * std::pow(2.0, -8.0 * (1.0 - ti / 8.0)) * 0.999;
          const Vec z{r, 0.0, 0.0};
          if (family.shift_weight(t, z) < target) ok = false;
        }
      }
      if (ok) return delta;
    }
    fail(ErrorCode::divergent,
         "mollifier distance: no delta certifies the kernel lower bound for eps");
  };

  std::vector<MollifierDistanceRow> rows;
  const double p = family.exponent;
  ShiftEnergy shift(u, p);
  for (double eps : eps_list) {
    MollifierDistanceRow row;
    row.epsilon = eps;
    row.delta = certify(eps);
    row.t = 0.5 * row.delta;

    // ||eta_delta * u - u||_p^p with the ball average taken analytically
    const auto& src = *u.source();
    const double delta = row.delta;
    double lhs = 0.0;
    const auto& shp = u.shape();
    const int n1 = dim > 1 ? shp[1] : 1;
    const auto& rule = quad::gauss_legendre(12);
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i0 = 0; i0 < shp[0]; ++i0) {
        const Vec x{u.node_coord(0, i0), dim > 1 ? u.node_coord(1, i1) : 0.0, 0.0};
        double avg = 0.0;
        if (dim == 1) {
          for (size_t q = 0; q < rule.x.size(); ++q)
            avg += 0.5 * rule.w[q] * src.value({x[0] + 0.5 * delta * rule.x[q], 0.0, 0.0});
        } else {
          // polar average over the disk: GL in radius, uniform in angle
          const int n_phi = 16;
          for (size_t q = 0; q < rule.x.size(); ++q) {
            const double r = 0.5 * delta * (rule.x[q] + 1.0);
            double ring = 0.0;
            for (int a = 0; a < n_phi; ++a) {
              const double phi = 2.0 * std::numbers::pi * a / n_phi;
              ring += src.value({x[0] + r * std::cos(phi), x[1] + r * std::sin(phi), 0.0});
            }
            // weight r dr over the disk, normalized by |B_delta|
            avg += 0.5 * rule.w[q] * (0.5 * delta) * r * (ring / n_phi);
          }
          avg *= 2.0 / (0.5 * delta * delta);
        }
        lhs += std::pow(std::abs(avg - src.value(x)), p);
      }
    lhs *= std::pow(u.spacing(), dim);
    row.lhs = lhs;
    row.rhs = eps / ball_vol * bbm_energy(shift, family, row.t).value;
    row.pass = row.lhs <= row.rhs * (1.0 + 1e-3);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nl
