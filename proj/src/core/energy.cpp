// SPDX-License-Identifier: Apache-2.0
#include "core/energy.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "core/special_functions.hpp"

namespace nl {

namespace {

// weight(t, z) abstracted so the same engine serves rho/|z|^p and plain
// convolution kernels
struct Weight {
  const KernelFamily* fam;
  bool as_kernel;  // true: k_t(z); false: rho_t(z)/|z|^p
  double at(double t, const Vec& z) const {
    return as_kernel ? fam->evaluate(t, z) : fam->shift_weight(t, z);
  }
  double radial(double t, double r) const {
    return as_kernel ? fam->radial_value(t, r) : fam->shift_weight_radial(t, r);
  }
};

double angular_avg_weight(const Weight& w, const AngularGrid& grid, double t, double r) {
  if (w.fam->is_radial) return w.radial(t, r) * grid.total_weight();
  double acc = 0.0;
  for (size_t j = 0; j < grid.size(); ++j) {
    const Vec z{r * grid.nodes[j][0], r * grid.nodes[j][1], r * grid.nodes[j][2]};
    acc += grid.weights[j] * w.at(t, z);
  }
  return acc;
}

// angular integral of Delta_p(r sigma)^p * weight(r sigma) over the sphere
double shell_integrand(ShiftEnergy& shift, const Weight& w, const AngularGrid& grid, double t,
                       double r) {
  double acc = 0.0;
  const bool radial = w.fam->is_radial;
  const double wr = radial ? w.radial(t, r) : 0.0;
  for (size_t j = 0; j < grid.size(); ++j) {
    const Vec z{r * grid.nodes[j][0], r * grid.nodes[j][1], r * grid.nodes[j][2]};
    const double wv = radial ? wr : w.at(t, z);
    if (wv == 0.0) continue;
    acc += grid.weights[j] * shift.pp(z) * wv;
  }
  return acc;
}

struct PanelSum {
  double value = 0.0;
  double err = 0.0;
  bool converged = false;
};

PanelSum refine_log_panels(const std::function<double(double)>& f, double r0, double r1,
                           double rel_tol, int per_decade, int order) {
  PanelSum out;
  if (r1 <= r0) {
    out.converged = true;
    return out;
  }
  const double x0 = std::log(r0), x1 = std::log(r1);
  const auto g = [&f](double x) {
    const double r = std::exp(x);
    return f(r) * r;
  };
  int panels = std::max(1, static_cast<int>(std::ceil((x1 - x0) / std::numbers::ln10 *
                                                      per_decade)));
  double prev = 0.0;
  for (int pass = 0; pass < 6; ++pass) {
    double acc = 0.0;
    const double step = (x1 - x0) / panels;
    for (int i = 0; i < panels; ++i)
      acc += quad::panel(g, x0 + i * step, x0 + (i + 1) * step, order);
    if (pass > 0) {
      out.err = std::abs(acc - prev);
      if (out.err <= rel_tol * std::max(std::abs(acc), 1e-300)) {
        out.value = acc;
        out.converged = true;
        return out;
      }
    }
    prev = acc;
    panels *= 2;
  }
  out.value = prev;
  return out;
}

EnergySample box_support_energy(ShiftEnergy& shift, const Weight& w, double t,
                                const Support& support, const EnergyOptions& opt) {
  const int dim = w.fam->dim;
  const int quadrants = 1 << dim;
  const int levels = 10;
  const double q = 0.5;
  EnergySample out;
  out.t = t;

  const auto integrate = [&](int lvl, int order) {
    // per axis: geometric cells [hw q^{j+1}, hw q^j] plus an innermost sliver
    std::vector<std::vector<std::pair<double, double>>> cells(dim);
    for (int k = 0; k < dim; ++k) {
      double hi = support.halfwidth[k];
      for (int j = 0; j < lvl; ++j) {
        cells[k].push_back({hi * q, hi});
        hi *= q;
      }
      cells[k].push_back({0.0, hi});
    }
    double total = 0.0;
    std::array<int, 3> idx{0, 0, 0};
    const int per_axis = lvl + 1;
    int combos = 1;
    for (int k = 0; k < dim; ++k) combos *= per_axis;
    for (int quad_id = 0; quad_id < quadrants; ++quad_id) {
      std::array<double, 3> sign{1.0, 1.0, 1.0};
      for (int k = 0; k < dim; ++k)
        if (quad_id & (1 << k)) sign[k] = -1.0;
      for (int c = 0; c < combos; ++c) {
        int rem = c;
        for (int k = 0; k < dim; ++k) {
          idx[k] = rem % per_axis;
          rem /= per_axis;
        }
        // tensor GL over the cell
        const auto& rule = quad::gauss_legendre(order);
        double cell_acc = 0.0;
        double jac = 1.0;
        std::array<std::pair<double, double>, 3> ab{};
        for (int k = 0; k < dim; ++k) {
          ab[k] = cells[k][idx[k]];
          jac *= 0.5 * (ab[k].second - ab[k].first);
        }
        if (jac == 0.0) continue;
        const int nn = static_cast<int>(rule.x.size());
        std::array<int, 3> gi{0, 0, 0};
        int gcombos = 1;
        for (int k = 0; k < dim; ++k) gcombos *= nn;
        for (int g = 0; g < gcombos; ++g) {
          int grem = g;
          double wgt = 1.0;
          Vec z{0, 0, 0};
          for (int k = 0; k < dim; ++k) {
            gi[k] = grem % nn;
            grem /= nn;
            wgt *= rule.w[gi[k]];
            const double mid = 0.5 * (ab[k].first + ab[k].second);
            const double half = 0.5 * (ab[k].second - ab[k].first);
            z[k] = sign[k] * (mid + half * rule.x[gi[k]]);
          }
          const double wv = w.at(t, z);
          if (wv == 0.0) continue;
          cell_acc += wgt * shift.pp(z) * wv;
        }
        total += cell_acc * jac;
      }
    }
    return total;
  };

  const double coarse = integrate(levels, opt.gl_order);
  const double fine = integrate(levels + 2, opt.gl_order + 2);
  out.value = fine;
  out.err_quad = std::abs(fine - coarse);
  return out;
}

}  // namespace

EnergySample bbm_energy(ShiftEnergy& shift, const KernelFamily& family, double t,
                        const EnergyOptions& opt) {
  const GridFunction& u = shift.function();
  require(u.dim() == family.dim, ErrorCode::invalid_argument,
          "bbm_energy: function and family dimensions differ");
  require(t > 0.0 && t < 1.0, ErrorCode::invalid_argument, "bbm_energy: t in (0,1)");

  const Weight w{&family, false};
  const Support support = family.support(t);
  if (support.kind == Support::Kind::box && opt.region_r0 == 0.0 &&
      !std::isfinite(opt.region_r1))
    return box_support_energy(shift, w, t, support, opt);

  EnergySample out;
  out.t = t;
  const AngularGrid grid = opt.angular_resolution > 0
                               ? make_angular_grid(u.dim(), opt.angular_resolution)
                               : make_angular_grid(u.dim());
  const int dim = u.dim();
  const double r_lo_engine =
      shift.resolution_free() ? 1e-10 : opt.r_min_factor * u.spacing();
  const double r_support_lo = support.kind == Support::Kind::annulus ? support.r0 : 0.0;
  const double r_support_hi = support.r1;
  const double r_dis = shift.disjoint_radius();

  const double lo = std::max({opt.region_r0, r_lo_engine, r_support_lo});
  const double hi = std::min({opt.region_r1, r_dis, r_support_hi});

  const auto full_integrand = [&](double r) {
    return shell_integrand(shift, w, grid, t, r) * std::pow(r, dim - 1);
  };
  const PanelSum main = refine_log_panels(full_integrand, lo, hi, opt.rel_tol,
                                          opt.panels_per_decade, opt.gl_order);
  out.value = main.value;
  out.err_quad = main.err;
  if (!main.converged && main.value != 0.0)
    fail(ErrorCode::quadrature, "bbm_energy: radial panels did not converge to tolerance");

  // inner completion below the resolved radius: the quotient
  // Delta_p(z)^p / |z|^p is bounded by ||Du||_p^p and continuous down to 0,
  // so freeze it at the resolved edge and integrate the measure |z|^p w(z)
  // exactly (analytic primitive when the family carries one)
  const double inner_lo = std::max(opt.region_r0, r_support_lo);
  const double p = shift.p();
  if (inner_lo < lo && lo > 0.0 && lo == r_lo_engine) {
    double measure = 0.0;
    double measure_err = 0.0;
    if (!w.as_kernel && family.is_radial && family.radial_primitive && inner_lo == 0.0) {
      measure = grid.total_weight() *
                (family.radial_primitive(t, lo) - family.radial_primitive(t, inner_lo));
    } else {
      const auto rho_shell = [&](double r) {
        return angular_avg_weight(w, grid, t, r) * std::pow(r, p + dim - 1);
      };
      const auto inner_mass = quad::adaptive(rho_shell, inner_lo, lo, 1e-8);
      measure = inner_mass.value;
      measure_err = inner_mass.abs_err;
    }
    if (measure > 0.0) {
      const double shell = shell_integrand(shift, w, grid, t, lo);
      const double wavg = angular_avg_weight(w, grid, t, lo);
      double ratio = wavg > 0.0 ? shell / (wavg * std::pow(lo, p)) : 0.0;
      ratio = std::min(ratio, shift.grad_pp());
      out.value += measure * ratio;
      out.err_quad += 0.5 * measure * ratio + measure_err;
    }
  }

  // disjoint-support tail: Delta_p^p == 2 ||u||_p^p exactly
  const double tail_lo = std::max(hi, opt.region_r0);
  const double tail_hi = std::min(opt.region_r1, r_support_hi);
  if (tail_lo < tail_hi && tail_lo >= r_dis) {
    const auto tail_weight = [&](double r) {
      return angular_avg_weight(w, grid, t, r) * std::pow(r, dim - 1);
    };
    if (std::isfinite(tail_hi)) {
      const auto tail = quad::log_panels(tail_weight, tail_lo, tail_hi, 1e-9);
      out.value += shift.two_lp_pp() * tail.value;
      out.err_quad += shift.two_lp_pp() * tail.abs_err;
    } else {
      const auto tail = quad::decades_to_infinity(tail_weight, tail_lo, 1e-9);
      if (tail.divergent)
        fail(ErrorCode::quadrature, "bbm_energy: kernel tail integral does not converge");
      out.value += shift.two_lp_pp() * tail.value;
      out.err_quad += shift.two_lp_pp() * tail.abs_err;
    }
  }
  return out;
}

EnergySample bbm_energy(const GridFunction& u, const KernelFamily& family, double t, double p,
                        const EnergyOptions& opt) {
  ShiftEnergy shift(u, p);
  return bbm_energy(shift, family, t, opt);
}

EnergySample convolution_energy(ShiftEnergy& shift, const KernelFamily& kernel, double t,
                                const EnergyOptions& opt) {
  // same radial-angular machinery with the kernel as the weight
  KernelFamily as_rho = kernel;
  as_rho.exponent = shift.p();
  as_rho.shift_point = kernel.eval_point;
  as_rho.shift_radial = kernel.eval_radial;
  return bbm_energy(shift, as_rho, t, opt);
}

double local_energy_weighted(const GridFunction& u, const SphericalDensity& theta, double p) {
  require(u.dim() == theta.grid.dim, ErrorCode::invalid_argument,
          "local_energy_weighted: dimension mismatch");
  double acc = 0.0;
  for (size_t j = 0; j < theta.grid.size(); ++j) {
    if (theta.values[j] == 0.0) continue;
    require(theta.values[j] >= 0.0, ErrorCode::invalid_argument,
            "local_energy_weighted: theta must be non-negative");
    acc += theta.grid.weights[j] * theta.values[j] * u.directional_pp(theta.grid.nodes[j], p);
  }
  return acc;
}

double mixed_energy(const GridFunction& u, const SphericalDensity& theta,
                    const AtomicPlusDiffuseMeasure& nu, double p, bool include_atom_as_local) {
  double acc = local_energy_weighted(u, theta, p);
  for (const auto& [z, wz] : nu.points) {
    require(wz >= 0.0, ErrorCode::invalid_argument, "mixed_energy: nu weights must be >= 0");
    const double r = norm(z, u.dim());
    require(r > 0.0, ErrorCode::invalid_argument,
            "mixed_energy: diffuse nu points must avoid the origin");
    acc += wz * u.shift_diff_pp(z, p) / std::pow(r, p);
  }
  if (include_atom_as_local && nu.atom > 0.0) {
    const AngularGrid grid = make_angular_grid(u.dim());
    double avg = 0.0;
    for (size_t j = 0; j < grid.size(); ++j)
      avg += grid.weights[j] * u.directional_pp(grid.nodes[j], p);
    acc += nu.atom * avg / grid.total_weight();
  }
  return acc;
}

SeminormResult nonlocal_seminorm(ShiftEnergy& shift,
                                 const std::function<double(double)>& kappa_radial,
                                 const SeminormOptions& opt) {
  const GridFunction& u = shift.function();
  const int dim = u.dim();
  const AngularGrid grid = opt.angular_resolution > 0
                               ? make_angular_grid(dim, opt.angular_resolution)
                               : make_angular_grid(dim);
  const double r_lo = opt.r_min_factor * u.spacing();
  const double r_dis = shift.disjoint_radius();

  const auto integrand = [&](double r) {
    const double kv = kappa_radial(r);
    if (kv == 0.0) return 0.0;
    double acc = 0.0;
    for (size_t j = 0; j < grid.size(); ++j) {
      const Vec z{r * grid.nodes[j][0], r * grid.nodes[j][1], r * grid.nodes[j][2]};
      acc += grid.weights[j] * shift.pp(z);
    }
    return acc * kv * std::pow(r, dim - 1);
  };

  // per-decade partial sums ascending from the resolution floor
  SeminormResult out;
  std::vector<double> decade_sums;
  double lo = r_lo;
  while (lo < r_dis) {
    const double hi = std::min(lo * 10.0, r_dis);
    const auto d = refine_log_panels(integrand, lo, hi, opt.rel_tol, 8, 8);
    decade_sums.push_back(d.value);
    out.value += d.value;
    out.err += d.err;
    lo = hi;
  }
  if (decade_sums.size() >= 2 && out.value > 0.0) {
    const double d0 = decade_sums[0];             // lowest decade
    const double d1 = decade_sums[1];
    if (d1 > 0.0 && d0 >= 0.75 * d1) {
      fail(ErrorCode::divergent,
           "nonlocal_seminorm: small-|z| decade sums do not decay; u is not in W^{kappa,p}");
    }
    if (d1 > 0.0 && d0 > 0.0) {
      const double ratio = d0 / d1;
      out.err += d0 * ratio / (1.0 - ratio);  // geometric remainder below r_lo
    }
  }

  // disjoint tail
  const auto tail_weight = [&](double r) {
    return kappa_radial(r) * unit_sphere_area(dim) * std::pow(r, dim - 1);
  };
  const auto tail = quad::decades_to_infinity(tail_weight, r_dis, 1e-10);
  if (tail.divergent)
    fail(ErrorCode::divergent, "nonlocal_seminorm: kappa tail is not integrable");
  out.value += shift.two_lp_pp() * tail.value;
  out.err += shift.two_lp_pp() * tail.abs_err;
  return out;
}

SeminormResult nonlocal_seminorm(const GridFunction& u,
                                 const std::function<double(double)>& kappa_radial, double p,
                                 const SeminormOptions& opt) {
  ShiftEnergy shift(u, p);
  return nonlocal_seminorm(shift, kappa_radial, opt);
}

}  // namespace nl
