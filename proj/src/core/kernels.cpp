// SPDX-License-Identifier: Apache-2.0
#include "core/kernels.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "core/constants.hpp"
#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "core/special_functions.hpp"

namespace nl {

double Support::radial_cut(const Vec& sigma, int dim) const {
  switch (kind) {
    case Kind::all: return std::numeric_limits<double>::infinity();
    case Kind::ball:
    case Kind::annulus: return r1;
    case Kind::box: {
      double cut = std::numeric_limits<double>::infinity();
      for (int k = 0; k < dim; ++k)
        if (std::abs(sigma[k]) > 0.0) cut = std::min(cut, halfwidth[k] / std::abs(sigma[k]));
      return cut;
    }
  }
  return std::numeric_limits<double>::infinity();
}

double KernelFamily::evaluate(double t, const Vec& z) const {
  const double v = eval_point(t, z);
  return v;
}

double KernelFamily::radial_value(double t, double r) const {
  require(is_radial && eval_radial != nullptr, ErrorCode::internal,
          "radial_value on a non-radial family");
  return eval_radial(t, r);
}

double KernelFamily::shift_weight(double t, const Vec& z) const {
  if (shift_point) return shift_point(t, z);
  const double r = norm(z, dim);
  return eval_point(t, z) / std::pow(r, exponent);
}

double KernelFamily::shift_weight_radial(double t, double r) const {
  if (shift_radial) return shift_radial(t, r);
  require(is_radial && eval_radial != nullptr, ErrorCode::internal,
          "shift_weight_radial on a non-radial family");
  return eval_radial(t, r) / std::pow(r, exponent);
}

Support KernelFamily::support(double t) const {
  if (support_fn) return support_fn(t);
  return {};
}

namespace {

void attach_radial(KernelFamily& fam) {
  fam.eval_point = [f = fam.eval_radial, d = fam.dim](double t, const Vec& z) {
    return f(t, norm(z, d));
  };
}

}  // namespace

KernelFamily make_heat(int dim) {
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "heat kernel: N in {1,2,3}");
  KernelFamily fam;
  fam.dim = dim;
  fam.family_id = "heat";
  fam.is_radial = true;
  fam.has_closed_form = true;
  fam.eval_radial = [dim](double t, double r) {
    return std::exp(-r * r / (4.0 * t)) * std::pow(4.0 * std::numbers::pi * t, -0.5 * dim);
  };
  attach_radial(fam);
  return fam;
}

KernelFamily make_frac_heat(int dim, double s, bool force_tabulated,
                            const FracHeatTableParams& params) {
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "frac heat: N in {1,2,3}");
  require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "frac heat: s in (0,1)");
  KernelFamily fam;
  fam.dim = dim;
  fam.family_id = "frac-heat";
  fam.is_radial = true;
  fam.params["s"] = s;
  if (s == 0.5 && !force_tabulated) {
    fam.has_closed_form = true;
    const double c = gamma_fn(0.5 * (dim + 1)) / std::pow(std::numbers::pi, 0.5 * (dim + 1));
    fam.eval_radial = [c, dim](double t, double r) {
      return c * t / std::pow(t * t + r * r, 0.5 * (dim + 1));
    };
  } else {
    auto table = (params.r_lo == FracHeatTableParams{}.r_lo &&
                  params.r_hi == FracHeatTableParams{}.r_hi &&
                  params.points_per_decade == FracHeatTableParams{}.points_per_decade)
                     ? shared_frac_heat_table(dim, s)
                     : std::make_shared<const FracHeatTable>(dim, s, params);
    fam.eval_radial = [table](double t, double r) { return table->value(t, r); };
  }
  attach_radial(fam);
  return fam;
}

KernelFamily make_fractional_bbm(int dim, double p) {
  require(dim >= 1, ErrorCode::invalid_argument, "fractional family: N >= 1");
  require(p >= 1.0, ErrorCode::invalid_argument, "fractional family: p >= 1");
  KernelFamily fam;
  fam.dim = dim;
  fam.exponent = p;
  fam.family_id = "frac-bbm";
  fam.is_radial = true;
  fam.has_closed_form = true;
  fam.eval_radial = [dim, p](double t, double r) { return t * std::pow(r, t * p - dim); };
  fam.shift_radial = [dim, p](double t, double r) { return t * std::pow(r, t * p - dim - p); };
  attach_radial(fam);
  fam.shift_point = [f = fam.shift_radial, dim](double t, const Vec& z) {
    return f(t, norm(z, dim));
  };
  // the mass near 0 spreads over scales like e^{-1/t}; quadrature cannot see
  // it, the antiderivative can
  fam.radial_primitive = [p](double t, double r) { return std::pow(r, t * p) / p; };
  return fam;
}

KernelFamily make_anisotropic_box(int dim, int m, int variant, double p) {
  require(dim >= 2 && dim <= 3, ErrorCode::invalid_argument, "anisotropic box: N in {2,3}");
  require(m >= 1 && m < dim, ErrorCode::invalid_argument, "anisotropic box: 1 <= m < N");
  require(variant == 1 || variant == 2, ErrorCode::invalid_argument,
          "anisotropic box: variant in {1,2}");
  KernelFamily fam;
  fam.dim = dim;
  fam.exponent = p;
  fam.family_id = "aniso-box";
  fam.params["m"] = m;
  fam.params["variant"] = variant;
  const auto halfwidths = [dim, m, variant](double t) {
    Vec hw{0.0, 0.0, 0.0};
    const double a = variant == 1 ? t : t * t;
    const double b = variant == 1 ? t * t : t;
    for (int k = 0; k < dim; ++k) hw[k] = k < m ? a : b;
    return hw;
  };
  fam.eval_point = [dim, m, halfwidths](double t, const Vec& z) {
    const Vec hw = halfwidths(t);
    double vol = 1.0;
    for (int k = 0; k < dim; ++k) {
      if (std::abs(z[k]) > hw[k]) return 0.0;
      vol *= 2.0 * hw[k];
    }
    // the per-block factors multiply out to the product of the two ball volumes
    (void)m;
    return 1.0 / vol;
  };
  fam.support_fn = [halfwidths](double t) {
    Support s;
    s.kind = Support::Kind::box;
    s.halfwidth = halfwidths(t);
    double r2 = 0.0;
    for (double h : s.halfwidth) r2 += h * h;
    s.r1 = std::sqrt(r2);
    return s;
  };
  return fam;
}

KernelFamily make_annulus_escape(int dim) {
  KernelFamily fam;
  fam.dim = dim;
  fam.family_id = "annulus-escape";
  fam.is_radial = true;
  fam.has_closed_form = true;
  const double vol = unit_ball_volume(dim) * (std::pow(2.0, dim) - 1.0);
  fam.eval_radial = [vol](double, double r) { return (r > 1.0 && r < 2.0) ? 1.0 / vol : 0.0; };
  attach_radial(fam);
  fam.support_fn = [](double) {
    Support s;
    s.kind = Support::Kind::annulus;
    s.r0 = 1.0;
    s.r1 = 2.0;
    return s;
  };
  return fam;
}

KernelFamily make_mass_blowup(int dim) {
  KernelFamily fam;
  fam.dim = dim;
  fam.family_id = "mass-blowup";
  fam.is_radial = true;
  fam.has_closed_form = true;
  fam.eval_radial = [](double t, double r) { return r <= 1.0 ? 1.0 / t : 0.0; };
  attach_radial(fam);
  fam.support_fn = [](double) {
    Support s;
    s.kind = Support::Kind::ball;
    s.r1 = 1.0;
    return s;
  };
  return fam;
}

MomentFunction::MomentFunction(Profile profile, double p) : profile_(std::move(profile)), p_(p) {
  require(p >= 0.0, ErrorCode::invalid_argument, "moment: p >= 0");
  // local integrability probe on B_1, then the full-space value
  const double local = (*this)(1.0);
  require(std::isfinite(local), ErrorCode::invalid_argument,
          "moment: |.|^p K not integrable near the origin");
  if (std::isfinite(profile_.support_radius)) {
    m_inf_ = (*this)(profile_.support_radius);
    m_inf_err_ = 0.0;
    m_inf_finite_ = true;
    return;
  }
  if (profile_.is_radial) {
    const double area = unit_sphere_area(profile_.dim);
    const auto f = [this, area](double r) {
      return area * std::pow(r, profile_.dim + p_ - 1.0) * profile_.radial(r);
    };
    const auto inner = quad::adaptive(f, 0.0, 1.0, 1e-12);
    const auto tail = quad::decades_to_infinity(f, 1.0, 1e-13);
    m_inf_finite_ = !tail.divergent;
    m_inf_ = inner.value + tail.value;
    m_inf_err_ = inner.abs_err + tail.abs_err;
    return;
  }
  const AngularGrid grid = make_angular_grid(profile_.dim);
  const auto f = [this, &grid](double r) {
    double acc = 0.0;
    for (size_t j = 0; j < grid.size(); ++j) {
      Vec x{grid.nodes[j][0] * r, grid.nodes[j][1] * r, grid.nodes[j][2] * r};
      acc += grid.weights[j] * profile_.point(x);
    }
    return acc * std::pow(r, profile_.dim + p_ - 1.0);
  };
  const auto inner = quad::adaptive(f, 0.0, 1.0, 1e-10);
  const auto tail = quad::decades_to_infinity(f, 1.0, 1e-11);
  m_inf_finite_ = !tail.divergent;
  m_inf_ = inner.value + tail.value;
  m_inf_err_ = inner.abs_err + tail.abs_err;
}

double MomentFunction::operator()(double R) const {
  require(R > 0.0, ErrorCode::invalid_argument, "moment: R > 0");
  const double cut = std::min(R, profile_.support_radius);
  if (cut <= 0.0) return 0.0;
  if (profile_.is_radial) {
    const double area = unit_sphere_area(profile_.dim);
    const auto f = [this, area](double r) {
      return area * std::pow(r, profile_.dim + p_ - 1.0) * profile_.radial(r);
    };
    const auto res = quad::adaptive(f, 0.0, cut, 1e-12);
    if (!res.converged) fail(ErrorCode::quadrature, "moment: radial quadrature did not converge");
    return res.value;
  }
  const AngularGrid grid = make_angular_grid(profile_.dim);
  const auto f = [this, &grid](double r) {
    double acc = 0.0;
    for (size_t j = 0; j < grid.size(); ++j) {
      Vec x{grid.nodes[j][0] * r, grid.nodes[j][1] * r, grid.nodes[j][2] * r};
      acc += grid.weights[j] * profile_.point(x);
    }
    return acc * std::pow(r, profile_.dim + p_ - 1.0);
  };
  const auto res = quad::adaptive(f, 0.0, cut, 1e-10);
  if (!res.converged) fail(ErrorCode::quadrature, "moment: quadrature did not converge");
  return res.value;
}

double RescaledFamily::phi(double t) const {
  const double b = beta(t);
  const double m = (*moment)(b);
  if (m <= 0.0)
    fail(ErrorCode::domain, "rescaled family: normalizer m_{K,p}(beta(t)) vanishes at t=" +
                                std::to_string(t));
  return m / std::pow(b, p);
}

RescaledFamily make_rescaled(Profile profile, std::function<double(double)> beta, double p) {
  require(p >= 1.0, ErrorCode::invalid_argument, "rescaled family: p >= 1");
  RescaledFamily out;
  out.profile = std::move(profile);
  out.beta = std::move(beta);
  out.p = p;
  out.moment = std::make_shared<MomentFunction>(out.profile, p);

  // beta(t) -> infinity sampled at the small end
  const double b_small = out.beta(1e-3), b_mid = out.beta(0.5);
  require(b_small > b_mid && b_small > 1.0, ErrorCode::invalid_argument,
          "rescaled family: beta(t) must grow as t -> 0");

  KernelFamily fam;
  fam.dim = out.profile.dim;
  fam.exponent = p;
  fam.family_id = "rescaled-" + out.profile.id;
  fam.is_radial = out.profile.is_radial;
  const Profile prof = out.profile;
  const auto beta_fn = out.beta;
  const auto moment = out.moment;
  const int dim = prof.dim;
  // the normalizer costs a quadrature; memoize it per t
  auto phi_cache = std::make_shared<std::map<double, double>>();
  auto phi_mutex = std::make_shared<std::mutex>();
  const auto phi_at = [moment, beta_fn, p, phi_cache, phi_mutex](double t) {
    {
      std::lock_guard<std::mutex> lock(*phi_mutex);
      auto it = phi_cache->find(t);
      if (it != phi_cache->end()) return it->second;
    }
    const double b = beta_fn(t);
    const double m = (*moment)(b);
    if (m <= 0.0)
      fail(ErrorCode::domain, "rescaled family: normalizer vanishes at t=" + std::to_string(t));
    const double phi = m / std::pow(b, p);
    std::lock_guard<std::mutex> lock(*phi_mutex);
    (*phi_cache)[t] = phi;
    return phi;
  };
  fam.shift_point = [prof, beta_fn, phi_at, dim](double t, const Vec& z) {
    const double b = beta_fn(t);
    Vec x{b * z[0], b * z[1], b * z[2]};
    return std::pow(b, dim) * prof.point(x) / phi_at(t);
  };
  fam.eval_point = [shift = fam.shift_point, p, dim](double t, const Vec& z) {
    return std::pow(norm(z, dim), p) * shift(t, z);
  };
  if (fam.is_radial) {
    fam.shift_radial = [prof, beta_fn, phi_at, dim](double t, double r) {
      const double b = beta_fn(t);
      return std::pow(b, dim) * prof.radial(b * r) / phi_at(t);
    };
    fam.eval_radial = [shift = fam.shift_radial, p](double t, double r) {
      return std::pow(r, p) * shift(t, r);
    };
  }
  if (std::isfinite(out.profile.support_radius)) {
    const double rk = out.profile.support_radius;
    fam.support_fn = [rk, beta_fn](double t) {
      Support s;
      s.kind = Support::Kind::ball;
      s.r1 = rk / beta_fn(t);
      return s;
    };
  }
  out.family = std::move(fam);
  return out;
}

KernelFamily make_shift_family(KernelFamily kernel, double p, std::function<double(double)> psi,
                               const std::string& suffix) {
  KernelFamily fam;
  fam.dim = kernel.dim;
  fam.exponent = p;
  fam.family_id = kernel.family_id + suffix;
  fam.is_radial = kernel.is_radial;
  fam.has_closed_form = kernel.has_closed_form;
  fam.params = kernel.params;
  auto k = std::make_shared<KernelFamily>(std::move(kernel));
  fam.shift_point = [k, psi](double t, const Vec& z) { return k->eval_point(t, z) / psi(t); };
  fam.eval_point = [k, psi, p](double t, const Vec& z) {
    return std::pow(norm(z, k->dim), p) * k->eval_point(t, z) / psi(t);
  };
  if (fam.is_radial) {
    fam.shift_radial = [k, psi](double t, double r) { return k->eval_radial(t, r) / psi(t); };
    fam.eval_radial = [k, psi, p](double t, double r) {
      return std::pow(r, p) * k->eval_radial(t, r) / psi(t);
    };
  }
  if (k->support_fn) fam.support_fn = k->support_fn;
  return fam;
}

KernelFamily make_general_heat_type(Profile h1, double beta_exponent) {
  require(beta_exponent > 0.0, ErrorCode::invalid_argument, "heat type: beta exponent > 0");
  MomentFunction mass(h1, 0.0);
  require(mass.infinite() == false, ErrorCode::construction, "heat type: profile has no mass");
  const double total = mass.infinity_value();
  require(std::abs(total - 1.0) <= 0.01, ErrorCode::construction,
          "heat type: profile mass " + std::to_string(total) + " deviates from 1 beyond 1%");
  KernelFamily fam;
  fam.dim = h1.dim;
  fam.family_id = "heat-type-" + h1.id;
  fam.is_radial = h1.is_radial;
  fam.params["beta"] = beta_exponent;
  auto prof = std::make_shared<Profile>(std::move(h1));
  const int dim = prof->dim;
  fam.eval_point = [prof, beta_exponent, dim](double t, const Vec& z) {
    const double b = std::pow(t, -beta_exponent);
    Vec x{b * z[0], b * z[1], b * z[2]};
    return std::pow(b, dim) * prof->point(x);
  };
  if (fam.is_radial) {
    fam.eval_radial = [prof, beta_exponent, dim](double t, double r) {
      const double b = std::pow(t, -beta_exponent);
      return std::pow(b, dim) * prof->radial(b * r);
    };
  }
  if (std::isfinite(prof->support_radius)) {
    const double rk = prof->support_radius;
    fam.support_fn = [rk, beta_exponent](double t) {
      Support s;
      s.kind = Support::Kind::ball;
      s.r1 = rk * std::pow(t, beta_exponent);
      return s;
    };
  }
  return fam;
}

HeatTypeClass classify_heat_type(const Profile& h1, double p) {
  MomentFunction m(h1, p);
  if (!m.infinite()) return {HeatTypeClass::Kind::finite_moment, 0.0, m.infinity_value()};
  require(h1.is_radial, ErrorCode::invalid_argument,
          "heat type classification: tail fit implemented for radial profiles");
  // fit of r^{N+p} h1(r) over [1e2, 1e4]
  double lo = 1e300, hi = 0.0, acc = 0.0;
  int count = 0;
  for (double lr = 2.0; lr <= 4.0; lr += 0.125) {
    const double r = std::pow(10.0, lr);
    const double v = std::pow(r, h1.dim + p) * h1.radial(r);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    acc += v;
    ++count;
  }
  require(lo > 0.0 && hi / lo < 1.25, ErrorCode::construction,
          "heat type classification: tail is not of critical power type");
  return {HeatTypeClass::Kind::critical_tail, acc / count, 0.0};
}

namespace {

double subordination_kernel_half(const std::function<double(double)>& eta, double x) {
  // int_0^infty h_tau(x) eta(tau) dtau in dimension 1
  const auto f = [&](double tau) {
    return std::exp(-x * x / (4.0 * tau)) / std::sqrt(4.0 * std::numbers::pi * tau) * eta(tau);
  };
  const auto core = quad::adaptive(f, 1e-8, 1.0, 1e-12);
  const auto tail = quad::decades_to_infinity(f, 1.0, 1e-12);
  return core.value + tail.value;
}

}  // namespace

SubordinatorDensity make_subordinator_half() {
  SubordinatorDensity d;
  d.s = 0.5;
  d.density = [](double tau) {
    if (tau <= 0.0) return 0.0;
    return std::exp(-1.0 / (4.0 * tau)) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(tau, 1.5));
  };
  // must reproduce the closed-form s=1/2 kernel through the subordination
  // integral before any use
  double worst = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const double got = subordination_kernel_half(d.density, x);
    const double want = (1.0 / std::numbers::pi) / (1.0 + x * x);
    worst = std::max(worst, std::abs(got - want) / want);
  }
  d.validation_error = worst;
  require(worst < 1e-7, ErrorCode::construction,
          "subordinator density failed to reproduce the s=1/2 kernel (rel err " +
              std::to_string(worst) + ")");
  return d;
}

double SubordinatorDensity::moment(double alpha) const {
  require(alpha < s, ErrorCode::domain, "subordinator moment: requires alpha < s");
  const auto f = [&](double tau) { return std::pow(tau, alpha) * density(tau); };
  const double X = 1e6;
  const auto core = quad::adaptive(f, 1e-10, 1.0, 1e-13);
  const auto mid = quad::log_panels(f, 1.0, X, 1e-13);
  if (!mid.converged) fail(ErrorCode::quadrature, "subordinator moment: quadrature stalled");
  // power-law remainder: eta(tau) = tau^{-3/2} e^{-1/(4 tau)} / (2 sqrt(pi)),
  // expanded to three terms beyond X
  const double c = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  const double tail = c * (std::pow(X, alpha - 0.5) / (0.5 - alpha) -
                           0.25 * std::pow(X, alpha - 1.5) / (1.5 - alpha) +
                           std::pow(X, alpha - 2.5) / (32.0 * (2.5 - alpha)));
  return core.value + mid.value + tail;
}

double SubordinatorDensity::predicted_moment(double alpha) const {
  return gamma_fn(1.0 - alpha / s) / gamma_fn(1.0 - alpha);
}

std::pair<double, double> subordinator_moment_check(double alpha) {
  require(alpha < 0.5, ErrorCode::domain, "subordinator check: alpha < 1/2");
  static const SubordinatorDensity d = make_subordinator_half();
  return {d.moment(alpha), d.predicted_moment(alpha)};
}

}  // namespace nl
