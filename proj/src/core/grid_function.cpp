// SPDX-License-Identifier: Apache-2.0
#include "core/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "core/error.hpp"
#include "core/fft_util.hpp"
#include "core/special_functions.hpp"

namespace nl {

double Geometry::overlap(const Vec& z) const {
  if (kind == GeometryKind::ball) {
    const double d = norm(z, dim);
    const double r = radius;
    if (d >= 2.0 * r) return 0.0;
    switch (dim) {
      case 1: return 2.0 * r - d;
      case 2:
        return 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
      default: {
        // lens volume of two unit balls at distance d
        const double x = d / 2.0;
        return 2.0 * std::numbers::pi / 3.0 * (r - x) * (r - x) * (2.0 * r + x);
      }
    }
  }
  double acc = 1.0;
  for (int k = 0; k < dim; ++k) {
    const double side = hi[k] - lo[k];
    const double ov = side - std::abs(z[k]);
    if (ov <= 0.0) return 0.0;
    acc *= ov;
  }
  return acc;
}

double Geometry::symmetric_difference(const Vec& z) const {
  return 2.0 * (volume - overlap(z));
}

double Geometry::directional_perimeter(const Vec& sigma) const {
  if (kind == GeometryKind::ball) {
    const double s = norm(sigma, dim);
    switch (dim) {
      case 1: return 2.0 * s;
      case 2: return 4.0 * radius * s;
      default: return 2.0 * std::numbers::pi * radius * radius * s;
    }
  }
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    double face = 1.0;
    for (int j = 0; j < dim; ++j)
      if (j != k) face *= hi[j] - lo[j];
    acc += 2.0 * face * std::abs(sigma[k]);
  }
  return acc;
}

std::optional<double> AnalyticFunction::grad_pp_closed_form(double p) const {
  if (is_indicator) {
    if (p == 1.0 && geometry) return geometry->perimeter;
    return std::nullopt;
  }
  if (grad_pp_fn) return grad_pp_fn(p);
  return std::nullopt;
}

namespace {

Geometry box_geometry(int dim, const Vec& lo, const Vec& hi) {
  Geometry g;
  g.kind = dim == 1 ? GeometryKind::interval : GeometryKind::box;
  g.dim = dim;
  g.lo = lo;
  g.hi = hi;
  g.volume = 1.0;
  for (int k = 0; k < dim; ++k) g.volume *= hi[k] - lo[k];
  g.perimeter = 0.0;
  for (int k = 0; k < dim; ++k) {
    double face = 1.0;
    for (int j = 0; j < dim; ++j)
      if (j != k) face *= hi[j] - lo[j];
    g.perimeter += 2.0 * face;
  }
  return g;
}

Geometry ball_geometry(int dim, const Vec& center, double radius) {
  Geometry g;
  g.kind = GeometryKind::ball;
  g.dim = dim;
  g.center = center;
  g.radius = radius;
  g.volume = unit_ball_volume(dim) * std::pow(radius, dim);
  switch (dim) {
    case 1: g.perimeter = 2.0; break;
    case 2: g.perimeter = 2.0 * std::numbers::pi * radius; break;
    default: g.perimeter = 4.0 * std::numbers::pi * radius * radius;
  }
  return g;
}

}  // namespace

AnalyticFunction analytic_gaussian(int dim, const Vec& center, double width) {
  require(width > 0.0, ErrorCode::invalid_argument, "gaussian: width > 0");
  AnalyticFunction f;
  f.dim = dim;
  f.tag = "gaussian";
  f.value = [center, width, dim](const Vec& x) {
    double q = 0.0;
    for (int k = 0; k < dim; ++k) q += (x[k] - center[k]) * (x[k] - center[k]);
    return std::exp(-q / (width * width));
  };
  f.gradient = [center, width, dim, v = f.value](const Vec& x) {
    Vec g{0, 0, 0};
    const double u = v(x);
    for (int k = 0; k < dim; ++k) g[k] = -2.0 * (x[k] - center[k]) / (width * width) * u;
    return g;
  };
  const double reach = width * 5.6;  // exp(-5.6^2) ~ 2e-14
  for (int k = 0; k < dim; ++k) {
    f.preferred_lo[k] = center[k] - reach;
    f.preferred_hi[k] = center[k] + reach;
  }
  f.grad_pp_fn = [dim, width](double p) -> std::optional<double> {
    const double w = width;
    if (p == 2.0) return dim / (w * w) * std::pow(std::numbers::pi * w * w / 2.0, 0.5 * dim);
    if (p == 1.0) {
      // (2/w^2) int |x| exp(-|x|^2/w^2) dx
      switch (dim) {
        case 1: return 2.0;
        case 2: return std::pow(std::numbers::pi, 1.5) * w;
        default: return 4.0 * std::numbers::pi * w * w;
      }
    }
    return std::nullopt;
  };
  return f;
}

AnalyticFunction analytic_box(int dim, const Vec& lo, const Vec& hi) {
  for (int k = 0; k < dim; ++k)
    require(hi[k] > lo[k], ErrorCode::invalid_argument, "box: hi > lo per axis");
  AnalyticFunction f;
  f.dim = dim;
  f.tag = "box-indicator";
  f.is_indicator = true;
  f.value = [lo, hi, dim](const Vec& x) {
    for (int k = 0; k < dim; ++k)
      if (x[k] < lo[k] || x[k] > hi[k]) return 0.0;
    return 1.0;
  };
  f.geometry = box_geometry(dim, lo, hi);
  f.preferred_lo = lo;
  f.preferred_hi = hi;
  return f;
}

AnalyticFunction analytic_ball(int dim, const Vec& center, double radius) {
  require(radius > 0.0, ErrorCode::invalid_argument, "ball: radius > 0");
  AnalyticFunction f;
  f.dim = dim;
  f.tag = "ball-indicator";
  f.is_indicator = true;
  f.value = [center, radius, dim](const Vec& x) {
    double q = 0.0;
    for (int k = 0; k < dim; ++k) q += (x[k] - center[k]) * (x[k] - center[k]);
    return q <= radius * radius ? 1.0 : 0.0;
  };
  f.geometry = ball_geometry(dim, center, radius);
  for (int k = 0; k < dim; ++k) {
    f.preferred_lo[k] = center[k] - radius;
    f.preferred_hi[k] = center[k] + radius;
  }
  return f;
}

AnalyticFunction analytic_tent(int dim, const Vec& center, double halfwidth) {
  require(halfwidth > 0.0, ErrorCode::invalid_argument, "tent: halfwidth > 0");
  AnalyticFunction f;
  f.dim = dim;
  f.tag = "lipschitz-tent";
  f.value = [center, halfwidth, dim](const Vec& x) {
    Vec d{x[0] - center[0], x[1] - center[1], x[2] - center[2]};
    return std::max(0.0, 1.0 - norm(d, dim) / halfwidth);
  };
  f.gradient = [center, halfwidth, dim](const Vec& x) {
    Vec d{x[0] - center[0], x[1] - center[1], x[2] - center[2]};
    const double r = norm(d, dim);
    Vec g{0, 0, 0};
    if (r > 0.0 && r < halfwidth)
      for (int k = 0; k < dim; ++k) g[k] = -d[k] / (r * halfwidth);
    return g;
  };
  for (int k = 0; k < dim; ++k) {
    f.preferred_lo[k] = center[k] - halfwidth;
    f.preferred_hi[k] = center[k] + halfwidth;
  }
  f.grad_pp_fn = [dim, halfwidth](double p) -> std::optional<double> {
    // |grad u| = 1/a on the supporting ball
    return unit_ball_volume(dim) * std::pow(halfwidth, dim) * std::pow(halfwidth, -p);
  };
  return f;
}

GridFunction GridFunction::sample(const AnalyticFunction& fn, double h, double pad) {
  require(h > 0.0, ErrorCode::invalid_argument, "sample: h > 0");
  GridFunction u;
  u.dim_ = fn.dim;
  u.h_ = h;
  u.source_ = std::make_shared<AnalyticFunction>(fn);
  const double margin = pad > 0.0 ? pad : 2.0 * h;
  size_t total = 1;
  for (int k = 0; k < fn.dim; ++k) {
    u.origin_[k] = fn.preferred_lo[k] - margin;
    const double extent = fn.preferred_hi[k] + margin - u.origin_[k];
    u.shape_[k] = std::max(2, static_cast<int>(std::ceil(extent / h)));
    total *= static_cast<size_t>(u.shape_[k]);
  }
  u.values_.resize(total);
  for (int i2 = 0; i2 < u.shape_[2]; ++i2)
    for (int i1 = 0; i1 < u.shape_[1]; ++i1)
      for (int i0 = 0; i0 < u.shape_[0]; ++i0) {
        Vec x{u.node_coord(0, i0), fn.dim > 1 ? u.node_coord(1, i1) : 0.0,
              fn.dim > 2 ? u.node_coord(2, i2) : 0.0};
        const double v = fn.value(x);
        u.values_[u.flat(i0, i1, i2)] = v;
        u.max_abs_ = std::max(u.max_abs_, std::abs(v));
      }
  u.geometry_ = fn.geometry;

  // the box must contain the numerical support: boundary layer below 1e-12 max
  double worst = 0.0;
  for (int i2 = 0; i2 < u.shape_[2]; ++i2)
    for (int i1 = 0; i1 < u.shape_[1]; ++i1)
      for (int i0 = 0; i0 < u.shape_[0]; ++i0) {
        const bool edge = i0 == 0 || i0 == u.shape_[0] - 1 ||
                          (fn.dim > 1 && (i1 == 0 || i1 == u.shape_[1] - 1)) ||
                          (fn.dim > 2 && (i2 == 0 || i2 == u.shape_[2] - 1));
        if (edge) worst = std::max(worst, std::abs(u.values_[u.flat(i0, i1, i2)]));
      }
  require(worst <= 1e-12 * std::max(u.max_abs_, 1e-300), ErrorCode::construction,
          "sample: boundary layer is not numerically zero; enlarge the box");
  return u;
}

Vec GridFunction::box_extent() const {
  Vec e{0, 0, 0};
  for (int k = 0; k < dim_; ++k) e[k] = shape_[k] * h_;
  return e;
}

double GridFunction::value_at_node(const std::array<int, 3>& idx) const {
  for (int k = 0; k < dim_; ++k)
    if (idx[k] < 0 || idx[k] >= shape_[k]) return 0.0;
  return values_[flat(idx[0], dim_ > 1 ? idx[1] : 0, dim_ > 2 ? idx[2] : 0)];
}

double GridFunction::value_at(const Vec& x) const {
  // multilinear interpolation of cell-centered values, zero outside
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) {
    const double s = (x[k] - origin_[k]) / h_ - 0.5;
    const double fl = std::floor(s);
    base[k] = static_cast<int>(fl);
    frac[k] = s - fl;
    if (base[k] < -1 || base[k] > shape_[k] - 1) return 0.0;
  }
  double acc = 0.0;
  const int c2 = dim_ > 2 ? 1 : 0;
  const int c1 = dim_ > 1 ? 1 : 0;
  for (int d2 = 0; d2 <= c2; ++d2)
    for (int d1 = 0; d1 <= c1; ++d1)
      for (int d0 = 0; d0 <= 1; ++d0) {
        const double w = (d0 ? frac[0] : 1.0 - frac[0]) *
                         (c1 ? (d1 ? frac[1] : 1.0 - frac[1]) : 1.0) *
                         (c2 ? (d2 ? frac[2] : 1.0 - frac[2]) : 1.0);
        if (w == 0.0) continue;
        acc += w * value_at_node({base[0] + d0, base[1] + d1, base[2] + d2});
      }
  return acc;
}

bool GridFunction::disjoint_shift(const Vec& z) const {
  for (int k = 0; k < dim_; ++k)
    if (std::abs(z[k]) >= shape_[k] * h_) return true;
  return false;
}

double GridFunction::lp_norm_pp(double p) const {
  double acc = 0.0;
  for (double v : values_) acc += std::pow(std::abs(v), p);
  return acc * std::pow(h_, dim_);
}

double GridFunction::lp_norm(double p) const { return std::pow(lp_norm_pp(p), 1.0 / p); }

double GridFunction::shift_diff_pp(const Vec& z, double p) const {
  bool zero = true;
  for (int k = 0; k < dim_; ++k) zero = zero && z[k] == 0.0;
  if (zero) return 0.0;
  if (disjoint_shift(z)) return 2.0 * lp_norm_pp(p);
  // iterate over the union of the box and its shifted copy
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    const int off = static_cast<int>(std::floor(-z[k] / h_));
    lo[k] = std::min(0, off - 1);
    hi[k] = std::max(shape_[k] - 1, shape_[k] - 1 + off + 1);
  }
  double acc = 0.0;
  for (int i2 = lo[2]; i2 <= hi[2]; ++i2)
    for (int i1 = lo[1]; i1 <= hi[1]; ++i1)
      for (int i0 = lo[0]; i0 <= hi[0]; ++i0) {
        const double ux = value_at_node({i0, i1, i2});
        Vec x{node_coord(0, i0) + z[0], dim_ > 1 ? node_coord(1, i1) + z[1] : 0.0,
              dim_ > 2 ? node_coord(2, i2) + z[2] : 0.0};
        const double us = value_at(x);
        if (us == 0.0 && ux == 0.0) continue;
        acc += std::pow(std::abs(us - ux), p);
      }
  return acc * std::pow(h_, dim_);
}

double GridFunction::shift_diff_norm(const Vec& z, double p) const {
  return std::pow(shift_diff_pp(z, p), 1.0 / p);
}

double GridFunction::gradient_pp(double p) const {
  if (source_ && source_->is_indicator) {
    require(p == 1.0, ErrorCode::domain,
            "gradient_pp: indicator functions are BV only; p > 1 not defined");
    require(geometry_.has_value(), ErrorCode::invalid_argument,
            "gradient_pp: indicator without geometric metadata");
    return geometry_->perimeter;
  }
  double acc = 0.0;
  for (int i2 = 0; i2 < shape_[2]; ++i2)
    for (int i1 = 0; i1 < shape_[1]; ++i1)
      for (int i0 = 0; i0 < shape_[0]; ++i0) {
        double g2 = 0.0;
        for (int k = 0; k < dim_; ++k) {
          std::array<int, 3> up{i0, i1, i2}, dn{i0, i1, i2};
          up[k] += 1;
          dn[k] -= 1;
          const double d = (value_at_node(up) - value_at_node(dn)) / (2.0 * h_);
          g2 += d * d;
        }
        acc += std::pow(g2, 0.5 * p);
      }
  return acc * std::pow(h_, dim_);
}

double GridFunction::directional_pp(const Vec& sigma, double p) const {
  if (source_ && source_->is_indicator) {
    require(p == 1.0, ErrorCode::domain,
            "directional_pp: indicator functions are BV only; p > 1 not defined");
    require(geometry_.has_value(), ErrorCode::invalid_argument,
            "directional_pp: indicator without geometric metadata");
    return geometry_->directional_perimeter(sigma);
  }
  double acc = 0.0;
  for (int i2 = 0; i2 < shape_[2]; ++i2)
    for (int i1 = 0; i1 < shape_[1]; ++i1)
      for (int i0 = 0; i0 < shape_[0]; ++i0) {
        double d = 0.0;
        for (int k = 0; k < dim_; ++k) {
          if (sigma[k] == 0.0) continue;
          std::array<int, 3> up{i0, i1, i2}, dn{i0, i1, i2};
          up[k] += 1;
          dn[k] -= 1;
          d += sigma[k] * (value_at_node(up) - value_at_node(dn)) / (2.0 * h_);
        }
        acc += std::pow(std::abs(d), p);
      }
  return acc * std::pow(h_, dim_);
}

double FreqTable::dual_cell() const {
  double c = 1.0;
  for (int k = 0; k < dim; ++k) c *= dxi[k];
  return c;
}

double FreqTable::xi_norm2(int i0, int i1, int i2) const {
  const std::array<int, 3> idx{i0, i1, i2};
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    int m = idx[k];
    if (m > shape[k] / 2) m -= shape[k];
    const double xi = m * dxi[k];
    acc += xi * xi;
  }
  return acc;
}

double FreqTable::l2_norm_pp() const {
  double acc = 0.0;
  for (double v : power) acc += v;
  return acc * dual_cell();
}

FreqTable dft(const GridFunction& u, double pad_factor) {
  require(pad_factor >= 2.0, ErrorCode::invalid_argument, "dft: box padded to >= 2x support");
  FreqTable out;
  out.dim = u.dim();
  size_t total = 1;
  std::array<int, 3> padded{1, 1, 1};
  for (int k = 0; k < u.dim(); ++k) {
    padded[k] = static_cast<int>(std::ceil(u.shape()[k] * pad_factor));
    padded[k] += padded[k] % 2;  // even sizes keep the wrap bookkeeping simple
    total *= static_cast<size_t>(padded[k]);
    out.dxi[k] = 1.0 / (padded[k] * u.spacing());
  }
  out.shape = padded;
  std::vector<std::complex<double>> buf(total, 0.0);
  const auto& shape = u.shape();
  for (int i2 = 0; i2 < shape[2]; ++i2)
    for (int i1 = 0; i1 < shape[1]; ++i1)
      for (int i0 = 0; i0 < shape[0]; ++i0) {
        const size_t dst = static_cast<size_t>(i0) +
                           static_cast<size_t>(padded[0]) *
                               (static_cast<size_t>(i1) + static_cast<size_t>(padded[1]) * i2);
        buf[dst] = u.values()[static_cast<size_t>(i0) +
                              static_cast<size_t>(shape[0]) *
                                  (static_cast<size_t>(i1) +
                                   static_cast<size_t>(shape[1]) * i2)];
      }
  fftu::dft(buf, u.dim(), padded, -1);
  out.power.resize(total);
  const double cell = std::pow(u.spacing(), u.dim());
  for (size_t i = 0; i < total; ++i) {
    const double mag = std::abs(buf[i]) * cell;
    out.power[i] = mag * mag;
  }
  return out;
}

}  // namespace nl
