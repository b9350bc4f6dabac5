// SPDX-License-Identifier: Apache-2.0
#include "core/heat_content.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <algorithm>

#include "core/constants.hpp"
#include "core/error.hpp"
#include "core/fft_util.hpp"
#include "core/frac_heat_table.hpp"
#include "core/kernels.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace nl {

double RasterSet::volume_from_mask() const {
  double count = 0.0;
  for (auto m : mask) count += m ? 1.0 : 0.0;
  return count * std::pow(h, dim);
}

RasterSet RasterSet::from_geometry(const Geometry& geometry, double h) {
  require(h > 0.0, ErrorCode::invalid_argument, "raster: h > 0");
  require(geometry.dim <= 2, ErrorCode::invalid_argument, "raster: N in {1,2}");
  RasterSet set;
  set.dim = geometry.dim;
  set.h = h;
  set.geometry = geometry;
  Vec lo{0, 0, 0}, hi{0, 0, 0};
  if (geometry.kind == GeometryKind::ball) {
    for (int k = 0; k < set.dim; ++k) {
      lo[k] = geometry.center[k] - geometry.radius;
      hi[k] = geometry.center[k] + geometry.radius;
    }
  } else {
    lo = geometry.lo;
    hi = geometry.hi;
  }
  size_t total = 1;
  for (int k = 0; k < set.dim; ++k) {
    set.origin[k] = lo[k];
    set.shape[k] = std::max(1, static_cast<int>(std::llround((hi[k] - lo[k]) / h)));
    total *= static_cast<size_t>(set.shape[k]);
  }
  set.mask.resize(total);
  for (int i1 = 0; i1 < set.shape[1]; ++i1)
    for (int i0 = 0; i0 < set.shape[0]; ++i0) {
      const Vec x{set.origin[0] + (i0 + 0.5) * h,
                  set.dim > 1 ? set.origin[1] + (i1 + 0.5) * h : 0.0, 0.0};
      bool inside;
      if (geometry.kind == GeometryKind::ball) {
        double q = 0.0;
        for (int k = 0; k < set.dim; ++k)
          q += (x[k] - geometry.center[k]) * (x[k] - geometry.center[k]);
        inside = q <= geometry.radius * geometry.radius;
      } else {
        inside = true;
        for (int k = 0; k < set.dim; ++k)
          if (x[k] < geometry.lo[k] || x[k] > geometry.hi[k]) inside = false;
      }
      set.mask[static_cast<size_t>(i0) + static_cast<size_t>(set.shape[0]) * i1] =
          inside ? 1 : 0;
    }
  return set;
}

RasterSet RasterSet::from_pgm(const std::string& path, double spacing) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "pgm: cannot open " + path);
  std::string magic;
  in >> magic;
  require(magic == "P5", ErrorCode::io, "pgm: expected binary P5 magic");
  const auto next_int = [&in, &path]() {
    // skip whitespace and '#' comment lines
    int c = in.peek();
    while (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') {
      if (c == '#') in.ignore(1 << 20, '\n');
      else in.ignore(1);
      c = in.peek();
    }
    long v = -1;
    in >> v;
    require(v >= 0, ErrorCode::io, "pgm: malformed header in " + path);
    return v;
  };
  const long width = next_int();
  const long height = next_int();
  const long maxval = next_int();
  require(maxval == 255, ErrorCode::io, "pgm: maxval must be 255");
  in.ignore(1);  // single whitespace before the raster
  std::vector<std::uint8_t> raw(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  require(in.gcount() == static_cast<std::streamsize>(raw.size()), ErrorCode::io,
          "pgm: truncated raster");
  RasterSet set;
  set.dim = 2;
  set.h = spacing;
  set.shape = {static_cast<int>(width), static_cast<int>(height), 1};
  set.mask.resize(raw.size());
  // PGM rows go top-down; flip so index 1 grows upward
  for (long row = 0; row < height; ++row)
    for (long col = 0; col < width; ++col)
      set.mask[static_cast<size_t>(col) + static_cast<size_t>(width) * (height - 1 - row)] =
          raw[static_cast<size_t>(col) + static_cast<size_t>(width) * row] >= 128 ? 1 : 0;
  return set;
}

HeatContent::HeatContent(const RasterSet& set) : set_(set) {
  require(set.dim >= 1 && set.dim <= 2, ErrorCode::invalid_argument, "heat content: N in {1,2}");
  volume_ = set.volume_from_mask();
  std::vector<double> data(set.mask.size());
  for (size_t i = 0; i < set.mask.size(); ++i) data[i] = set.mask[i] ? 1.0 : 0.0;
  corr_ = fftu::autocorrelation(data, set.dim, set.shape, pad_shape_);
}

double HeatContent::corr_at(int m0, int m1) const {
  const auto wrap = [](int m, int n) {
    m %= n;
    return m < 0 ? m + n : m;
  };
  return corr_[static_cast<size_t>(wrap(m0, pad_shape_[0])) +
               static_cast<size_t>(pad_shape_[0]) * wrap(m1, pad_shape_[1])];
}

namespace {

// G'' = 1D heat kernel; V(m) = G((m+1)h) - 2G(mh) + G((m-1)h) is the exact
// cell-pair integral of h_t over two cells at lattice distance m
double cell_pair_weight(double t, double h, int m) {
  const auto G = [t](double z) {
    return 0.5 * z * std::erf(z / (2.0 * std::sqrt(t))) +
           std::sqrt(t / std::numbers::pi) * std::exp(-z * z / (4.0 * t));
  };
  return G((m + 1) * h) - 2.0 * G(m * h) + G((m - 1) * h);
}

}  // namespace

double HeatContent::value(double t) const {
  require(t > 0.0, ErrorCode::invalid_argument, "heat content: t > 0");
  if (std::sqrt(4.0 * t) < set_.h)
    fail(ErrorCode::resolution, "heat content: sqrt(4t) < h, kernel unresolved by the grid");
  const double h = set_.h;
  const int reach = static_cast<int>(std::ceil(8.0 * std::sqrt(t) / h)) + 2;
  const int m0_max = std::min(set_.shape[0] - 1, reach);
  std::vector<double> v0(m0_max + 1);
  for (int m = 0; m <= m0_max; ++m) v0[m] = cell_pair_weight(t, h, m);
  if (set_.dim == 1) {
    double acc = 0.0;
    for (int m = -m0_max; m <= m0_max; ++m) acc += corr_at(m, 0) * v0[std::abs(m)];
    return acc;
  }
  const int m1_max = std::min(set_.shape[1] - 1, reach);
  std::vector<double> v1(m1_max + 1);
  for (int m = 0; m <= m1_max; ++m) v1[m] = cell_pair_weight(t, h, m);
  double acc = 0.0;
  for (int m1 = -m1_max; m1 <= m1_max; ++m1)
    for (int m0 = -m0_max; m0 <= m0_max; ++m0)
      acc += corr_at(m0, m1) * v0[std::abs(m0)] * v1[std::abs(m1)];
  return acc;
}

double HeatContent::value_fractional(double t, double s) const {
  require(t > 0.0, ErrorCode::invalid_argument, "heat content: t > 0");
  const double kernel_scale = std::pow(t, 1.0 / (2.0 * s));
  if (kernel_scale < set_.h)
    fail(ErrorCode::resolution, "fractional heat content: t^{1/2s} < h, kernel unresolved");
  const KernelFamily kernel = make_frac_heat(set_.dim, s);
  const double h = set_.h;
  const double cell = std::pow(h, set_.dim);
  // Q = |E| - 1/2 int Delta_1(z) k_t(z) dz with Delta_1 from the mask pair
  // counts; the beyond-lattice remainder uses Delta_1 = 2|E| and the kernel's
  // unit mass.
  double energy = 0.0;
  double covered = 0.0;
  const double c00 = corr_at(0, 0);
  const int n0 = set_.shape[0], n1 = set_.dim > 1 ? set_.shape[1] : 1;
  for (int m1 = -(n1 - 1); m1 <= n1 - 1; ++m1)
    for (int m0 = -(n0 - 1); m0 <= n0 - 1; ++m0) {
      const Vec z{m0 * h, m1 * h, 0.0};
      const double w = kernel.evaluate(t, z) * cell;
      covered += w;
      if (m0 == 0 && m1 == 0) continue;
      const double delta1 = 2.0 * (c00 - corr_at(m0, m1)) * cell;
      energy += delta1 * w;
    }
  energy += 2.0 * volume_ * std::max(0.0, 1.0 - covered);
  return volume_ - 0.5 * energy;
}

double interval_heat_content_exact(double length, double t) {
  const double a = length / (2.0 * std::sqrt(t));
  return length * std::erf(a) -
         2.0 * std::sqrt(t / std::numbers::pi) * (1.0 - std::exp(-a * a));
}

HeatContentCurve heat_content_curve(const RasterSet& set, const std::vector<double>& t_list) {
  HeatContent hc(set);
  HeatContentCurve curve;
  curve.method = "fft-convolution";
  curve.volume = hc.volume();
  curve.t = t_list;
  curve.q.resize(t_list.size());
  parallel_for(static_cast<int>(t_list.size()),
               [&](int i) { curve.q[i] = hc.value(t_list[i]); });
  return curve;
}

HeatContentCurve heat_content_curve_exact_interval(double length,
                                                   const std::vector<double>& t_list) {
  HeatContentCurve curve;
  curve.method = "closed-form";
  curve.volume = length;
  for (double t : t_list) {
    curve.t.push_back(t);
    curve.q.push_back(interval_heat_content_exact(length, t));
  }
  return curve;
}

HeatContentCurve frac_heat_content_curve(const RasterSet& set, double s,
                                         const std::vector<double>& t_list) {
  HeatContent hc(set);
  HeatContentCurve curve;
  curve.method = "frac-tabulated";
  curve.volume = hc.volume();
  for (double t : t_list) {
    curve.t.push_back(t);
    curve.q.push_back(hc.value_fractional(t, s));
  }
  return curve;
}

PerimeterFit perimeter_from_heat(const HeatContentCurve& curve, double volume) {
  const size_t n = curve.t.size();
  require(n >= 6, ErrorCode::invalid_argument, "perimeter fit: need at least 6 samples");
  const auto [tmin, tmax] = std::minmax_element(curve.t.begin(), curve.t.end());
  require(*tmax / *tmin >= 100.0, ErrorCode::invalid_argument,
          "perimeter fit: t must span at least 2 decades");
  const bool with_t32 = n >= 8;
  const int cols = with_t32 ? 3 : 2;

  // normal equations with column scaling
  std::vector<std::array<double, 3>> X(n);
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) {
    X[i] = {std::sqrt(curve.t[i]), curve.t[i], std::pow(curve.t[i], 1.5)};
    y[i] = volume - curve.q[i];
  }
  std::array<double, 3> scale{0, 0, 0};
  for (int c = 0; c < cols; ++c) {
    for (size_t i = 0; i < n; ++i) scale[c] += X[i][c] * X[i][c];
    scale[c] = std::sqrt(scale[c]);
    require(scale[c] > 0.0, ErrorCode::invalid_argument, "perimeter fit: degenerate column");
    for (size_t i = 0; i < n; ++i) X[i][c] /= scale[c];
  }
  double A[3][3] = {{0}};
  double b[3] = {0, 0, 0};
  for (size_t i = 0; i < n; ++i)
    for (int r = 0; r < cols; ++r) {
      b[r] += X[i][r] * y[i];
      for (int c = 0; c < cols; ++c) A[r][c] += X[i][r] * X[i][c];
    }
  // Gaussian elimination with partial pivot; the normalized Gram matrix has
  // unit diagonal, so a tiny pivot means collinear columns
  int piv[3] = {0, 1, 2};
  for (int k = 0; k < cols; ++k) {
    int pk = k;
    for (int r = k + 1; r < cols; ++r)
      if (std::abs(A[r][k]) > std::abs(A[pk][k])) pk = r;
    if (pk != k) {
      std::swap(A[pk], A[k]);
      std::swap(b[pk], b[k]);
      std::swap(piv[pk], piv[k]);
    }
    if (std::abs(A[k][k]) < 1e-10)
      fail(ErrorCode::construction, "perimeter fit: collinear design (ill-conditioned)");
    for (int r = k + 1; r < cols; ++r) {
      const double f = A[r][k] / A[k][k];
      for (int c = k; c < cols; ++c) A[r][c] -= f * A[k][c];
      b[r] -= f * b[k];
    }
  }
  double coef[3] = {0, 0, 0};
  for (int k = cols - 1; k >= 0; --k) {
    double acc = b[k];
    for (int c = k + 1; c < cols; ++c) acc -= A[k][c] * coef[c];
    coef[k] = acc / A[k][k];
  }
  PerimeterFit fit;
  fit.sqrt_coeff = coef[0] / scale[0];
  fit.linear_coeff = coef[1] / scale[1];
  fit.t32_coeff = with_t32 ? coef[2] / scale[2] : 0.0;
  fit.used_t32 = with_t32;
  fit.perimeter = fit.sqrt_coeff * std::sqrt(std::numbers::pi);
  fit.residuals.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double model = fit.sqrt_coeff * std::sqrt(curve.t[i]) +
                         fit.linear_coeff * curve.t[i] +
                         fit.t32_coeff * std::pow(curve.t[i], 1.5);
    fit.residuals[i] = y[i] - model;
    if (y[i] != 0.0)
      fit.max_rel_residual = std::max(fit.max_rel_residual, std::abs(fit.residuals[i] / y[i]));
  }
  return fit;
}

double fourier_deficit(const FreqTable& freq, double t, const FourierSymbol& symbol) {
  require(t >= 0.0, ErrorCode::invalid_argument, "fourier deficit: t >= 0");
  const double cell = freq.dual_cell();
  double acc = 0.0;
  size_t i = 0;
  for (int i2 = 0; i2 < freq.shape[2]; ++i2)
    for (int i1 = 0; i1 < (freq.dim > 1 ? freq.shape[1] : 1); ++i1)
      for (int i0 = 0; i0 < freq.shape[0]; ++i0, ++i) {
        const double lam =
            symbol.amplitude *
            std::pow(4.0 * std::numbers::pi * std::numbers::pi * freq.xi_norm2(i0, i1, i2),
                     symbol.s);
        acc += (1.0 - std::exp(-lam * t)) * freq.power[i];
      }
  return acc * cell;
}

double fourier_deficit(const GridFunction& u, double t, const FourierSymbol& symbol) {
  return fourier_deficit(dft(u), t, symbol);
}

double dirichlet_form(const FreqTable& freq, const FourierSymbol& symbol) {
  const double cell = freq.dual_cell();
  double acc = 0.0;
  size_t i = 0;
  for (int i2 = 0; i2 < freq.shape[2]; ++i2)
    for (int i1 = 0; i1 < (freq.dim > 1 ? freq.shape[1] : 1); ++i1)
      for (int i0 = 0; i0 < freq.shape[0]; ++i0, ++i) {
        const double lam =
            symbol.amplitude *
            std::pow(4.0 * std::numbers::pi * std::numbers::pi * freq.xi_norm2(i0, i1, i2),
                     symbol.s);
        acc += lam * freq.power[i];
      }
  return acc * cell;
}

double dirichlet_form(const GridFunction& u, const FourierSymbol& symbol) {
  return dirichlet_form(dft(u), symbol);
}

EnergySample heat_content_energy(ShiftEnergy& shift, double t, const std::optional<double>& frac_s,
                                 const EnergyOptions& opt) {
  const int dim = shift.function().dim();
  const KernelFamily kernel = frac_s ? make_frac_heat(dim, *frac_s) : make_heat(dim);
  return convolution_energy(shift, kernel, t, opt);
}

EnergySample frac_heat_content_energy(ShiftEnergy& shift, double s, double t,
                                      const EnergyOptions& opt) {
  EnergySample sample = heat_content_energy(shift, t, s, opt);
  const double psi = scaling_psi(s, shift.p(), t);
  sample.value /= psi;
  sample.err_quad /= psi;
  return sample;
}

}  // namespace nl
