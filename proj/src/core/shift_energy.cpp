// SPDX-License-Identifier: Apache-2.0
#include "core/shift_energy.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/fft_util.hpp"

namespace nl {

ShiftEnergy::ShiftEnergy(const GridFunction& u, double p) : u_(u), p_(p) {
  require(p >= 1.0, ErrorCode::invalid_argument, "shift energy: p >= 1");
  two_lp_pp_ = 2.0 * u.lp_norm_pp(p);
  const Vec extent = u.box_extent();
  disjoint_radius_ = norm(extent, u.dim());
  grad_pp_ = u.gradient_pp(p);

  if (p == 1.0 && u.geometry().has_value()) {
    method_ = Method::geometry;
    return;
  }
  if (p == 2.0) {
    method_ = Method::autocorr;
    const auto corr =
        fftu::autocorrelation(u.values(), u.dim(), u.shape(), pad_shape_);
    const double cell = std::pow(u.spacing(), u.dim());
    const double norm_pp = 0.5 * two_lp_pp_;
    size_t total = 1;
    for (int k = 0; k < u.dim(); ++k) total *= static_cast<size_t>(pad_shape_[k]);
    g_table_.assign(total, 0.0);
    const double h2 = u.spacing() * u.spacing();
    for (int m2 = 0; m2 < pad_shape_[2]; ++m2)
      for (int m1 = 0; m1 < pad_shape_[1]; ++m1)
        for (int m0 = 0; m0 < pad_shape_[0]; ++m0) {
          const size_t i = static_cast<size_t>(m0) +
                           static_cast<size_t>(pad_shape_[0]) *
                               (static_cast<size_t>(m1) +
                                static_cast<size_t>(pad_shape_[1]) * m2);
          // wrapped (signed) lattice shift
          int s0 = m0 > pad_shape_[0] / 2 ? m0 - pad_shape_[0] : m0;
          int s1 = m1 > pad_shape_[1] / 2 ? m1 - pad_shape_[1] : m1;
          int s2 = m2 > pad_shape_[2] / 2 ? m2 - pad_shape_[2] : m2;
          const double z2 = h2 * (static_cast<double>(s0) * s0 +
                                  static_cast<double>(s1) * s1 +
                                  static_cast<double>(s2) * s2);
          const double d = std::max(0.0, 2.0 * (norm_pp - corr[i] * cell));
          g_table_[i] = z2 > 0.0 ? d / z2 : 0.0;
        }
    // |z| < h cell: fill the origin with the mean of the unit-offset values
    double acc = 0.0;
    int count = 0;
    for (int k = 0; k < u.dim(); ++k) {
      std::array<int, 3> plus{0, 0, 0};
      plus[k] = 1;
      acc += table_at(plus[0], plus[1], plus[2]);
      acc += table_at(-plus[0], -plus[1], -plus[2]);
      count += 2;
    }
    const size_t origin = 0;
    g_table_[origin] = acc / count;
    return;
  }
  method_ = Method::direct;
}

bool ShiftEnergy::resolution_free() const { return method_ == Method::geometry; }

const char* ShiftEnergy::method_name() const {
  switch (method_) {
    case Method::geometry: return "geometry";
    case Method::autocorr: return "autocorrelation";
    default: return "direct";
  }
}

double ShiftEnergy::table_at(int m0, int m1, int m2) const {
  const auto wrap = [](int m, int n) {
    m %= n;
    return m < 0 ? m + n : m;
  };
  const size_t i = static_cast<size_t>(wrap(m0, pad_shape_[0])) +
                   static_cast<size_t>(pad_shape_[0]) *
                       (static_cast<size_t>(wrap(m1, pad_shape_[1])) +
                        static_cast<size_t>(pad_shape_[1]) * wrap(m2, pad_shape_[2]));
  return g_table_[i];
}

double ShiftEnergy::autocorr_pp(const Vec& z) const {
  const double h = u_.spacing();
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int k = 0; k < u_.dim(); ++k) {
    const double s = z[k] / h;
    const double fl = std::floor(s);
    base[k] = static_cast<int>(fl);
    frac[k] = s - fl;
  }
  const int c2 = u_.dim() > 2 ? 1 : 0;
  const int c1 = u_.dim() > 1 ? 1 : 0;
  double g = 0.0;
  for (int d2 = 0; d2 <= c2; ++d2)
    for (int d1 = 0; d1 <= c1; ++d1)
      for (int d0 = 0; d0 <= 1; ++d0) {
        const double w = (d0 ? frac[0] : 1.0 - frac[0]) *
                         (c1 ? (d1 ? frac[1] : 1.0 - frac[1]) : 1.0) *
                         (c2 ? (d2 ? frac[2] : 1.0 - frac[2]) : 1.0);
        if (w == 0.0) continue;
        g += w * table_at(base[0] + d0, base[1] + d1, base[2] + d2);
      }
  const double z2 = dot(z, z, u_.dim());
  return g * z2;
}

double ShiftEnergy::pp(const Vec& z) const {
  if (u_.disjoint_shift(z)) return two_lp_pp_;
  switch (method_) {
    case Method::geometry: return u_.geometry()->symmetric_difference(z);
    case Method::autocorr: return autocorr_pp(z);
    case Method::direct: break;
  }
  // memoized direct evaluation (quantized key)
  size_t key = 1469598103934665603ull;
  for (int k = 0; k < u_.dim(); ++k) {
    const auto q = static_cast<long long>(std::llround(z[k] * 248104.0 / u_.spacing()));
    key ^= static_cast<size_t>(q) + 0x9e3779b97f4a7c15ull + (key << 6) + (key >> 2);
  }
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = u_.shift_diff_pp(z, p_);
  cache_.emplace(key, v);
  return v;
}

}  // namespace nl
