// SPDX-License-Identifier: Apache-2.0
#include "core/frac_heat_table.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"
#include "core/special_functions.hpp"

namespace nl {

namespace {

// Radial inversion integrands in the variable u = 2 pi |xi|:
//   N=1: h(r) = (1/pi)      int_0^inf cos(ru)   exp(-u^{2s}) du
//   N=2: h(r) = (1/(2pi))   int_0^inf J0(ru) u  exp(-u^{2s}) du
//   N=3: h(r) = (1/(2pi^2 r)) int_0^inf sin(ru) u exp(-u^{2s}) du
double invert_at(int dim, double s, double r) {
  const double ts = 2.0 * s;
  const auto envelope = [ts](double u) { return std::exp(-std::pow(u, ts)); };
  const double u_decay = std::pow(41.0, 1.0 / ts);  // exp(-u^{2s}) ~ 1e-18 beyond

  if (r * u_decay < 20.0) {
    // few oscillations: plain adaptive quadrature on the decaying range
    quad::Fn f;
    switch (dim) {
      case 1: f = [&](double u) { return std::cos(r * u) * envelope(u); }; break;
      case 2: f = [&](double u) { return std::cyl_bessel_j(0.0, r * u) * u * envelope(u); }; break;
      default: f = [&](double u) { return (r > 0 ? std::sin(r * u) / r : u) * u * envelope(u); };
    }
    const auto res = quad::adaptive(f, 0.0, u_decay, 1e-13);
    const double pref = dim == 1   ? 1.0 / std::numbers::pi
                        : dim == 2 ? 1.0 / (2.0 * std::numbers::pi)
                                   : 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    return pref * res.value;
  }

  // many oscillations: panels between sign changes + averaged partial sums
  quad::Fn f;
  std::function<double(int)> cut;
  switch (dim) {
    case 1:
      f = [&](double u) { return std::cos(r * u) * envelope(u); };
      cut = [r](int k) { return k == 0 ? 0.0 : (k - 0.5) * std::numbers::pi / r; };
      break;
    case 2:
      f = [&](double u) { return std::cyl_bessel_j(0.0, r * u) * u * envelope(u); };
      cut = [r](int k) { return k == 0 ? 0.0 : (k - 0.25) * std::numbers::pi / r; };
      break;
    default:
      f = [&](double u) { return std::sin(r * u) / r * u * envelope(u); };
      cut = [r](int k) { return k * std::numbers::pi / r; };
  }
  const double value = quad::oscillatory(f, cut, 4000, 16);
  const double pref = dim == 1   ? 1.0 / std::numbers::pi
                      : dim == 2 ? 1.0 / (2.0 * std::numbers::pi)
                                 : 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
  return pref * value;
}

double peak_value(int dim, double s) {
  // closed forms of the inversion at r = 0
  const double ts = 2.0 * s;
  switch (dim) {
    case 1: return gamma_fn(1.0 + 1.0 / ts) / std::numbers::pi;
    case 2: return gamma_fn(2.0 / ts) / (ts * 2.0 * std::numbers::pi);
    default:
      return gamma_fn(3.0 / ts) / (ts * 2.0 * std::numbers::pi * std::numbers::pi);
  }
}

}  // namespace

FracHeatTable::FracHeatTable(int dim, double s, const FracHeatTableParams& params)
    : dim_(dim), s_(s), params_(params) {
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "frac heat table: N in {1,2,3}");
  require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "frac heat table: s in (0,1)");
  require(params.r_lo > 0.0 && params.r_hi > 10.0 * params.r_lo, ErrorCode::invalid_argument,
          "frac heat table: bad radius range");

  peak_ = peak_value(dim, s);

  const double l0 = std::log(params.r_lo), l1 = std::log(params.r_hi);
  const int n = 1 + static_cast<int>(std::ceil((l1 - l0) / std::numbers::ln10 *
                                               params.points_per_decade));
  const double step = (l1 - l0) / (n - 1);
  log_r_.resize(n);
  log_h_.resize(n);
  for (int i = 0; i < n; ++i) {
    log_r_[i] = l0 + i * step;
    const double r = std::exp(log_r_[i]);
    double h = invert_at(dim, s, r);
    if (h < -params.negativity_tol * peak_)
      fail(ErrorCode::construction,
           "frac heat table: inversion produced negative values (insufficient resolution) at r=" +
               std::to_string(r));
    if (h < 1e-280) h = 1e-280;  // floor; far below anything the table is queried for
    log_h_[i] = std::log(h);
  }

  // Hermite slopes in log-log space: 4th-order centered estimates with a
  // monotone limiter where the data locally decreases.
  slopes_.resize(n);
  auto fd = [&](int i) { return (log_h_[i + 1] - log_h_[i]) / step; };
  for (int i = 0; i < n; ++i) {
    double m;
    if (i >= 2 && i <= n - 3) {
      m = (-log_h_[i + 2] + 8.0 * log_h_[i + 1] - 8.0 * log_h_[i - 1] + log_h_[i - 2]) /
          (12.0 * step);
    } else if (i == 0) {
      m = fd(0);
    } else if (i == n - 1) {
      m = fd(n - 2);
    } else {
      m = 0.5 * (fd(i - 1) + fd(i));
    }
    slopes_[i] = m;
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double d = fd(i);
    if (d < 0.0) {  // keep the decreasing stretches free of overshoot
      slopes_[i] = std::max(std::min(slopes_[i], 0.0), 3.0 * d);
      slopes_[i + 1] = std::max(std::min(slopes_[i + 1], 0.0), 3.0 * d);
    }
  }
  tail_slope_ = slopes_.back();
}

double FracHeatTable::interp_log(double lr) const {
  const double step = log_r_[1] - log_r_[0];
  const int n = static_cast<int>(log_r_.size());
  int i = static_cast<int>(std::floor((lr - log_r_[0]) / step));
  i = std::max(0, std::min(n - 2, i));
  const double x = (lr - log_r_[i]) / step;
  const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
  const double h10 = x * (1 - x) * (1 - x);
  const double h01 = x * x * (3 - 2 * x);
  const double h11 = x * x * (x - 1);
  return h00 * log_h_[i] + h10 * step * slopes_[i] + h01 * log_h_[i + 1] +
         h11 * step * slopes_[i + 1];
}

double FracHeatTable::value_t1(double r) const {
  r = std::abs(r);
  if (r < params_.r_lo) {
    // the kernel is even and analytic at 0: quadratic blend to the peak
    const double h_lo = std::exp(log_h_.front());
    const double frac = r / params_.r_lo;
    return peak_ + (h_lo - peak_) * frac * frac;
  }
  if (r > params_.r_hi) {
    // extend with the measured log-log slope of the outer end
    return std::exp(log_h_.back() + tail_slope_ * (std::log(r) - log_r_.back()));
  }
  return std::exp(interp_log(std::log(r)));
}

double FracHeatTable::value(double t, double r) const {
  require(t > 0.0, ErrorCode::invalid_argument, "frac heat: t > 0");
  const double scale = std::pow(t, -1.0 / (2.0 * s_));
  return std::pow(t, -dim_ / (2.0 * s_)) * value_t1(scale * r);
}

double FracHeatTable::fitted_tail_coefficient() const {
  // r^{N+2s} h(r) approaches its limit with corrections in powers of
  // r^{-2s}; fit a + b r^{-2s} + c r^{-4s} over the last two tabulated
  // decades and return the extrapolated constant
  const double l1 = log_r_.back();
  const double l0 = l1 - 2.0 * std::numbers::ln10;
  double A[3][3] = {{0}};
  double rhs[3] = {0, 0, 0};
  int count = 0;
  for (size_t i = 0; i < log_r_.size(); ++i) {
    if (log_r_[i] < l0) continue;
    const double g = std::exp((dim_ + 2.0 * s_) * log_r_[i] + log_h_[i]);
    const double x[3] = {1.0, std::exp(-2.0 * s_ * log_r_[i]),
                         std::exp(-4.0 * s_ * log_r_[i])};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += x[r] * g;
      for (int cc = 0; cc < 3; ++cc) A[r][cc] += x[r] * x[cc];
    }
    ++count;
  }
  require(count >= 8, ErrorCode::internal, "tail fit: not enough samples");
  for (int k = 0; k < 3; ++k) {
    int pk = k;
    for (int r = k + 1; r < 3; ++r)
      if (std::abs(A[r][k]) > std::abs(A[pk][k])) pk = r;
    std::swap(A[pk], A[k]);
    std::swap(rhs[pk], rhs[k]);
    require(std::abs(A[k][k]) > 1e-14, ErrorCode::internal, "tail fit: singular system");
    for (int r = k + 1; r < 3; ++r) {
      const double f = A[r][k] / A[k][k];
      for (int cc = k; cc < 3; ++cc) A[r][cc] -= f * A[k][cc];
      rhs[r] -= f * rhs[k];
    }
  }
  double coef[3];
  for (int k = 2; k >= 0; --k) {
    double acc = rhs[k];
    for (int cc = k + 1; cc < 3; ++cc) acc -= A[k][cc] * coef[cc];
    coef[k] = acc / A[k][k];
  }
  return coef[0];
}

double FracHeatTable::envelope_constant() const {
  double c = 1.0;
  for (size_t i = 0; i < log_r_.size(); ++i) {
    const double r = std::exp(log_r_[i]);
    const double env = std::pow(1.0 + r * r, -0.5 * (dim_ + 2.0 * s_));
    const double ratio = std::exp(log_h_[i]) / env;
    c = std::max(c, std::max(ratio, 1.0 / ratio));
  }
  return c;
}

std::shared_ptr<const FracHeatTable> shared_frac_heat_table(int dim, double s) {
  static std::map<std::pair<int, long long>, std::shared_ptr<const FracHeatTable>> cache;
  static std::mutex mu;
  const auto key = std::make_pair(dim, static_cast<long long>(std::llround(s * 1e12)));
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_shared<FracHeatTable>(dim, s)).first;
  return it->second;
}

}  // namespace nl
