// SPDX-License-Identifier: Apache-2.0
#include "core/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "core/error.hpp"

namespace nl::quad {

namespace {

Rule compute_gauss_legendre(int n) {
  Rule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.x[i - 1] = -z;
    rule.x[n - i] = z;
    rule.w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[n - i] = rule.w[i - 1];
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  require(n >= 1 && n <= 256, ErrorCode::invalid_argument, "gauss_legendre: order out of range");
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double panel(const Fn& f, double a, double b, int order) {
  const Rule& r = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

namespace {

void adaptive_rec(const Fn& f, double a, double b, double whole, double tol_abs, double rel_tol,
                  double& scale, int depth, int max_depth, double& value, double& err) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid);
  const double right = panel(f, mid, b);
  const double delta = left + right - whole;
  // The floor tracks the largest panel seen so far: when the root estimate
  // misses a spike entirely, tol_abs is meaningless and refinement would
  // otherwise chase denormal-sized deltas across dead regions.
  scale = std::max({scale, std::abs(left), std::abs(right)});
  const double local_tol =
      std::max({tol_abs, rel_tol * scale * std::pow(0.5, depth), 1e-17 * scale});
  if (depth >= max_depth || std::abs(delta) <= local_tol) {
    value += left + right;
    err += std::abs(delta);
    return;
  }
  adaptive_rec(f, a, mid, left, 0.5 * tol_abs, rel_tol, scale, depth + 1, max_depth, value, err);
  adaptive_rec(f, mid, b, right, 0.5 * tol_abs, rel_tol, scale, depth + 1, max_depth, value,
               err);
}

}  // namespace

Result adaptive(const Fn& f, double a, double b, double rel_tol, int max_depth) {
  if (a == b) return {0.0, 0.0, true};
  const double whole = panel(f, a, b);
  const double tol_abs = rel_tol * std::max(std::abs(whole), 1e-300);
  Result out;
  double scale = std::abs(whole);
  adaptive_rec(f, a, b, whole, tol_abs, rel_tol, scale, 0, max_depth, out.value, out.abs_err);
  out.converged = out.abs_err <= 16.0 * rel_tol * std::max(std::abs(out.value), 1e-300) + 1e-300;
  return out;
}

Result log_panels(const Fn& f, double r0, double r1, double rel_tol, int per_decade, int order) {
  require(r0 > 0.0 && r1 > r0, ErrorCode::invalid_argument, "log_panels: need 0 < r0 < r1");
  // integrate g(x) = f(e^x) e^x dx over [log r0, log r1]
  const auto g = [&f](double x) {
    const double r = std::exp(x);
    return f(r) * r;
  };
  const double x0 = std::log(r0), x1 = std::log(r1);
  const double decades = (x1 - x0) / std::numbers::ln10;
  int panels = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  double prev = 0.0;
  Result out;
  for (int pass = 0; pass < 8; ++pass) {
    double acc = 0.0;
    const double step = (x1 - x0) / panels;
    for (int i = 0; i < panels; ++i) acc += panel(g, x0 + i * step, x0 + (i + 1) * step, order);
    if (pass > 0) {
      out.abs_err = std::abs(acc - prev);
      if (out.abs_err <= rel_tol * std::max(std::abs(acc), 1e-300)) {
        out.value = acc;
        out.converged = true;
        return out;
      }
    }
    prev = acc;
    panels *= 2;
  }
  out.value = prev;
  out.converged = false;
  return out;
}

TailResult decades_to_infinity(const Fn& f, double r0, double rel_tol, double r_cap,
                               int per_decade, int order) {
  require(r0 > 0.0, ErrorCode::invalid_argument, "decades_to_infinity: need r0 > 0");
  TailResult out;
  double lo = r0;
  double prev_inc = -1.0;
  double last_ratio = 0.0;
  int flat = 0;
  int empty = 0;
  while (lo < r_cap) {
    const double hi = lo * 10.0;
    const Result d = log_panels(f, lo, hi, rel_tol, per_decade, order);
    out.value += d.value;
    out.abs_err += d.abs_err;
    out.reached = hi;
    const double inc = std::abs(d.value);
    if (out.value == 0.0) {
      // nothing seen yet; keep probing a few decades before giving up
      if (++empty >= 6) {
        out.converged = true;
        return out;
      }
      lo = hi;
      continue;
    }
    if (inc <= rel_tol * std::abs(out.value)) {
      out.converged = true;
      return out;
    }
    if (prev_inc > 0.0) last_ratio = inc / prev_inc;
    if (prev_inc >= 0.0 && inc > 0.9 * prev_inc) {
      if (++flat >= 3) {
        out.divergent = true;
        return out;
      }
    } else {
      flat = 0;
    }
    prev_inc = inc;
    lo = hi;
  }
  // ran out of radius; extrapolate geometrically dying increments and fold
  // the remainder in, flag anything slower as divergent
  if (prev_inc > 0.0 && last_ratio > 0.0 && last_ratio <= 0.5) {
    const double remainder = prev_inc * last_ratio / (1.0 - last_ratio);
    out.value += (out.value > 0.0 ? 1.0 : -1.0) * remainder;
    out.abs_err += remainder;
    out.converged = true;
    return out;
  }
  out.divergent = true;
  return out;
}

double oscillatory(const Fn& f, const std::function<double(int)>& cut, int max_terms, int order,
                   double abs_floor) {
  std::vector<double> terms;
  terms.reserve(256);
  double scale = 0.0;
  bool decayed = false;
  for (int k = 0; k < max_terms; ++k) {
    const double a = cut(k);
    const double b = cut(k + 1);
    require(b > a, ErrorCode::invalid_argument, "oscillatory: cuts must increase");
    const double term = panel(f, a, b, order);
    terms.push_back(term);
    scale = std::max(scale, std::abs(term));
    if (k > 8 && std::abs(term) < std::max(1e-17 * scale, abs_floor)) {
      decayed = true;
      break;
    }
  }
  double plain = 0.0;
  for (double term : terms) plain += term;
  // series terminated by envelope decay: the plain sum is already at the
  // noise floor
  if (decayed) return plain;
  // truncated by budget: repeated averaging of the partial sums damps the
  // alternating remainder geometrically
  std::vector<double> s(terms.size());
  double acc = 0.0;
  for (size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i];
    s[i] = acc;
  }
  size_t n = s.size();
  while (n > 1) {
    for (size_t i = 0; i + 1 < n; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    --n;
  }
  return s[0];
}

}  // namespace nl::quad
