// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

namespace nl {

struct FracHeatTableParams {
  double r_lo = 1e-4;
  double r_hi = 1e3;
  int points_per_decade = 96;
  double negativity_tol = 1e-8;  // of the peak value, before construction fails
};

// Radial table of the unit-time fractional heat kernel h_1^s in dimension
// N in {1,2,3}, built by numerical radial Fourier inversion of
// xi |-> exp(-(2 pi |xi|)^{2s}). Values at other times follow the exact
// scaling law h_t^s(x) = t^{-N/(2s)} h_1^s(t^{-1/(2s)} x).
class FracHeatTable {
public:
  FracHeatTable(int dim, double s, const FracHeatTableParams& params = {});

  int dim() const { return dim_; }
  double s() const { return s_; }
  double r_lo() const { return params_.r_lo; }
  double r_hi() const { return params_.r_hi; }
  double peak() const { return peak_; }

  /// h_1^s(r); power-law extension beyond the tabulated range.
  double value_t1(double r) const;

  /// h_t^s at radius r via the scaling law.
  double value(double t, double r) const;

  /// Least-squares fit of r^{N+2s} h_1^s(r) over the last tabulated decades.
  double fitted_tail_coefficient() const;

  /// Smallest C with C^-1 env <= h_1^s <= C env on the table, where
  /// env(r) = (1 + r^2)^{-(N+2s)/2} is the two-sided envelope at t = 1.
  double envelope_constant() const;

private:
  int dim_;
  double s_;
  FracHeatTableParams params_;
  double peak_ = 0.0;        // h_1^s(0)
  double tail_slope_ = 0.0;  // d log h / d log r at the outer end (measured)
  std::vector<double> log_r_;
  std::vector<double> log_h_;
  std::vector<double> slopes_;  // Hermite slopes in log-log space

  double interp_log(double lr) const;
};

std::shared_ptr<const FracHeatTable> shared_frac_heat_table(int dim, double s);

}  // namespace nl
