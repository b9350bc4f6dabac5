// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/energy.hpp"
#include "core/grid_function.hpp"

namespace nl {

// Binary mask on a uniform grid, N in {1,2}; geometric metadata carried when
// built from a primitive set.
struct RasterSet {
  int dim = 1;
  std::array<int, 3> shape{1, 1, 1};
  double h = 1.0;
  Vec origin{0, 0, 0};
  std::vector<std::uint8_t> mask;
  std::optional<Geometry> geometry;

  double volume_from_mask() const;

  static RasterSet from_geometry(const Geometry& geometry, double h);
  /// Binary PGM ("P5", maxval 255), thresholded at 128.
  static RasterSet from_pgm(const std::string& path, double spacing);
};

// Heat content evaluator; the mask autocorrelation is built once (FFT) and
// every Q(t) is then a short weighted lattice sum with exact cell-integrated
// Gaussian weights.
class HeatContent {
public:
  explicit HeatContent(const RasterSet& set);

  const RasterSet& set() const { return set_; }
  double volume() const { return volume_; }

  /// Q_E(t); fails with a resolution error when sqrt(4t) < h.
  double value(double t) const;

  /// Fractional variant through the shift-difference route with the
  /// tabulated kernel.
  double value_fractional(double t, double s) const;

private:
  RasterSet set_;
  double volume_ = 0.0;
  std::array<int, 3> pad_shape_{1, 1, 1};
  std::vector<double> corr_;  // mask pair counts per lattice shift
  double corr_at(int m0, int m1) const;
};

/// Closed-form heat content of a 1D interval of length L.
double interval_heat_content_exact(double length, double t);

struct HeatContentCurve {
  std::vector<double> t;
  std::vector<double> q;
  std::string method;  // "fft-convolution" | "closed-form" | "frac-tabulated"
  double volume = 0.0;
};

HeatContentCurve heat_content_curve(const RasterSet& set, const std::vector<double>& t_list);
HeatContentCurve heat_content_curve_exact_interval(double length,
                                                   const std::vector<double>& t_list);
HeatContentCurve frac_heat_content_curve(const RasterSet& set, double s,
                                         const std::vector<double>& t_list);

struct PerimeterFit {
  double perimeter = 0.0;
  double sqrt_coeff = 0.0;
  double linear_coeff = 0.0;
  double t32_coeff = 0.0;
  bool used_t32 = false;
  double max_rel_residual = 0.0;
  std::vector<double> residuals;
};

/// Least squares of |E| - Q(t) against b sqrt(t) + c t (+ d t^{3/2} with
/// >= 8 samples); P = b sqrt(pi).
PerimeterFit perimeter_from_heat(const HeatContentCurve& curve, double volume);

// Fourier-side semigroup quantities on the dual grid; lambda(xi) =
// amplitude * (2 pi |xi|)^{2s}, s = 1 being the heat symbol 4 pi^2 |xi|^2.
struct FourierSymbol {
  double s = 1.0;
  double amplitude = 1.0;
};

/// H_0(u) - H_t(u) = sum (1 - e^{-lambda t}) |u_hat|^2 dxi.
double fourier_deficit(const FreqTable& freq, double t, const FourierSymbol& symbol);
double fourier_deficit(const GridFunction& u, double t, const FourierSymbol& symbol);

/// (-L u, u) = sum lambda |u_hat|^2 dxi.
double dirichlet_form(const FreqTable& freq, const FourierSymbol& symbol);
double dirichlet_form(const GridFunction& u, const FourierSymbol& symbol);

/// int H_t(|u - u(x)|^p)(x) dx via the shift-difference route:
/// int Delta_p(z)^p k_t(z) dz with k in {heat, frac-heat(s)}.
EnergySample heat_content_energy(ShiftEnergy& shift, double t,
                                 const std::optional<double>& frac_s = std::nullopt,
                                 const EnergyOptions& opt = {});

/// Same, normalized by psi_{s,p}(t).
EnergySample frac_heat_content_energy(ShiftEnergy& shift, double s, double t,
                                      const EnergyOptions& opt = {});

}  // namespace nl
