// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/sphere.hpp"

namespace nl {

enum class GeometryKind { interval, box, ball };

// Exact geometric description of an indicator's set, carried so that p = 1
// energies never depend on finite differences of a discontinuous function.
struct Geometry {
  GeometryKind kind = GeometryKind::box;
  int dim = 1;
  Vec lo{0, 0, 0}, hi{0, 0, 0};  // interval/box corners
  Vec center{0, 0, 0};
  double radius = 0.0;  // ball
  double volume = 0.0;
  double perimeter = 0.0;

  /// Lebesgue measure of E restricted against its translate E - z.
  double overlap(const Vec& z) const;
  /// |E symmetric-difference (E - z)|.
  double symmetric_difference(const Vec& z) const;
  /// int_{boundary} |sigma . n| dH^{N-1}.
  double directional_perimeter(const Vec& sigma) const;
};

struct AnalyticFunction {
  int dim = 1;
  std::string tag;  // gaussian | box-indicator | ball-indicator | lipschitz-tent
  bool is_indicator = false;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // null for indicators
  std::optional<Geometry> geometry;
  Vec preferred_lo{0, 0, 0}, preferred_hi{0, 0, 0};  // sampling box
  std::function<std::optional<double>(double)> grad_pp_fn;  // set by makers when known

  /// Closed-form ||Du||_{L^p}^p when known (indicators: p = 1 only).
  std::optional<double> grad_pp_closed_form(double p) const;
};

AnalyticFunction analytic_gaussian(int dim, const Vec& center, double width);
AnalyticFunction analytic_box(int dim, const Vec& lo, const Vec& hi);
AnalyticFunction analytic_ball(int dim, const Vec& center, double radius);
AnalyticFunction analytic_tent(int dim, const Vec& center, double halfwidth);

// Finitely supported sampled function on a uniform grid with spacing h,
// cell-centered values, zero extension outside its box. Immutable once built.
class GridFunction {
public:
  static GridFunction sample(const AnalyticFunction& fn, double h, double pad = 0.0);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  const std::array<int, 3>& shape() const { return shape_; }
  const Vec& origin() const { return origin_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<Geometry>& geometry() const { return geometry_; }
  const std::shared_ptr<const AnalyticFunction>& source() const { return source_; }
  double max_abs() const { return max_abs_; }
  Vec box_extent() const;  // hi - lo of the sampled box
  double node_coord(int axis, int index) const { return origin_[axis] + (index + 0.5) * h_; }

  /// Multilinear interpolation with zero extension.
  double value_at(const Vec& x) const;
  double value_at_node(const std::array<int, 3>& idx) const;

  /// Shifts beyond which supp u and supp u(.+z) are disjoint in some axis.
  bool disjoint_shift(const Vec& z) const;

  double lp_norm_pp(double p) const;
  double lp_norm(double p) const;

  /// ||u(.+z) - u||_{L^p}^p by resampling + midpoint rule; exact closed form
  /// 2||u||_p^p once the supports are disjoint.
  double shift_diff_pp(const Vec& z, double p) const;
  double shift_diff_norm(const Vec& z, double p) const;

  /// ||Du||_{L^p}^p: central differences for sampled smooth functions,
  /// geometric perimeter for indicators at p = 1 (error for p > 1).
  double gradient_pp(double p) const;
  double directional_pp(const Vec& sigma, double p) const;

  size_t flat_size() const { return values_.size(); }

private:
  int dim_ = 1;
  std::array<int, 3> shape_{1, 1, 1};
  Vec origin_{0, 0, 0};
  double h_ = 1.0;
  std::vector<double> values_;
  std::optional<Geometry> geometry_;
  std::shared_ptr<const AnalyticFunction> source_;
  double max_abs_ = 0.0;

  size_t flat(int i0, int i1, int i2) const {
    return static_cast<size_t>(i0) +
           static_cast<size_t>(shape_[0]) * (static_cast<size_t>(i1) +
                                             static_cast<size_t>(shape_[1]) * i2);
  }
};

// Power spectrum |u_hat(xi)|^2 on the dual lattice of a padded copy of u,
// normalized so that sum |u_hat|^2 * (dual cell volume) = ||u||_2^2.
struct FreqTable {
  int dim = 1;
  std::array<int, 3> shape{1, 1, 1};
  std::array<double, 3> dxi{0, 0, 0};
  std::vector<double> power;

  double dual_cell() const;
  /// |xi|^2 of the dual node with wrapped (signed) frequencies.
  double xi_norm2(int i0, int i1, int i2) const;
  double l2_norm_pp() const;  // Parseval sum
};

FreqTable dft(const GridFunction& u, double pad_factor = 2.0);

}  // namespace nl
