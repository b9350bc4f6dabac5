// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/energy.hpp"

namespace nl {

enum class FitModel { power_correction, log_correction, richardson };

FitModel fit_model_from_string(const std::string& name);
std::string to_string(FitModel model);

struct LimitEstimate {
  double a0 = 0.0;               // extrapolated limit
  double a1 = 0.0;               // correction amplitude
  double gamma = 0.0;            // fitted correction exponent (power model)
  std::string model_tag;
  double max_residual = 0.0;     // max |y_i - model_i|
  double error_bar = 0.0;        // |a0(all) - a0(drop largest t)|
  std::vector<double> residuals;
  bool monotone_residual_warning = false;
};

/// Fits F_i / psi(t_i) = a0 + a1 r(t_i) with r = t^gamma (gamma over
/// {1/2, 1, fitted}) or 1/|log t|; richardson eliminates a linear-in-t
/// correction pairwise. Requires >= 4 samples with strictly decreasing t and
/// fails when the normalized values are not settling (last two differ by more
/// than 20%).
LimitEstimate extract_limit(const std::vector<EnergySample>& samples,
                            const std::function<double(double)>& psi, FitModel model);

struct ComparisonVerdict {
  bool pass = false;
  bool warning = false;  // error bar dominates the tolerance
  double estimate = 0.0;
  double predicted = 0.0;
  double rel_deviation = 0.0;
  std::string note;
};

ComparisonVerdict compare_to_prediction(const LimitEstimate& estimate, double predicted,
                                        double rel_tol);

}  // namespace nl
