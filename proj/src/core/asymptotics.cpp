// SPDX-License-Identifier: Apache-2.0
#include "core/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace nl {

FitModel fit_model_from_string(const std::string& name) {
  if (name == "power-correction" || name == "power") return FitModel::power_correction;
  if (name == "log-correction" || name == "log") return FitModel::log_correction;
  if (name == "richardson") return FitModel::richardson;
  fail(ErrorCode::invalid_argument, "unknown fit model: " + name);
}

std::string to_string(FitModel model) {
  switch (model) {
    case FitModel::power_correction: return "power-correction";
    case FitModel::log_correction: return "log-correction";
    default: return "richardson";
  }
}

namespace {

struct LinFit {
  double a0 = 0.0;
  double a1 = 0.0;
  double max_residual = 0.0;
  std::vector<double> residuals;
};

// least squares y = a0 + a1 * r
LinFit fit_two_term(const std::vector<double>& r, const std::vector<double>& y) {
  const size_t n = r.size();
  double sr = 0.0, sy = 0.0, srr = 0.0, sry = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sr += r[i];
    sy += y[i];
    srr += r[i] * r[i];
    sry += r[i] * y[i];
  }
  const double det = n * srr - sr * sr;
  require(std::abs(det) > 1e-300, ErrorCode::invalid_argument, "extract_limit: degenerate fit");
  LinFit fit;
  fit.a1 = (n * sry - sr * sy) / det;
  fit.a0 = (sy - fit.a1 * sr) / n;
  fit.residuals.resize(n);
  for (size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - fit.a0 - fit.a1 * r[i];
    fit.max_residual = std::max(fit.max_residual, std::abs(fit.residuals[i]));
  }
  return fit;
}

struct ModelResult {
  LinFit fit;
  double gamma = 0.0;
  std::string tag;
};

ModelResult run_model(const std::vector<double>& t, const std::vector<double>& y,
                      FitModel model) {
  ModelResult out;
  if (model == FitModel::log_correction) {
    std::vector<double> r(t.size());
    for (size_t i = 0; i < t.size(); ++i) r[i] = 1.0 / std::abs(std::log(t[i]));
    out.fit = fit_two_term(r, y);
    out.tag = "log-correction";
    return out;
  }
  if (model == FitModel::richardson) {
    // pairwise elimination of a linear correction: exact for y = a0 + a1 t
    std::vector<double> elim(t.size() - 1);
    for (size_t i = 0; i + 1 < t.size(); ++i)
      elim[i] = (t[i] * y[i + 1] - t[i + 1] * y[i]) / (t[i] - t[i + 1]);
    out.fit.a0 = elim.back();
    out.fit.a1 = (y.back() - out.fit.a0) / t.back();
    out.fit.residuals.resize(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      out.fit.residuals[i] = y[i] - out.fit.a0 - out.fit.a1 * t[i];
      out.fit.max_residual = std::max(out.fit.max_residual, std::abs(out.fit.residuals[i]));
    }
    out.gamma = 1.0;
    out.tag = "richardson";
    return out;
  }
  // power model: gamma over {1/2, 1, fitted}
  const auto fit_gamma = [&](double gamma) {
    std::vector<double> r(t.size());
    for (size_t i = 0; i < t.size(); ++i) r[i] = std::pow(t[i], gamma);
    return fit_two_term(r, y);
  };
  double best_gamma = 0.5;
  LinFit best = fit_gamma(0.5);
  for (double g : {1.0}) {
    LinFit f = fit_gamma(g);
    if (f.max_residual < best.max_residual) {
      best = f;
      best_gamma = g;
    }
  }
  // golden-section refinement of the exponent
  double lo = 0.1, hi = 2.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = fit_gamma(x1).max_residual, f2 = fit_gamma(x2).max_residual;
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = fit_gamma(x1).max_residual;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = fit_gamma(x2).max_residual;
    }
  }
  const double g_free = 0.5 * (lo + hi);
  LinFit free_fit = fit_gamma(g_free);
  if (free_fit.max_residual < best.max_residual) {
    best = free_fit;
    best_gamma = g_free;
  }
  out.fit = best;
  out.gamma = best_gamma;
  out.tag = "power-correction";
  return out;
}

}  // namespace

LimitEstimate extract_limit(const std::vector<EnergySample>& samples,
                            const std::function<double(double)>& psi, FitModel model) {
  require(samples.size() >= 4, ErrorCode::invalid_argument, "extract_limit: need >= 4 samples");
  std::vector<double> t(samples.size()), y(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    t[i] = samples[i].t;
    require(std::isfinite(samples[i].value), ErrorCode::invalid_argument,
            "extract_limit: non-finite sample");
    const double denom = psi ? psi(samples[i].t) : 1.0;
    y[i] = samples[i].value / denom;
    if (i > 0)
      require(t[i] < t[i - 1], ErrorCode::invalid_argument,
              "extract_limit: t must strictly decrease");
  }
  const double last = y.back(), prev = y[y.size() - 2];
  if (std::abs(last - prev) > 0.2 * std::max(std::abs(last), 1e-300))
    fail(ErrorCode::quadrature,
         "extract_limit: normalized values are not settling (last two differ by > 20%)");

  const ModelResult full = run_model(t, y, model);
  // drop the largest t and refit; the shift of a0 is the error bar
  std::vector<double> t2(t.begin() + 1, t.end());
  std::vector<double> y2(y.begin() + 1, y.end());
  const ModelResult dropped = run_model(t2, y2, model);

  LimitEstimate est;
  est.a0 = full.fit.a0;
  est.a1 = full.fit.a1;
  est.gamma = full.gamma;
  est.model_tag = full.tag;
  est.max_residual = full.fit.max_residual;
  est.residuals = full.fit.residuals;
  est.error_bar = std::abs(full.fit.a0 - dropped.fit.a0);
  // residual magnitudes should shrink with t; flag when they do not
  int rising = 0;
  for (size_t i = 0; i + 1 < est.residuals.size(); ++i)
    if (std::abs(est.residuals[i + 1]) > std::abs(est.residuals[i]) + 1e-14) ++rising;
  est.monotone_residual_warning = rising * 2 > static_cast<int>(est.residuals.size());
  return est;
}

ComparisonVerdict compare_to_prediction(const LimitEstimate& estimate, double predicted,
                                        double rel_tol) {
  require(std::isfinite(predicted), ErrorCode::invalid_argument,
          "compare_to_prediction: predicted value must be finite");
  ComparisonVerdict v;
  v.estimate = estimate.a0;
  v.predicted = predicted;
  const double tol = rel_tol * std::abs(predicted) + estimate.error_bar;
  v.pass = std::abs(estimate.a0 - predicted) <= tol;
  v.rel_deviation = predicted != 0.0 ? std::abs(estimate.a0 - predicted) / std::abs(predicted)
                                     : std::abs(estimate.a0);
  v.warning = estimate.error_bar > rel_tol * std::abs(predicted);
  v.note = v.pass ? (v.warning ? "pass-with-warning: error bar dominates tolerance" : "pass")
                  : "fail";
  return v;
}

}  // namespace nl
