// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/asymptotics.hpp"
#include "core/error.hpp"

using namespace nl;

namespace {

std::vector<EnergySample> synthetic(const std::function<double(double)>& f, int k0 = 4,
                                    int k1 = 11) {
  std::vector<EnergySample> samples;
  for (int k = k0; k <= k1; ++k) {
    const double t = std::pow(2.0, -k);
    samples.push_back({t, f(t), 0.0, 0.0});
  }
  return samples;
}

}  // namespace

TEST_CASE("richardson recovers a linear model to machine precision") {
  const auto samples = synthetic([](double t) { return 3.25 + 0.7 * t; });
  const LimitEstimate est = extract_limit(samples, nullptr, FitModel::richardson);
  CHECK(est.a0 == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(est.error_bar <= 1e-12);
}

TEST_CASE("power model fits a fractional correction exponent") {
  const auto samples = synthetic([](double t) { return 2.0 + 0.5 * std::pow(t, 0.7); });
  const LimitEstimate est = extract_limit(samples, nullptr, FitModel::power_correction);
  CHECK(est.a0 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(est.gamma == doctest::Approx(0.7).epsilon(1e-3));
  CHECK(est.model_tag == "power-correction");
}

TEST_CASE("log-corrected data wants the log model") {
  const auto samples =
      synthetic([](double t) { return 1.5 + 0.8 / std::abs(std::log(t)); }, 4, 14);
  const LimitEstimate logfit = extract_limit(samples, nullptr, FitModel::log_correction);
  const LimitEstimate powfit = extract_limit(samples, nullptr, FitModel::power_correction);
  CHECK(logfit.a0 == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(powfit.max_residual >= 3.0 * std::max(logfit.max_residual, 1e-18));
  // the power model misreads the limit
  CHECK(std::abs(powfit.a0 - 1.5) > 10.0 * std::abs(logfit.a0 - 1.5) + 1e-6);
}

TEST_CASE("normalizer is applied before fitting") {
  const auto psi = [](double t) { return t * std::abs(std::log(t)); };
  const auto samples = synthetic([&](double t) { return psi(t) * (4.0 + 0.3 * t); });
  const LimitEstimate est = extract_limit(samples, psi, FitModel::richardson);
  CHECK(est.a0 == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("extraction is affine equivariant") {
  const auto base = synthetic([](double t) { return 2.0 + 0.4 * std::sqrt(t); });
  auto scaled = base;
  for (auto& s : scaled) s.value *= -7.5;
  const LimitEstimate b = extract_limit(base, nullptr, FitModel::power_correction);
  const LimitEstimate s = extract_limit(scaled, nullptr, FitModel::power_correction);
  CHECK(s.a0 == doctest::Approx(-7.5 * b.a0).epsilon(1e-12));
}

TEST_CASE("error bar equals the drop-largest-t shift by construction") {
  const auto samples = synthetic([](double t) { return 1.0 + t + 0.05 * t * t; });
  const LimitEstimate est = extract_limit(samples, nullptr, FitModel::richardson);
  auto dropped = samples;
  dropped.erase(dropped.begin());
  const LimitEstimate est2 = extract_limit(dropped, nullptr, FitModel::richardson);
  CHECK(std::abs(est.a0 - est2.a0) == doctest::Approx(est.error_bar).epsilon(1e-12));
}

TEST_CASE("non-settling sequences are rejected") {
  auto samples = synthetic([](double t) { return 1.0 / t; }, 4, 8);
  CHECK_THROWS_AS(extract_limit(samples, nullptr, FitModel::richardson), Error);
  samples.resize(3);
  CHECK_THROWS_AS(extract_limit(samples, nullptr, FitModel::richardson), Error);
}

TEST_CASE("comparison verdicts") {
  LimitEstimate est;
  est.a0 = 2.003;
  est.error_bar = 0.01;
  const ComparisonVerdict pass = compare_to_prediction(est, 2.0, 0.01);
  CHECK(pass.pass);

  est.a0 = 1.0;
  est.error_bar = 0.0;
  const ComparisonVerdict fail = compare_to_prediction(est, 2.0, 0.01);
  CHECK_FALSE(fail.pass);
  CHECK(fail.note == "fail");

  est.a0 = 2.1;
  est.error_bar = 0.5;  // error bar dwarfs the tolerance
  const ComparisonVerdict warn = compare_to_prediction(est, 2.0, 0.01);
  CHECK(warn.pass);
  CHECK(warn.warning);
  CHECK(warn.note.find("warning") != std::string::npos);
}
