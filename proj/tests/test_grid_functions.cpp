// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/grid_function.hpp"
#include "core/quadrature.hpp"

using namespace nl;

namespace {

// test-side Simpson oracle on [a, b]
double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

struct Rng {
  unsigned long long state = 0x853c49e6748fea9bull;
  double next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  }
};

}  // namespace

TEST_CASE("sampling and Lp norms of a Gaussian") {
  const GridFunction u = GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0), 0.01);
  const double want = simpson([](double x) { return std::exp(-2.0 * x * x); }, -7.0, 7.0);
  CHECK(u.lp_norm_pp(2.0) == doctest::Approx(want).epsilon(1e-8));
  CHECK(u.lp_norm(2.0) == doctest::Approx(std::sqrt(want)).epsilon(1e-8));
}

TEST_CASE("shift differences: identity, lattice shift, disjoint supports") {
  const GridFunction box = GridFunction::sample(analytic_box(1, {0, 0, 0}, {1, 0, 0}), 1.0 / 64);
  CHECK(box.shift_diff_pp({0.0, 0.0, 0.0}, 1.0) == 0.0);
  // two boundary strips of width 1/4
  CHECK(box.shift_diff_norm({0.25, 0.0, 0.0}, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // disjoint supports: closed form 2 ||u||_p^p
  const double far = box.shift_diff_pp({5.0, 0.0, 0.0}, 1.0);
  CHECK(far == doctest::Approx(2.0 * box.lp_norm_pp(1.0)).epsilon(1e-14));
  CHECK(box.shift_diff_norm({5.0, 0.0, 0.0}, 2.0) ==
        doctest::Approx(std::sqrt(2.0 * box.lp_norm_pp(2.0))).epsilon(1e-14));
}

TEST_CASE("gradient norms of smooth functions and indicator geometry") {
  const GridFunction u = GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0), 0.005);
  const double want =
      simpson([](double x) { return 4.0 * x * x * std::exp(-2.0 * x * x); }, -7.0, 7.0);
  CHECK(want == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-10));
  CHECK(u.gradient_pp(2.0) == doctest::Approx(want).epsilon(1e-4));

  const GridFunction sq =
      GridFunction::sample(analytic_box(2, {0, 0, 0}, {1, 1, 0}), 1.0 / 32);
  CHECK(sq.directional_pp({1.0, 0.0, 0.0}, 1.0) == doctest::Approx(2.0));
  CHECK(sq.gradient_pp(1.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(sq.gradient_pp(2.0), Error);  // indicators are BV only

  // |sigma . Du| <= |Du| pointwise, so the directional seminorm is dominated
  Rng rng;
  const GridFunction g2 = GridFunction::sample(analytic_gaussian(2, {0, 0, 0}, 1.0), 0.05);
  const double full = g2.gradient_pp(2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double phi = 2.0 * std::numbers::pi * rng.next();
    CHECK(g2.directional_pp({std::cos(phi), std::sin(phi), 0.0}, 2.0) <= full * (1.0 + 1e-12));
  }
}

TEST_CASE("ball geometry: overlaps and directional perimeter") {
  const AnalyticFunction disk = analytic_ball(2, {0, 0, 0}, 0.5);
  CHECK(disk.geometry->volume == doctest::Approx(std::numbers::pi * 0.25));
  CHECK(disk.geometry->perimeter == doctest::Approx(std::numbers::pi));
  CHECK(disk.geometry->directional_perimeter({1.0, 0.0, 0.0}) == doctest::Approx(2.0));
  // symmetric difference of the disk against a half-radius translate, by
  // the circular-lens closed form
  const double d = 0.5, r = 0.5;
  const double lens =
      2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
  CHECK(disk.geometry->symmetric_difference({0.5, 0.0, 0.0}) ==
        doctest::Approx(2.0 * (std::numbers::pi * 0.25 - lens)).epsilon(1e-13));
}

TEST_CASE("boundary layer violation is a construction error") {
  AnalyticFunction clipped = analytic_gaussian(1, {0, 0, 0}, 1.0);
  clipped.preferred_lo = {-1.0, 0, 0};  // support clearly sticks out
  clipped.preferred_hi = {1.0, 0, 0};
  CHECK_THROWS_AS(GridFunction::sample(clipped, 0.01), Error);
}

TEST_CASE("dft: Parseval, self-dual Gaussian, conjugate symmetry") {
  // a wiggly compactly-decaying function for the exact discrete Parseval
  AnalyticFunction wiggle = analytic_gaussian(1, {0, 0, 0}, 1.0);
  const auto base = wiggle.value;
  wiggle.value = [base](const Vec& x) { return base(x) * (1.0 + 0.3 * std::sin(5.0 * x[0])); };
  const GridFunction u = GridFunction::sample(wiggle, 0.01);
  const FreqTable freq = dft(u);
  CHECK(freq.l2_norm_pp() == doctest::Approx(u.lp_norm_pp(2.0)).epsilon(1e-8));

  // exp(-pi x^2) transforms into exp(-pi xi^2)
  const GridFunction g =
      GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0 / std::sqrt(std::numbers::pi)),
                           0.005);
  const FreqTable gf = dft(g);
  for (int m : {0, 3, 10, 40}) {
    const double xi = m * gf.dxi[0];
    if (xi > 2.0) continue;
    const double want = std::exp(-2.0 * std::numbers::pi * xi * xi);
    CHECK(gf.power[m] == doctest::Approx(want).epsilon(2e-6));
  }
  // real input: |u_hat(-xi)| = |u_hat(xi)|
  for (int m = 1; m < 5; ++m)
    CHECK(gf.power[m] == doctest::Approx(gf.power[gf.shape[0] - m]).epsilon(1e-12));
}

TEST_CASE("difference quotient bounded by the directional gradient") {
  const GridFunction u = GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0), 0.01);
  for (double p : {1.0, 2.0}) {
    for (double z : {0.01, 0.05, 0.3, 1.0, 2.5}) {
      const double lhs = u.shift_diff_norm({z, 0.0, 0.0}, p);
      const double rhs = z * std::pow(u.directional_pp({1.0, 0.0, 0.0}, p), 1.0 / p);
      CHECK(lhs <= rhs + 4.0 * u.spacing());  // interpolation allowance 2h Lip(grad u)
    }
  }
}

TEST_CASE("second-order difference quotient expansion for the Gaussian") {
  const GridFunction u = GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0), 0.005);
  // ||D^2 u||_2 for exp(-x^2) by the Simpson oracle
  const double hess2 = simpson(
      [](double x) {
        const double upp = (4.0 * x * x - 2.0) * std::exp(-x * x);
        return upp * upp;
      },
      -7.0, 7.0);
  const double hess = std::sqrt(hess2);
  const double dir = std::sqrt(u.directional_pp({1.0, 0.0, 0.0}, 2.0));
  for (double z : {0.02, 0.1, 0.4, 1.0}) {
    const double lhs = std::abs(u.shift_diff_norm({z, 0.0, 0.0}, 2.0) - z * dir);
    CHECK(lhs <= 0.5 * z * z * hess + 4.0 * u.spacing() * z);
  }
}

TEST_CASE("shift difference is continuous in z (triangle inequality)") {
  const GridFunction u = GridFunction::sample(analytic_gaussian(1, {0, 0, 0}, 1.0), 0.01);
  Rng rng;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 3.0 * rng.next() - 1.5;
    const double b = 3.0 * rng.next() - 1.5;
    const double lhs =
        std::abs(u.shift_diff_norm({a, 0, 0}, 2.0) - u.shift_diff_norm({b, 0, 0}, 2.0));
    const double rhs = u.shift_diff_norm({a - b, 0, 0}, 2.0);
    CHECK(lhs <= rhs + 1e-9);
  }
}
