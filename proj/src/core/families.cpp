// SPDX-License-Identifier: Apache-2.0
#include "core/families.hpp"

#include <cmath>

#include "core/constants.hpp"
#include "core/error.hpp"

namespace nl {

KernelFamily build_family(const FamilySpec& spec) {
  const int dim = spec.dim;
  const double p = spec.p;
  if (spec.id == "heat-bbm") {
    return make_shift_family(make_heat(dim), p,
                             [p](double t) { return std::pow(t, 0.5 * p); }, "-bbm");
  }
  if (spec.id == "frac-heat-bbm") {
    const double s = spec.s;
    return make_shift_family(make_frac_heat(dim, s), p,
                             [s, p](double t) { return scaling_psi(s, p, t); }, "-bbm");
  }
  if (spec.id == "heat-rescaled") {
    return make_rescaled(gaussian_profile(dim), [](double t) { return 1.0 / std::sqrt(t); }, p)
        .family;
  }
  if (spec.id == "frac-heat-rescaled") {
    const double s = spec.s;
    require(2.0 * s > p, ErrorCode::domain,
            "frac-heat-rescaled: needs 2s > p for a finite moment normalizer");
    return make_rescaled(frac_heat_profile(dim, s),
                         [s](double t) { return std::pow(t, -1.0 / (2.0 * s)); }, p)
        .family;
  }
  if (spec.id == "rescaled-ball") {
    return make_rescaled(ball_indicator_profile(dim), [](double t) { return 1.0 / t; }, p)
        .family;
  }
  if (spec.id == "frac-bbm") return make_fractional_bbm(dim, p);
  if (spec.id == "aniso-box") return make_anisotropic_box(dim, spec.m, spec.variant, p);
  if (spec.id == "annulus-escape") return make_annulus_escape(dim);
  if (spec.id == "mass-blowup") return make_mass_blowup(dim);
  fail(ErrorCode::config, "unknown kernel family id: " + spec.id);
}

std::optional<Profile> family_profile(const FamilySpec& spec) {
  if (spec.id == "heat-bbm" || spec.id == "heat-rescaled") return gaussian_profile(spec.dim);
  if (spec.id == "frac-heat-bbm" || spec.id == "frac-heat-rescaled")
    return frac_heat_profile(spec.dim, spec.s);
  if (spec.id == "rescaled-ball") return ball_indicator_profile(spec.dim);
  return std::nullopt;
}

std::optional<double> family_psi(const FamilySpec& spec, double t) {
  if (spec.id == "heat-bbm") return std::pow(t, 0.5 * spec.p);
  if (spec.id == "frac-heat-bbm") return scaling_psi(spec.s, spec.p, t);
  return std::nullopt;
}

Profile build_profile(const std::string& name, int dim, double s) {
  if (name == "gaussian") return gaussian_profile(dim);
  if (name == "ball-indicator") return ball_indicator_profile(dim);
  if (name == "stretched-gaussian") return stretched_gaussian_profile(2.0);
  if (name == "frac-heat") return frac_heat_profile(dim, s);
  fail(ErrorCode::config, "unknown profile: " + name);
}

}  // namespace nl
