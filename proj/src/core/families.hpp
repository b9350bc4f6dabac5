// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "core/kernels.hpp"

namespace nl {

// Named kernel-family construction for the CLI and the diagnostics suites.
struct FamilySpec {
  std::string id;  // heat-bbm | frac-heat-bbm | heat-rescaled | frac-heat-rescaled |
                   // rescaled-ball | frac-bbm | aniso-box | annulus-escape | mass-blowup
  int dim = 1;
  double p = 1.0;
  double s = 0.5;
  int m = 1;
  int variant = 1;
};

KernelFamily build_family(const FamilySpec& spec);

/// The profile behind a rescaled family, when it has one (theta pipeline).
std::optional<Profile> family_profile(const FamilySpec& spec);

/// The normalizer used by the <id>-bbm families (psi-scaled energies).
std::optional<double> family_psi(const FamilySpec& spec, double t);

Profile build_profile(const std::string& name, int dim, double s = 0.5);

}  // namespace nl
