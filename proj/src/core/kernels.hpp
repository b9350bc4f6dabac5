// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include "core/frac_heat_table.hpp"
#include "core/profile.hpp"
#include "core/sphere.hpp"

namespace nl {

// Geometric support of a kernel at fixed t, used to cut radial quadrature
// exactly at the support edge along each direction.
struct Support {
  enum class Kind { all, ball, box, annulus };
  Kind kind = Kind::all;
  double r0 = 0.0;
  double r1 = std::numeric_limits<double>::infinity();
  Vec halfwidth{0.0, 0.0, 0.0};

  /// Largest radius with sigma*r inside the support (ignoring r0 for annuli).
  double radial_cut(const Vec& sigma, int dim) const;
};

// One-parameter family of non-negative kernels z |-> rho_t(z). The same type
// carries convolution kernels (heat, fractional heat) and the shift-weight
// families they induce.
struct KernelFamily {
  int dim = 1;
  double exponent = 1.0;  // the p the family was built for (shift weights)
  std::string family_id;
  bool is_radial = false;
  bool has_closed_form = false;
  std::map<std::string, double> params;

  std::function<double(double, const Vec&)> eval_point;
  std::function<double(double, double)> eval_radial;          // when is_radial
  std::function<double(double, const Vec&)> shift_point;      // rho_t(z) / |z|^p
  std::function<double(double, double)> shift_radial;
  std::function<Support(double)> support_fn;
  // int_0^r rho_t(sigma r') r'^{N-1} dr' per unit solid angle; set when the
  // family concentrates mass on scales no quadrature can resolve
  std::function<double(double, double)> radial_primitive;

  double evaluate(double t, const Vec& z) const;
  double radial_value(double t, double r) const;
  double shift_weight(double t, const Vec& z) const;
  double shift_weight_radial(double t, double r) const;
  Support support(double t) const;
};

/// Gaussian heat kernel h_t.
KernelFamily make_heat(int dim);

/// Fractional heat kernel h_t^s, N in {1,2,3}. Closed form at s = 1/2,
/// radial Fourier-inversion table otherwise (force_tabulated builds the table
/// even at s = 1/2, for validation).
KernelFamily make_frac_heat(int dim, double s, bool force_tabulated = false,
                            const FracHeatTableParams& params = {});

/// Corrected standard fractional family rho_t(z) = t |z|^{tp - N}.
KernelFamily make_fractional_bbm(int dim, double p);

/// Normalized indicator of B_t^m x B_{t^2}^{N-m} (variant 1); variant 2 swaps
/// the two scales.
KernelFamily make_anisotropic_box(int dim, int m, int variant, double p);

/// Indicator of the annulus {1 < |z| < 2}, normalized, independent of t.
KernelFamily make_annulus_escape(int dim);

/// rho_t = t^{-1} chi_{B_1}: bounded-mass condition fails.
KernelFamily make_mass_blowup(int dim);

// Moment R |-> m_{K,p}(R) = int_{B_R} |x|^p K(x) dx of a profile.
class MomentFunction {
public:
  MomentFunction(Profile profile, double p);
  double operator()(double R) const;
  /// Full-space moment with a truncation-error estimate attached.
  double infinity_value() const { return m_inf_; }
  double infinity_error() const { return m_inf_err_; }
  bool infinite() const { return !m_inf_finite_; }
  const Profile& profile() const { return profile_; }
  double p() const { return p_; }

private:
  Profile profile_;
  double p_;
  double m_inf_ = 0.0;
  double m_inf_err_ = 0.0;
  bool m_inf_finite_ = false;
};

// Family rho_t(x) = |x|^p K_t(x) / phi(t) with K_t(x) = beta(t)^N K(beta(t) x)
// and phi(t) = m_{K,p}(beta(t)) / beta(t)^p.
struct RescaledFamily {
  KernelFamily family;
  Profile profile;
  std::function<double(double)> beta;
  double p = 1.0;
  std::shared_ptr<MomentFunction> moment;

  double phi(double t) const;
};

RescaledFamily make_rescaled(Profile profile, std::function<double(double)> beta, double p);

/// Wraps a convolution kernel k_t into the family rho_t(z) = |z|^p k_t(z) / psi(t).
KernelFamily make_shift_family(KernelFamily kernel, double p,
                               std::function<double(double)> psi, const std::string& suffix);

// General heat-type scaling t^{-beta N} h1(t^{-beta} x) and the moment/tail
// classification of its profile.
KernelFamily make_general_heat_type(Profile h1, double beta_exponent);

struct HeatTypeClass {
  enum class Kind { finite_moment, critical_tail } kind;
  double zeta_fit = 0.0;   // tail coefficient when kind == critical_tail
  double moment = 0.0;     // |.|^p mass when kind == finite_moment
};

HeatTypeClass classify_heat_type(const Profile& h1, double p);

// One-sided stable subordinator density at unit time for s = 1/2 (the only
// closed form), validated on construction by reproducing the s = 1/2 kernel
// through the subordination integral.
struct SubordinatorDensity {
  double s = 0.5;
  std::function<double(double)> density;
  double validation_error = 0.0;  // max relative deviation seen in validation

  double moment(double alpha) const;
  double predicted_moment(double alpha) const;  // Gamma(1 - alpha/s)/Gamma(1 - alpha)
};

SubordinatorDensity make_subordinator_half();

std::pair<double, double> subordinator_moment_check(double alpha);

}  // namespace nl
