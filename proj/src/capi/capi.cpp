// SPDX-License-Identifier: Apache-2.0
#include "nonlocal.h"

#include <cstring>
#include <string>

#include "core/asymptotics.hpp"
#include "core/constants.hpp"
#include "core/energy.hpp"
#include "core/error.hpp"
#include "core/families.hpp"
#include "core/grid_function.hpp"
#include "core/heat_content.hpp"
#include "core/kernels.hpp"
#include "core/run.hpp"
#include "core/special_functions.hpp"

struct nl_kernel {
  nl::KernelFamily family;
};

struct nl_function {
  nl::GridFunction grid;
};

struct nl_report {
  nl::RunReport report;
};

namespace {

thread_local std::string g_last_error;

nl_status to_status(const nl::Error& e) {
  g_last_error = e.what();
  return static_cast<nl_status>(static_cast<int>(e.code()));
}

template <typename Fn>
nl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NL_OK;
  } catch (const nl::Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NL_ERR_INTERNAL;
  }
}

nl_status require_arg(bool ok, const char* what) {
  if (ok) return NL_OK;
  g_last_error = what;
  return NL_ERR_INVALID_ARGUMENT;
}

nl::Vec to_vec(const double* z, int dim) {
  nl::Vec v{0, 0, 0};
  for (int k = 0; k < dim; ++k) v[k] = z[k];
  return v;
}

}  // namespace

extern "C" {

const char* nl_last_error(void) { return g_last_error.c_str(); }

const char* nl_version(void) {
  static const std::string version = nl::tool_version();
  return version.c_str();
}

nl_status nl_gamma(double x, double* out) {
  if (auto rc = require_arg(out != nullptr, "nl_gamma: out is null")) return rc;
  return guarded([&] { *out = nl::gamma_fn(x); });
}

nl_status nl_bbm_heat_constant(double p, double* out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = nl::bbm_heat_constant(p); });
}

nl_status nl_frac_tail_constant(int dim, double s, double* out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = nl::frac_tail_constant(dim, s); });
}

nl_status nl_frac_heat_local_constant(double s, double p, double* out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = nl::frac_heat_local_constant(s, p); });
}

nl_status nl_regime(double s, double p, int* regime_out) {
  if (auto rc = require_arg(regime_out != nullptr, "regime_out is null")) return rc;
  return guarded([&] { *regime_out = static_cast<int>(nl::regime(s, p).regime); });
}

nl_status nl_scaling_psi(double s, double p, double t, double* out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = nl::scaling_psi(s, p, t); });
}

nl_status nl_kernel_heat(int dim, nl_kernel** out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new nl_kernel{nl::make_heat(dim)}; });
}

nl_status nl_kernel_frac_heat(int dim, double s, nl_kernel** out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new nl_kernel{nl::make_frac_heat(dim, s)}; });
}

nl_status nl_kernel_fractional_bbm(int dim, double p, nl_kernel** out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new nl_kernel{nl::make_fractional_bbm(dim, p)}; });
}

nl_status nl_kernel_anisotropic_box(int dim, int m, int variant, double p, nl_kernel** out) {
  if (auto rc = require_arg(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new nl_kernel{nl::make_anisotropic_box(dim, m, variant, p)}; });
}

nl_status nl_kernel_named(const char* id, int dim, double p, double s, int m, int variant,
                          nl_kernel** out) {
  if (auto rc = require_arg(out != nullptr && id != nullptr, "id/out is null")) return rc;
  return guarded([&] {
    nl::FamilySpec spec;
    spec.id = id;
    spec.dim = dim;
    spec.p = p;
    spec.s = s;
    spec.m = m;
    spec.variant = variant;
    *out = new nl_kernel{nl::build_family(spec)};
  });
}

nl_status nl_kernel_eval(const nl_kernel* kernel, double t, const double* z, double* out) {
  if (auto rc = require_arg(kernel && z && out, "kernel/z/out is null")) return rc;
  return guarded([&] { *out = kernel->family.evaluate(t, to_vec(z, kernel->family.dim)); });
}

void nl_kernel_free(nl_kernel* kernel) { delete kernel; }

nl_status nl_function_gaussian(int dim, const double* center, double width, double h,
                               nl_function** out) {
  if (auto rc = require_arg(out && center, "center/out is null")) return rc;
  return guarded([&] {
    *out = new nl_function{
        nl::GridFunction::sample(nl::analytic_gaussian(dim, to_vec(center, dim), width), h)};
  });
}

nl_status nl_function_box(int dim, const double* lo, const double* hi, double h,
                          nl_function** out) {
  if (auto rc = require_arg(out && lo && hi, "lo/hi/out is null")) return rc;
  return guarded([&] {
    *out = new nl_function{
        nl::GridFunction::sample(nl::analytic_box(dim, to_vec(lo, dim), to_vec(hi, dim)), h)};
  });
}

nl_status nl_function_ball(int dim, const double* center, double radius, double h,
                           nl_function** out) {
  if (auto rc = require_arg(out && center, "center/out is null")) return rc;
  return guarded([&] {
    *out = new nl_function{
        nl::GridFunction::sample(nl::analytic_ball(dim, to_vec(center, dim), radius), h)};
  });
}

nl_status nl_function_tent(int dim, const double* center, double halfwidth, double h,
                           nl_function** out) {
  if (auto rc = require_arg(out && center, "center/out is null")) return rc;
  return guarded([&] {
    *out = new nl_function{
        nl::GridFunction::sample(nl::analytic_tent(dim, to_vec(center, dim), halfwidth), h)};
  });
}

nl_status nl_function_lp_norm(const nl_function* fn, double p, double* out) {
  if (auto rc = require_arg(fn && out, "fn/out is null")) return rc;
  return guarded([&] { *out = fn->grid.lp_norm(p); });
}

nl_status nl_function_gradient_norm_pp(const nl_function* fn, double p, double* out) {
  if (auto rc = require_arg(fn && out, "fn/out is null")) return rc;
  return guarded([&] { *out = fn->grid.gradient_pp(p); });
}

nl_status nl_function_shift_diff_norm(const nl_function* fn, const double* z, double p,
                                      double* out) {
  if (auto rc = require_arg(fn && z && out, "fn/z/out is null")) return rc;
  return guarded([&] { *out = fn->grid.shift_diff_norm(to_vec(z, fn->grid.dim()), p); });
}

void nl_function_free(nl_function* fn) { delete fn; }

nl_status nl_bbm_energy(const nl_function* fn, const nl_kernel* kernel, double t, double p,
                        double rel_tol, double* value, double* err_quad) {
  if (auto rc = require_arg(fn && kernel && value, "fn/kernel/value is null")) return rc;
  return guarded([&] {
    nl::EnergyOptions opt;
    if (rel_tol > 0.0) opt.rel_tol = rel_tol;
    const nl::EnergySample sample = nl::bbm_energy(fn->grid, kernel->family, t, p, opt);
    *value = sample.value;
    if (err_quad) *err_quad = sample.err_quad;
  });
}

nl_status nl_heat_content_energy(const nl_function* fn, double t, double p, double* out) {
  if (auto rc = require_arg(fn && out, "fn/out is null")) return rc;
  return guarded([&] {
    nl::ShiftEnergy shift(fn->grid, p);
    *out = nl::heat_content_energy(shift, t).value;
  });
}

nl_status nl_extract_limit(const double* t, const double* value, size_t n, const char* model,
                           double* a0, double* error_bar) {
  if (auto rc = require_arg(t && value && model && a0, "t/value/model/a0 is null")) return rc;
  return guarded([&] {
    std::vector<nl::EnergySample> samples(n);
    for (size_t i = 0; i < n; ++i) samples[i] = {t[i], value[i], 0.0, 0.0};
    const nl::LimitEstimate est =
        nl::extract_limit(samples, nullptr, nl::fit_model_from_string(model));
    *a0 = est.a0;
    if (error_bar) *error_bar = est.error_bar;
  });
}

nl_status nl_run(const char* config_text, nl_report** out) {
  if (auto rc = require_arg(config_text && out, "config/out is null")) return rc;
  return guarded([&] { *out = new nl_report{nl::run_experiment_text(config_text)}; });
}

int nl_report_verdict(const nl_report* report) { return report ? report->report.verdict : 2; }

const char* nl_report_summary(const nl_report* report) {
  return report ? report->report.summary.c_str() : "";
}

size_t nl_report_file_count(const nl_report* report) {
  return report ? report->report.files.size() : 0;
}

const char* nl_report_file_name(const nl_report* report, size_t index) {
  if (!report || index >= report->report.files.size()) return nullptr;
  return report->report.files[index].first.c_str();
}

const char* nl_report_file_content(const nl_report* report, size_t index) {
  if (!report || index >= report->report.files.size()) return nullptr;
  return report->report.files[index].second.c_str();
}

void nl_report_free(nl_report* report) { delete report; }

}  // extern "C"
