/* SPDX-License-Identifier: Apache-2.0
 *
 * C API of the nonlocal-lab core: kernel families, sampled test functions,
 * nonlocal energies, limit extraction, and the experiment runner behind the
 * CLI. All entry points return nl_status; every handle is opaque and owned by
 * the caller until the matching *_free.
 */
#ifndef NONLOCAL_H
#define NONLOCAL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nl_status {
  NL_OK = 0,
  NL_ERR_INVALID_ARGUMENT = 1,
  NL_ERR_DOMAIN = 2,
  NL_ERR_QUADRATURE = 3,
  NL_ERR_DIVERGENT = 4,
  NL_ERR_RESOLUTION = 5,
  NL_ERR_CONSTRUCTION = 6,
  NL_ERR_CONFIG = 7,
  NL_ERR_IO = 8,
  NL_ERR_INTERNAL = 9
} nl_status;

typedef struct nl_kernel nl_kernel;
typedef struct nl_function nl_function;
typedef struct nl_report nl_report;

/* Message of the last failing call on this thread (empty string if none). */
const char* nl_last_error(void);
const char* nl_version(void);

/* ---- closed-form constants ---- */

nl_status nl_gamma(double x, double* out);
nl_status nl_bbm_heat_constant(double p, double* out);
nl_status nl_frac_tail_constant(int dim, double s, double* out);
nl_status nl_frac_heat_local_constant(double s, double p, double* out);

/* regime_out: 0 supercritical (2s > p), 1 critical, 2 subcritical. */
nl_status nl_regime(double s, double p, int* regime_out);
nl_status nl_scaling_psi(double s, double p, double t, double* out);

/* ---- kernel families ---- */

nl_status nl_kernel_heat(int dim, nl_kernel** out);
nl_status nl_kernel_frac_heat(int dim, double s, nl_kernel** out);
nl_status nl_kernel_fractional_bbm(int dim, double p, nl_kernel** out);
nl_status nl_kernel_anisotropic_box(int dim, int m, int variant, double p, nl_kernel** out);
/* id as accepted by the CLI: heat-bbm, frac-heat-bbm, heat-rescaled,
 * frac-heat-rescaled, rescaled-ball, frac-bbm, aniso-box, annulus-escape,
 * mass-blowup. */
nl_status nl_kernel_named(const char* id, int dim, double p, double s, int m, int variant,
                          nl_kernel** out);
nl_status nl_kernel_eval(const nl_kernel* kernel, double t, const double* z, double* out);
void nl_kernel_free(nl_kernel* kernel);

/* ---- sampled test functions ---- */

nl_status nl_function_gaussian(int dim, const double* center, double width, double h,
                               nl_function** out);
nl_status nl_function_box(int dim, const double* lo, const double* hi, double h,
                          nl_function** out);
nl_status nl_function_ball(int dim, const double* center, double radius, double h,
                           nl_function** out);
nl_status nl_function_tent(int dim, const double* center, double halfwidth, double h,
                           nl_function** out);
nl_status nl_function_lp_norm(const nl_function* fn, double p, double* out);
nl_status nl_function_gradient_norm_pp(const nl_function* fn, double p, double* out);
nl_status nl_function_shift_diff_norm(const nl_function* fn, const double* z, double p,
                                      double* out);
void nl_function_free(nl_function* fn);

/* ---- energies and limits ---- */

nl_status nl_bbm_energy(const nl_function* fn, const nl_kernel* kernel, double t, double p,
                        double rel_tol, double* value, double* err_quad);
nl_status nl_heat_content_energy(const nl_function* fn, double t, double p, double* out);

/* model: "power-correction" | "log-correction" | "richardson". */
nl_status nl_extract_limit(const double* t, const double* value, size_t n, const char* model,
                           double* a0, double* error_bar);

/* ---- experiment runner (the CLI is a thin shell over this) ---- */

/* config_text: "key = value" lines with [section] headers; see the README.
 * On success the caller owns *out. Verdict: 0 pass, 1 a check failed. */
nl_status nl_run(const char* config_text, nl_report** out);
int nl_report_verdict(const nl_report* report);
const char* nl_report_summary(const nl_report* report);
size_t nl_report_file_count(const nl_report* report);
const char* nl_report_file_name(const nl_report* report, size_t index);
const char* nl_report_file_content(const nl_report* report, size_t index);
void nl_report_free(nl_report* report);

#ifdef __cplusplus
}
#endif

#endif /* NONLOCAL_H */
