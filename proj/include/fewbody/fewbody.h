/*
 * Copyright 2026 The fewbody Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * fewbody: zero-range three-boson solver in momentum space.
 *
 * All quantities are dimensionless: momenta in units of the three-body
 * subtraction momentum, energies in its square. Binding energies (eps2 for
 * the dimer, eps3 for trimers) are positive numbers; the corresponding
 * energies are their negatives.
 *
 * Every fallible call returns fb_status. On failure a description is kept
 * per thread and can be read with fb_last_error() until the next failing
 * call on that thread. Handles are opaque, immutable after creation unless
 * stated otherwise, and safe to read from several threads at once.
 */

#ifndef FEWBODY_FEWBODY_H
#define FEWBODY_FEWBODY_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FEWBODY_BUILDING_LIBRARY)
#    define FB_API __declspec(dllexport)
#  else
#    define FB_API __declspec(dllimport)
#  endif
#else
#  define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_INVALID_ARGUMENT = 1,
  FB_ERR_UNSUPPORTED_REGION = 2,
  FB_ERR_DIMER_POLE = 3,
  FB_ERR_RESONANCE_POLE = 4,
  FB_ERR_NO_BOUND_STATE = 5,
  FB_ERR_ASSEMBLY = 6,
  FB_ERR_SINGULAR_MATRIX = 7,
  FB_ERR_EXTRACTION = 8,
  FB_ERR_NORMALIZATION_UNSTABLE = 9,
  FB_ERR_NUMERICAL_QUALITY = 10,
  FB_ERR_THRESHOLD = 11,
  FB_ERR_IO = 12,
  FB_ERR_INTERNAL = 99
} fb_status;

FB_API const char* fb_version(void);
/* Stable short name, e.g. "dimer-pole". */
FB_API const char* fb_status_name(fb_status status);
/* Nonzero when the status reports bad input rather than a numerical failure. */
FB_API int fb_status_is_validation(fb_status status);
/* Message of the last failure on the calling thread ("" if none). */
FB_API const char* fb_last_error(void);

typedef struct fb_settings {
  size_t grid_n;            /* quadrature points on the half-line */
  double map_scale;         /* tangent map scale of the grid */
  unsigned threads;         /* worker hint, 0 = logical core count */
  double points_per_decade; /* determinant scan density */
  double root_tolerance;    /* relative bisection tolerance on E3 */
  double min_binding;       /* shallowest binding scanned at eps2 = 0 */
} fb_settings;

FB_API void fb_settings_default(fb_settings* settings);

/* Quadrature. `nodes` and `weights` must hold n doubles each. */
FB_API fb_status fb_gauss_legendre(size_t n, double* nodes, double* weights);
FB_API fb_status fb_tangent_grid(size_t n, double map_scale, double* nodes, double* weights);

/* Two-body input. */
FB_API fb_status fb_tau_inverse(double energy, double eps2, double* out);
FB_API fb_status fb_tau(double energy, double eps2, double* out);
FB_API fb_status fb_tau_residue(double eps2, double* out);
FB_API fb_status fb_feshbach_a(double a_bg, double b0, double delta_b, double field, double* out);

/* Three-body kernel pieces. */
FB_API fb_status fb_angular_log(double a, double y, double x, double* out);
FB_API fb_status fb_stm_kernel(double y, double x, double e3, double eps2, double* out);
/* Sign (-1, 0, +1) and log|det| of the discretized STM operator at E3. */
FB_API fb_status fb_det_at(double e3, double eps2, const fb_settings* settings, int* sign,
                           double* log_abs);

/* Bound-state spectrum: binding energies, deepest first. */
typedef struct fb_spectrum fb_spectrum;
FB_API fb_status fb_spectrum_compute(double eps2, size_t max_levels, const fb_settings* settings,
                                     fb_spectrum** out);
FB_API size_t fb_spectrum_count(const fb_spectrum* s);
FB_API fb_status fb_spectrum_level(const fb_spectrum* s, size_t index, double* eps3);
/* levels[index] / levels[index + 1]. */
FB_API fb_status fb_spectrum_ratio(const fb_spectrum* s, size_t index, double* ratio);
/* "" when all requested levels were found. */
FB_API const char* fb_spectrum_diagnostic(const fb_spectrum* s);
FB_API void fb_spectrum_destroy(fb_spectrum* s);

/* Spectator function of one level, tabulated on the solver grid. */
typedef struct fb_spectator fb_spectator;
FB_API fb_status fb_spectator_compute(double eps2, size_t level, const fb_settings* settings,
                                      fb_spectator** out);
FB_API double fb_spectator_binding(const fb_spectator* s);
FB_API size_t fb_spectator_size(const fb_spectator* s);
FB_API size_t fb_spectator_pivot(const fb_spectator* s);
FB_API double fb_spectator_residual(const fb_spectator* s);
FB_API fb_status fb_spectator_point(const fb_spectator* s, size_t index, double* y, double* f);
FB_API void fb_spectator_destroy(fb_spectator* s);

/* Three-body wave function built from a spectator table. Radial grids use
 * n_radial points with map scale sqrt(eps3); 0 selects the defaults. */
typedef struct fb_wavefunction fb_wavefunction;
FB_API fb_status fb_wavefunction_create(const fb_spectator* spectator, fb_wavefunction** out);
FB_API fb_status fb_wavefunction_norm(const fb_wavefunction* wf, size_t n_radial, size_t n_angular,
                                      double* out);
/* Rescales wf in place so that its norm is 1. */
FB_API fb_status fb_wavefunction_normalize(fb_wavefunction* wf, size_t n_radial, size_t n_angular);
/* Psi from |q|, |p| and z = cos(q, p). */
FB_API fb_status fb_wavefunction_psi(const fb_wavefunction* wf, double q, double p, double z,
                                     double* out);
FB_API fb_status fb_wavefunction_psi_vec(const fb_wavefunction* wf, const double q[3],
                                         const double p[3], double* out);
/* n(q) = int d^3p |Psi(q, p)|^2. */
FB_API fb_status fb_wavefunction_density(const fb_wavefunction* wf, double q, size_t n_radial,
                                         size_t n_angular, double* out);
/* Interpolated spectator function at y, including any normalization factor. */
FB_API fb_status fb_wavefunction_spectator(const fb_wavefunction* wf, double y, double* out);
FB_API double fb_wavefunction_binding(const fb_wavefunction* wf);
/* Number of spectator evaluations clamped to zero above y = 100. */
FB_API size_t fb_wavefunction_clamped(const fb_wavefunction* wf);
FB_API void fb_wavefunction_destroy(fb_wavefunction* wf);

/* Elastic atom-dimer scattering below breakup, E3 = -eps2 + 3/4 k^2. */
typedef struct fb_scattering fb_scattering;
/* check_refinement != 0 re-solves on a doubled grid and fails with
 * FB_ERR_NUMERICAL_QUALITY when the on-shell value moves by more than 1e-4. */
FB_API fb_status fb_scattering_compute(double eps2, double k, const fb_settings* settings,
                                       int check_refinement, fb_scattering** out);
FB_API double fb_scattering_k(const fb_scattering* s);
FB_API double fb_scattering_energy(const fb_scattering* s);
FB_API void fb_scattering_on_shell(const fb_scattering* s, double* re, double* im);
FB_API double fb_scattering_cross_section(const fb_scattering* s);
FB_API double fb_scattering_condition(const fb_scattering* s);
FB_API double fb_scattering_refinement_drift(const fb_scattering* s);
FB_API size_t fb_scattering_size(const fb_scattering* s);
FB_API fb_status fb_scattering_offshell(const fb_scattering* s, size_t index, double* y, double* re,
                                        double* im);
FB_API void fb_scattering_destroy(fb_scattering* s);

/* Scaling curve of levels N and N + 1 against eps2. */
typedef struct fb_scaling_point {
  double eps2;
  double level_n_energy;
  double level_n1_energy;
  double x; /* sqrt(eps2 / eps3^(N)) */
  double y; /* sqrt(eps3^(N+1) / eps3^(N)) */
} fb_scaling_point;

typedef struct fb_scaling_curve fb_scaling_curve;
FB_API fb_status fb_scaling_curve_compute(const double* eps2, size_t count, size_t level,
                                          const fb_settings* settings, fb_scaling_curve** out);
FB_API size_t fb_scaling_curve_count(const fb_scaling_curve* c);
FB_API fb_status fb_scaling_curve_point(const fb_scaling_curve* c, size_t index,
                                        fb_scaling_point* out);
FB_API size_t fb_scaling_curve_diagnostic_count(const fb_scaling_curve* c);
FB_API const char* fb_scaling_curve_diagnostic(const fb_scaling_curve* c, size_t index);
FB_API void fb_scaling_curve_destroy(fb_scaling_curve* c);

typedef struct fb_threshold_result {
  double ratio;          /* eps2 / eps3^(N) where level N + 1 meets the cut */
  double eps2;
  double level_n_energy;
} fb_threshold_result;

/* bracket_growth <= 0 selects the default of 2. */
FB_API fb_status fb_threshold_locate(size_t level, const fb_settings* settings,
                                     double bracket_growth, fb_threshold_result* out);

/* Runs the built-in closed-form checks. `callback` may be NULL. */
typedef void (*fb_selftest_callback)(const char* name, int passed, const char* detail,
                                     void* user);
FB_API fb_status fb_selftest(fb_selftest_callback callback, void* user, size_t* passed,
                             size_t* total);

#ifdef __cplusplus
}
#endif

#endif /* FEWBODY_FEWBODY_H */
