// Copyright 2026 The fewbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fewbody/fewbody.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "core/bound_state.hpp"
#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/scattering.hpp"
#include "core/selftest.hpp"
#include "core/twobody.hpp"
#include "core/universality.hpp"
#include "core/wavefunction.hpp"

struct fb_spectrum {
  fewbody::EfimovSpectrum value;
};

struct fb_spectator {
  fewbody::SpectatorTable value;
};

struct fb_wavefunction {
  fewbody::WaveFunction value;
};

struct fb_scattering {
  fewbody::ScatteringSolution value;
};

struct fb_scaling_curve {
  fewbody::ScalingCurve value;
};

namespace {

using fewbody::ErrorCode;

constexpr std::size_t kDefaultRadial = 96;
constexpr std::size_t kDefaultAngular = 32;

thread_local std::string last_error;

fb_status record(fb_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
fb_status guarded(F&& body) noexcept {
  try {
    body();
    return FB_OK;
  } catch (const fewbody::Error& e) {
    return record(static_cast<fb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(FB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(FB_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(FB_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fewbody::Error(ErrorCode::invalid_argument, what);
}

fewbody::SolverSettings to_settings(const fb_settings* s) {
  fewbody::SolverSettings out;
  if (s != nullptr) {
    out.grid_n = s->grid_n;
    out.map_scale = s->map_scale;
    out.threads = s->threads;
    out.points_per_decade = s->points_per_decade;
    out.root_tolerance = s->root_tolerance;
    out.min_binding = s->min_binding;
  }
  out.validate();
  return out;
}

std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

fewbody::MomentumGrid radial_grid(const fewbody::WaveFunction& wf, std::size_t n) {
  return fewbody::default_integration_grid(wf, or_default(n, kDefaultRadial));
}

}  // namespace

extern "C" {

const char* fb_version(void) { return FEWBODY_VERSION_STRING; }

const char* fb_status_name(fb_status status) {
  switch (status) {
    case FB_OK:
      return "ok";
    case FB_ERR_INTERNAL:
      return "internal";
    default:
      if (status >= FB_ERR_INVALID_ARGUMENT && status <= FB_ERR_IO)
        return fewbody::error_code_name(static_cast<ErrorCode>(status));
      return "unknown";
  }
}

int fb_status_is_validation(fb_status status) {
  if (status < FB_ERR_INVALID_ARGUMENT || status > FB_ERR_IO) return 0;
  return fewbody::is_validation_error(static_cast<ErrorCode>(status)) ? 1 : 0;
}

const char* fb_last_error(void) { return last_error.c_str(); }

void fb_settings_default(fb_settings* settings) {
  if (settings == nullptr) return;
  const fewbody::SolverSettings d;
  settings->grid_n = d.grid_n;
  settings->map_scale = d.map_scale;
  settings->threads = d.threads;
  settings->points_per_decade = d.points_per_decade;
  settings->root_tolerance = d.root_tolerance;
  settings->min_binding = d.min_binding;
}

fb_status fb_gauss_legendre(size_t n, double* nodes, double* weights) {
  return guarded([&] {
    require(nodes != nullptr && weights != nullptr, "fb_gauss_legendre: null output");
    const auto r = fewbody::gauss_legendre(n);
    std::copy(r.nodes.begin(), r.nodes.end(), nodes);
    std::copy(r.weights.begin(), r.weights.end(), weights);
  });
}

fb_status fb_tangent_grid(size_t n, double map_scale, double* nodes, double* weights) {
  return guarded([&] {
    require(nodes != nullptr && weights != nullptr, "fb_tangent_grid: null output");
    const auto g = fewbody::MomentumGrid::tangent(n, map_scale);
    std::copy(g.nodes().begin(), g.nodes().end(), nodes);
    std::copy(g.weights().begin(), g.weights().end(), weights);
  });
}

fb_status fb_tau_inverse(double energy, double eps2, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_tau_inverse: null output");
    *out = fewbody::tau_inverse(energy, fewbody::ChannelConfig(eps2));
  });
}

fb_status fb_tau(double energy, double eps2, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_tau: null output");
    *out = fewbody::tau(energy, fewbody::ChannelConfig(eps2));
  });
}

fb_status fb_tau_residue(double eps2, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_tau_residue: null output");
    *out = fewbody::tau_pole_residue(fewbody::ChannelConfig(eps2));
  });
}

fb_status fb_feshbach_a(double a_bg, double b0, double delta_b, double field, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_feshbach_a: null output");
    *out = fewbody::feshbach_a(field, fewbody::FeshbachParams{a_bg, b0, delta_b});
  });
}

fb_status fb_angular_log(double a, double y, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_angular_log: null output");
    *out = fewbody::angular_log(a, y, x);
  });
}

fb_status fb_stm_kernel(double y, double x, double e3, double eps2, double* out) {
  return guarded([&] {
    require(out != nullptr, "fb_stm_kernel: null output");
    *out = fewbody::stm_kernel(y, x, e3, fewbody::ChannelConfig(eps2));
  });
}

fb_status fb_det_at(double e3, double eps2, const fb_settings* settings, int* sign,
                    double* log_abs) {
  return guarded([&] {
    require(sign != nullptr && log_abs != nullptr, "fb_det_at: null output");
    const auto s = to_settings(settings);
    const auto p = fewbody::BoundStateProblem::from_settings(fewbody::ChannelConfig(eps2), s);
    const auto d = fewbody::det_at(e3, p);
    *sign = d.sign;
    *log_abs = d.log_abs;
  });
}

fb_status fb_spectrum_compute(double eps2, size_t max_levels, const fb_settings* settings,
                              fb_spectrum** out) {
  return guarded([&] {
    require(out != nullptr, "fb_spectrum_compute: null output");
    *out = nullptr;
    const auto s = to_settings(settings);
    const auto p = fewbody::BoundStateProblem::from_settings(fewbody::ChannelConfig(eps2), s);
    *out = new fb_spectrum{fewbody::find_levels(p, max_levels)};
  });
}

size_t fb_spectrum_count(const fb_spectrum* s) { return s ? s->value.levels.size() : 0; }

fb_status fb_spectrum_level(const fb_spectrum* s, size_t index, double* eps3) {
  return guarded([&] {
    require(s != nullptr && eps3 != nullptr, "fb_spectrum_level: null argument");
    require(index < s->value.levels.size(), "fb_spectrum_level: index out of range");
    *eps3 = s->value.levels[index];
  });
}

fb_status fb_spectrum_ratio(const fb_spectrum* s, size_t index, double* ratio) {
  return guarded([&] {
    require(s != nullptr && ratio != nullptr, "fb_spectrum_ratio: null argument");
    require(index < s->value.ratios.size(), "fb_spectrum_ratio: index out of range");
    *ratio = s->value.ratios[index];
  });
}

const char* fb_spectrum_diagnostic(const fb_spectrum* s) {
  return s ? s->value.diagnostic.c_str() : "";
}

void fb_spectrum_destroy(fb_spectrum* s) { delete s; }

fb_status fb_spectator_compute(double eps2, size_t level, const fb_settings* settings,
                               fb_spectator** out) {
  return guarded([&] {
    require(out != nullptr, "fb_spectator_compute: null output");
    *out = nullptr;
    const auto s = to_settings(settings);
    const auto p = fewbody::BoundStateProblem::from_settings(fewbody::ChannelConfig(eps2), s);
    const auto found = fewbody::find_levels(p, level + 1);
    if (found.levels.size() <= level) {
      std::ostringstream os;
      os << "level " << level << " is not bound at eps2 = " << eps2 << " (" << found.levels.size()
         << " level(s) found)";
      throw fewbody::Error(ErrorCode::no_bound_state, os.str());
    }
    *out = new fb_spectator{fewbody::spectator(found.levels[level], p)};
  });
}

double fb_spectator_binding(const fb_spectator* s) { return s ? s->value.energy : 0.0; }
size_t fb_spectator_size(const fb_spectator* s) { return s ? s->value.values.size() : 0; }
size_t fb_spectator_pivot(const fb_spectator* s) { return s ? s->value.pivot : 0; }
double fb_spectator_residual(const fb_spectator* s) { return s ? s->value.residual : 0.0; }

fb_status fb_spectator_point(const fb_spectator* s, size_t index, double* y, double* f) {
  return guarded([&] {
    require(s != nullptr && y != nullptr && f != nullptr, "fb_spectator_point: null argument");
    require(index < s->value.values.size(), "fb_spectator_point: index out of range");
    *y = s->value.grid.node(index);
    *f = s->value.values[index];
  });
}

void fb_spectator_destroy(fb_spectator* s) { delete s; }

fb_status fb_wavefunction_create(const fb_spectator* spectator, fb_wavefunction** out) {
  return guarded([&] {
    require(spectator != nullptr && out != nullptr, "fb_wavefunction_create: null argument");
    *out = nullptr;
    *out = new fb_wavefunction{fewbody::WaveFunction(spectator->value)};
  });
}

fb_status fb_wavefunction_norm(const fb_wavefunction* wf, size_t n_radial, size_t n_angular,
                               double* out) {
  return guarded([&] {
    require(wf != nullptr && out != nullptr, "fb_wavefunction_norm: null argument");
    const auto g = radial_grid(wf->value, n_radial);
    *out = fewbody::norm(wf->value, g, g, or_default(n_angular, kDefaultAngular));
  });
}

fb_status fb_wavefunction_normalize(fb_wavefunction* wf, size_t n_radial, size_t n_angular) {
  return guarded([&] {
    require(wf != nullptr, "fb_wavefunction_normalize: null argument");
    const auto g = radial_grid(wf->value, n_radial);
    wf->value = fewbody::normalize(wf->value, g, g, or_default(n_angular, kDefaultAngular));
  });
}

fb_status fb_wavefunction_psi(const fb_wavefunction* wf, double q, double p, double z,
                              double* out) {
  return guarded([&] {
    require(wf != nullptr && out != nullptr, "fb_wavefunction_psi: null argument");
    require(q >= 0.0 && p >= 0.0 && z >= -1.0 && z <= 1.0,
            "fb_wavefunction_psi: need q, p >= 0 and |z| <= 1");
    *out = wf->value.psi(q, p, z);
  });
}

fb_status fb_wavefunction_psi_vec(const fb_wavefunction* wf, const double q[3], const double p[3],
                                  double* out) {
  return guarded([&] {
    require(wf != nullptr && q != nullptr && p != nullptr && out != nullptr,
            "fb_wavefunction_psi_vec: null argument");
    *out = wf->value.psi(fewbody::Vec3{q[0], q[1], q[2]}, fewbody::Vec3{p[0], p[1], p[2]});
  });
}

fb_status fb_wavefunction_density(const fb_wavefunction* wf, double q, size_t n_radial,
                                  size_t n_angular, double* out) {
  return guarded([&] {
    require(wf != nullptr && out != nullptr, "fb_wavefunction_density: null argument");
    require(q >= 0.0, "fb_wavefunction_density: q must be >= 0");
    *out = fewbody::momentum_density(wf->value, q, radial_grid(wf->value, n_radial),
                                     or_default(n_angular, kDefaultAngular));
  });
}

fb_status fb_wavefunction_spectator(const fb_wavefunction* wf, double y, double* out) {
  return guarded([&] {
    require(wf != nullptr && out != nullptr, "fb_wavefunction_spectator: null argument");
    require(y >= 0.0, "fb_wavefunction_spectator: y must be >= 0");
    *out = wf->value.spectator_value(y);
  });
}

double fb_wavefunction_binding(const fb_wavefunction* wf) { return wf ? wf->value.binding() : 0.0; }

size_t fb_wavefunction_clamped(const fb_wavefunction* wf) {
  return wf ? wf->value.clamped_evaluations() : 0;
}

void fb_wavefunction_destroy(fb_wavefunction* wf) { delete wf; }

fb_status fb_scattering_compute(double eps2, double k, const fb_settings* settings,
                                int check_refinement, fb_scattering** out) {
  return guarded([&] {
    require(out != nullptr, "fb_scattering_compute: null output");
    *out = nullptr;
    const auto s = to_settings(settings);
    const fewbody::ElasticChannel ch(fewbody::ChannelConfig(eps2), k);
    fewbody::ScatterOptions opt;
    opt.threads = s.threads;
    opt.check_refinement = check_refinement != 0;
    *out = new fb_scattering{fewbody::solve_scattering(ch, s.make_grid(), opt)};
  });
}

double fb_scattering_k(const fb_scattering* s) { return s ? s->value.k : 0.0; }
double fb_scattering_energy(const fb_scattering* s) { return s ? s->value.energy : 0.0; }

void fb_scattering_on_shell(const fb_scattering* s, double* re, double* im) {
  if (s == nullptr) return;
  if (re) *re = s->value.on_shell.real();
  if (im) *im = s->value.on_shell.imag();
}

double fb_scattering_cross_section(const fb_scattering* s) {
  return s ? s->value.cross_section : 0.0;
}
double fb_scattering_condition(const fb_scattering* s) { return s ? s->value.condition : 0.0; }
double fb_scattering_refinement_drift(const fb_scattering* s) {
  return s ? s->value.refinement_drift : 0.0;
}
size_t fb_scattering_size(const fb_scattering* s) { return s ? s->value.h.size() : 0; }

fb_status fb_scattering_offshell(const fb_scattering* s, size_t index, double* y, double* re,
                                 double* im) {
  return guarded([&] {
    require(s != nullptr && y != nullptr && re != nullptr && im != nullptr,
            "fb_scattering_offshell: null argument");
    require(index < s->value.h.size(), "fb_scattering_offshell: index out of range");
    *y = s->value.grid.node(index);
    *re = s->value.h[index].real();
    *im = s->value.h[index].imag();
  });
}

void fb_scattering_destroy(fb_scattering* s) { delete s; }

fb_status fb_scaling_curve_compute(const double* eps2, size_t count, size_t level,
                                   const fb_settings* settings, fb_scaling_curve** out) {
  return guarded([&] {
    require(out != nullptr && (eps2 != nullptr || count == 0),
            "fb_scaling_curve_compute: null argument");
    *out = nullptr;
    const auto s = to_settings(settings);
    const std::vector<double> values(eps2, eps2 + count);
    *out = new fb_scaling_curve{fewbody::scaling_curve(values, level, s)};
  });
}

size_t fb_scaling_curve_count(const fb_scaling_curve* c) { return c ? c->value.points.size() : 0; }

fb_status fb_scaling_curve_point(const fb_scaling_curve* c, size_t index, fb_scaling_point* out) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "fb_scaling_curve_point: null argument");
    require(index < c->value.points.size(), "fb_scaling_curve_point: index out of range");
    const auto& p = c->value.points[index];
    *out = fb_scaling_point{p.eps2, p.level_n_energy, p.level_n1_energy, p.x, p.y};
  });
}

size_t fb_scaling_curve_diagnostic_count(const fb_scaling_curve* c) {
  return c ? c->value.diagnostics.size() : 0;
}

const char* fb_scaling_curve_diagnostic(const fb_scaling_curve* c, size_t index) {
  if (c == nullptr || index >= c->value.diagnostics.size()) return "";
  return c->value.diagnostics[index].c_str();
}

void fb_scaling_curve_destroy(fb_scaling_curve* c) { delete c; }

fb_status fb_threshold_locate(size_t level, const fb_settings* settings, double bracket_growth,
                              fb_threshold_result* out) {
  return guarded([&] {
    require(out != nullptr, "fb_threshold_locate: null output");
    const auto s = to_settings(settings);
    const auto r = fewbody::threshold_locate(level, s, bracket_growth > 0.0 ? bracket_growth : 2.0);
    *out = fb_threshold_result{r.ratio, r.eps2, r.level_n_energy};
  });
}

fb_status fb_selftest(fb_selftest_callback callback, void* user, size_t* passed, size_t* total) {
  return guarded([&] {
    const auto cases = fewbody::run_selftest();
    std::size_t ok = 0;
    for (const auto& c : cases) {
      ok += c.passed ? 1 : 0;
      if (callback) callback(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
    }
    if (passed) *passed = ok;
    if (total) *total = cases.size();
  });
}

}  // extern "C"
