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

#include "core/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/bound_state.hpp"
#include "core/errors.hpp"
#include "core/integral_eq.hpp"
#include "core/parallel.hpp"

namespace fewbody {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeClearance = 1e-6;
constexpr double kRefinementLimit = 1e-4;

double subtracted_log(double e3, double y, double x) {
  return angular_log(e3, y, x) - angular_log(kSubtractionEnergy, y, x);
}

MomentumGrid clear_of_pole(const MomentumGrid& grid, double k) {
  MomentumGrid g = grid;
  for (int attempt = 0; attempt < 16; ++attempt) {
    bool close = false;
    for (double x : g.nodes()) close = close || std::abs(x - k) < kNodeClearance;
    if (!close) return g;
    g = MomentumGrid::tangent(g.size(), g.map_scale() * (1.0 + 1e-3));
  }
  throw Error(ErrorCode::numerical_quality, "scattering: could not move grid nodes off x = k");
}

ScatteringSolution solve_once(const ElasticChannel& ch, const MomentumGrid& grid,
                              const ScatterOptions& opt) {
  const std::size_t n = grid.size();
  const double k = ch.k();
  const double k2 = k * k;
  const double e3 = ch.energy();
  const double residue = tau_pole_residue(ch.config());

  // Collocation points: the grid nodes plus y = k as the last row/column.
  std::vector<double> points(grid.nodes().begin(), grid.nodes().end());
  points.push_back(k);

  double pv_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) pv_sum += grid.weight(j) / (k2 - grid.node(j) * grid.node(j));

  DenseMatrix<complex> a(n + 1);
  std::vector<complex> rhs(n + 1);
  parallel_for(n + 1, opt.threads, [&](std::size_t i) {
    const double y = points[i];
    const double th = i == n ? residue : ch.tau_hat(y);
    const double pref = 4.0 * kPi * th;
    auto row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid.node(j);
      const double kern = pref * x * x * subtracted_log(e3, y, x);
      row[j] = -grid.weight(j) * kern * (4.0 / 3.0) / (k2 - x * x);
    }
    // F(k) = 4 pi tau_hat(y) k^2 dL(y, k) h(k); tau_hat(k) is the pole residue.
    const double fk = pref * k2 * subtracted_log(e3, y, k);
    row[n] = (4.0 / 3.0) * fk * complex(pv_sum, kPi / (2.0 * k));
    row[i] += 1.0;
    rhs[i] = opt.driver_scale * 2.0 * th * subtracted_log(e3, y, k);
    for (const complex& v : row)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "scattering: non-finite matrix entry in row " << i << " at E3 = " << e3;
        throw AssemblyError(i, 0, e3, os.str());
      }
  });

  Solution<complex> sol = solve_dense<complex>(std::move(a), rhs);
  ScatteringSolution out;
  out.k = k;
  out.eps2 = ch.config().eps2();
  out.energy = e3;
  out.grid = grid;
  out.h.assign(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(n));
  out.on_shell = sol.values[n];
  out.cross_section = std::norm(out.on_shell);
  out.condition = sol.condition;
  out.ill_conditioned = sol.ill_conditioned;
  return out;
}

}  // namespace

ElasticChannel::ElasticChannel(ChannelConfig cfg, double k) : cfg_(cfg), k_(k), e3_(0.0) {
  if (cfg.eps2() == 0.0)
    throw Error(ErrorCode::no_bound_state, "scattering needs a bound dimer (eps2 > 0)");
  if (!(k > 0.0) || !std::isfinite(k)) {
    std::ostringstream os;
    os << "scattering: k must be positive (got " << k << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  e3_ = -cfg.eps2() + 0.75 * k * k;
  if (!(e3_ < 0.0)) {
    std::ostringstream os;
    os << "scattering: E3 = " << e3_ << " is at or above breakup (k must be below "
       << std::sqrt(4.0 * cfg.eps2() / 3.0) << ")";
    throw Error(ErrorCode::unsupported_region, os.str());
  }
}

double ElasticChannel::tau_hat(double y) const {
  // tau(E') (E' + eps2) with E' = E3 - 3/4 y^2, written without the pole.
  return tau_pole_removed(e3_ - 0.75 * y * y, cfg_);
}

double scattering_driver(double y, const ElasticChannel& channel) {
  return 2.0 * channel.tau_hat(y) * subtracted_log(channel.energy(), y, channel.k());
}

ScatteringSolution solve_scattering(const ElasticChannel& channel, const MomentumGrid& grid,
                                    const ScatterOptions& options) {
  const MomentumGrid g = clear_of_pole(grid, channel.k());
  ScatteringSolution out = solve_once(channel, g, options);
  if (options.check_refinement) {
    const MomentumGrid fine = clear_of_pole(MomentumGrid::tangent(2 * g.size(), g.map_scale()), channel.k());
    const ScatteringSolution ref = solve_once(channel, fine, options);
    const double scale = std::abs(ref.on_shell);
    out.refinement_drift = scale > 0.0 ? std::abs(ref.on_shell - out.on_shell) / scale
                                       : std::abs(out.on_shell);
    if (!(out.refinement_drift <= kRefinementLimit)) {
      std::ostringstream os;
      os << "scattering: on-shell amplitude drifts by " << out.refinement_drift
         << " under grid refinement (limit " << kRefinementLimit << ")";
      throw Error(ErrorCode::numerical_quality, os.str());
    }
  }
  return out;
}

double cross_section(const ScatteringSolution& sol) { return std::norm(sol.on_shell); }

}  // namespace fewbody
