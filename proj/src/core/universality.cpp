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

#include "core/universality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace fewbody {

namespace {

constexpr double kCutMargin = 1e-8;
constexpr double kEps2Tolerance = 1e-7;

int sign_below_cut(double eps2, const SolverSettings& settings, const MomentumGrid& grid) {
  const ChannelConfig cfg(eps2);
  const BoundStateProblem problem(cfg, grid, {-std::max(1.0, 10.0 * eps2), -eps2 * (1.0 + kCutMargin)},
                                  settings.root_tolerance, settings.points_per_decade,
                                  settings.threads);
  return det_at(-eps2 * (1.0 + kCutMargin), problem).sign;
}

}  // namespace

ScalingCurve scaling_curve(const std::vector<double>& eps2_values, std::size_t level,
                           const SolverSettings& settings) {
  settings.validate();
  ScalingCurve curve;
  curve.grid_n = settings.grid_n;
  curve.map_scale = settings.map_scale;
  for (double eps2 : eps2_values) {
    const ChannelConfig cfg(eps2);
    const EfimovSpectrum found =
        find_levels(BoundStateProblem::from_settings(cfg, settings), level + 2);
    if (found.levels.size() < level + 2) {
      std::ostringstream os;
      os << "eps2 = " << eps2 << ": levels " << level << " and " << level + 1
         << " not both bound (" << found.levels.size() << " found)";
      curve.diagnostics.push_back(os.str());
      continue;
    }
    ScalingPoint p;
    p.eps2 = eps2;
    p.level = level;
    p.level_n_energy = found.levels[level];
    p.level_n1_energy = found.levels[level + 1];
    p.x = std::sqrt(eps2 / p.level_n_energy);
    p.y = std::sqrt(p.level_n1_energy / p.level_n_energy);
    curve.points.push_back(p);
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const ScalingPoint& a, const ScalingPoint& b) { return a.x < b.x; });
  return curve;
}

ThresholdResult threshold_locate(std::size_t level, const SolverSettings& settings,
                                 double bracket_growth) {
  settings.validate();
  if (!(bracket_growth > 1.0) || !std::isfinite(bracket_growth))
    throw Error(ErrorCode::invalid_argument, "threshold_locate: bracket_growth must exceed 1");

  ThresholdResult out;
  const MomentumGrid grid = settings.make_grid();
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << "threshold_locate: " << msg;
    for (const auto& t : out.trace) os << "\n  " << t;
    throw Error(ErrorCode::threshold, os.str());
  };
  auto note = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out.trace.push_back(os.str());
  };

  // At unitarity the tower is infinite; level N + 1 sets the starting eps2,
  // far below its own threshold and above that of level N + 2.
  const EfimovSpectrum unitary = find_levels(BoundStateProblem::from_settings(ChannelConfig(0.0), settings), level + 2);
  if (unitary.levels.size() < level + 2) fail("levels N and N+1 not found at eps2 = 0");
  double lo = unitary.levels[level + 1];
  note("eps2=0: eps3^(N+1) = ", lo);

  const EfimovSpectrum start = find_levels(BoundStateProblem::from_settings(ChannelConfig(lo), settings), level + 3);
  note("eps2=", lo, ": ", start.levels.size(), " level(s) bound");
  if (start.levels.size() != level + 2) fail("unexpected level count at the lower bracket");
  const int sign_lo = sign_below_cut(lo, settings, grid);

  const double ceiling = 10.0 * unitary.levels[level];
  double hi = lo * bracket_growth;
  while (sign_below_cut(hi, settings, grid) == sign_lo) {
    note("eps2=", hi, ": level N+1 still bound");
    lo = hi;
    hi *= bracket_growth;
    if (hi > ceiling) fail("level N+1 never reached the cut");
  }
  note("bracket [", lo, ", ", hi, "]");

  while (hi / lo - 1.0 > kEps2Tolerance) {
    const double mid = std::sqrt(lo * hi);
    if (sign_below_cut(mid, settings, grid) == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  out.eps2 = std::sqrt(lo * hi);

  const EfimovSpectrum at = find_levels(BoundStateProblem::from_settings(ChannelConfig(out.eps2), settings), level + 1);
  if (at.levels.size() < level + 1) fail("level N missing at the threshold");
  out.level_n_energy = at.levels[level];
  out.ratio = out.eps2 / out.level_n_energy;
  note("threshold eps2=", out.eps2, " eps3^(N)=", out.level_n_energy, " ratio=", out.ratio);
  return out;
}

}  // namespace fewbody
