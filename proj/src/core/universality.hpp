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

#ifndef FEWBODY_CORE_UNIVERSALITY_HPP
#define FEWBODY_CORE_UNIVERSALITY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "core/bound_state.hpp"

namespace fewbody {

/// One point of the scaling curve of consecutive levels:
/// x = sqrt(eps2 / eps3^(N)), y = sqrt(eps3^(N+1) / eps3^(N)).
struct ScalingPoint {
  double eps2 = 0.0;
  std::size_t level = 0;  // N
  double level_n_energy = 0.0;
  double level_n1_energy = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct ScalingCurve {
  std::vector<ScalingPoint> points;     // sorted by x
  std::vector<std::string> diagnostics; // one per skipped eps2
  std::size_t grid_n = 0;
  double map_scale = 0.0;
};

/// Runs find_levels for each eps2 and keeps the (x, y) pair of levels N and
/// N + 1 where both exist.
ScalingCurve scaling_curve(const std::vector<double>& eps2_values, std::size_t level,
                           const SolverSettings& settings);

struct ThresholdResult {
  double ratio = 0.0;           // eps2 / eps3^(N) when level N + 1 reaches the cut
  double eps2 = 0.0;            // eps2 at that point
  double level_n_energy = 0.0;  // eps3^(N) there
  std::vector<std::string> trace;
};

/// Bisects on eps2 for the value where level N + 1 merges with the
/// atom-dimer threshold. A level counts as gone once eps3 - eps2 < 1e-8 eps2:
/// the sign of det(-eps2 (1 + 1e-8)) flips exactly when it crosses.
/// `bracket_growth` (> 1) sets the geometric step of the initial upward scan.
ThresholdResult threshold_locate(std::size_t level, const SolverSettings& settings,
                                 double bracket_growth = 2.0);

}  // namespace fewbody

#endif  // FEWBODY_CORE_UNIVERSALITY_HPP
