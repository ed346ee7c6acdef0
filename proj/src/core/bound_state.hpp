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

// Three identical bosons with zero-range pair interactions: the subtracted
// s-wave STM equation
//
//   f(y) = 4 pi tau(E3 - 3/4 y^2) int_0^inf dx x^2
//            [ L(E3; y, x) - L(-1; y, x) ] f(x),
//
//   L(a; y, x) = int_{-1}^{1} dz / (a - y^2 - x^2 - x y z),
//
// with the subtraction point at -1 (the unit of energy). Bound states are the
// energies E3 < -eps2 where det(1 - K(E3)) vanishes.

#ifndef FEWBODY_CORE_BOUND_STATE_HPP
#define FEWBODY_CORE_BOUND_STATE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "core/integral_eq.hpp"
#include "core/quadrature.hpp"
#include "core/twobody.hpp"

namespace fewbody {

/// Energy at which the three-body kernel is subtracted.
inline constexpr double kSubtractionEnergy = -1.0;

/// Numerical settings shared by every solver entry point.
struct SolverSettings {
  std::size_t grid_n = 300;
  double map_scale = 0.01;
  unsigned threads = 0;                // 0: one per logical core
  double points_per_decade = 200.0;    // determinant scan density
  double root_tolerance = 1e-10;       // relative bisection tolerance on E3
  double min_binding = 1e-12;          // shallowest binding scanned when eps2 = 0

  /// Throws invalid_argument for out-of-range fields.
  void validate() const;
  MomentumGrid make_grid() const { return MomentumGrid::tangent(grid_n, map_scale); }
};

/// (1 / (x y)) ln[(a - y^2 - x^2 + x y) / (a - y^2 - x^2 - x y)], with the
/// limit 2 / (a - y^2 - x^2) at x y = 0. Requires a < 0, x, y >= 0.
double angular_log(double a, double y, double x);

/// The subtracted s-wave STM kernel K(y, x; E3) above.
double stm_kernel(double y, double x, double e3, const ChannelConfig& cfg);

struct EnergyWindow {
  double lo;  // deepest energy scanned
  double hi;  // shallowest energy scanned; must satisfy hi <= -eps2
};

class BoundStateProblem {
 public:
  /// Throws invalid_argument unless lo < hi < 0 and hi <= -eps2.
  BoundStateProblem(ChannelConfig cfg, MomentumGrid grid, EnergyWindow window,
                    double root_tolerance = 1e-10, double points_per_decade = 200.0,
                    unsigned threads = 0);

  /// Window [-max(1, 10 eps2), -max(eps2 (1 + 1e-8), min_binding)].
  static BoundStateProblem from_settings(const ChannelConfig& cfg, const SolverSettings& s);

  const ChannelConfig& config() const noexcept { return cfg_; }
  const MomentumGrid& grid() const noexcept { return grid_; }
  const EnergyWindow& window() const noexcept { return window_; }
  double root_tolerance() const noexcept { return root_tolerance_; }
  double points_per_decade() const noexcept { return points_per_decade_; }
  unsigned threads() const noexcept { return threads_; }

 private:
  ChannelConfig cfg_;
  MomentumGrid grid_;
  EnergyWindow window_;
  double root_tolerance_;
  double points_per_decade_;
  unsigned threads_;
};

/// Levels for one eps2, deepest first. `levels` holds binding energies
/// eps3 > eps2 (the three-body energy is -eps3); ratios[i] = levels[i] /
/// levels[i+1].
struct EfimovSpectrum {
  double eps2 = 0.0;
  std::vector<double> levels;
  std::vector<double> ratios;
  std::size_t grid_n = 0;
  double map_scale = 0.0;
  std::string diagnostic;  // non-empty when fewer levels than requested
};

/// Spectator function f on the grid, normalized to 1 at `pivot`.
struct SpectatorTable {
  double energy = 0.0;  // eps3 > 0
  MomentumGrid grid;
  std::vector<double> values;
  std::size_t pivot = 0;
  double residual = 0.0;  // max |M f| / max |f|
};

/// 1 - W K(E3) assembled on the problem grid.
KernelMatrix<double> stm_matrix(double e3, const BoundStateProblem& problem);

/// Signed log-determinant of stm_matrix. Any E3 < 0 is accepted; the window
/// only restricts find_levels.
LogDet det_at(double e3, const BoundStateProblem& problem);

/// Logarithmic scan of the window (deep to shallow) for sign changes of the
/// determinant, each refined by bisection. Returns at most max_levels levels.
EfimovSpectrum find_levels(const BoundStateProblem& problem, std::size_t max_levels);

/// Spectator function at a level found by find_levels (eps3 is the binding
/// energy). The homogeneous system is reduced by fixing f = 1 at the node
/// nearest sqrt(eps3); the next-nearest nodes are tried if that fails.
SpectatorTable spectator(double eps3, const BoundStateProblem& problem);

}  // namespace fewbody

#endif  // FEWBODY_CORE_BOUND_STATE_HPP
