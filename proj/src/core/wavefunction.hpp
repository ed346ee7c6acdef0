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

// Three-boson wave function built from the spectator function,
//
//   Psi(q, p) = [f(|q|) + f(|p - q/2|) + f(|p + q/2|)] / (eps3 + p^2 + 3/4 q^2),
//
// in Jacobi momenta (q: spectator against the pair, p: pair relative).
// Overall constants are absorbed by the normalization
//
//   int d^3q d^3p |Psi|^2 = 8 pi^2 int q^2 dq int p^2 dp int_{-1}^{1} dz |Psi|^2,
//
// z = cos(q, p); the s-wave Psi depends only on |q|, |p| and z.

#ifndef FEWBODY_CORE_WAVEFUNCTION_HPP
#define FEWBODY_CORE_WAVEFUNCTION_HPP

#include <atomic>
#include <cstddef>
#include <memory>
#include <vector>

#include "core/bound_state.hpp"
#include "core/quadrature.hpp"

namespace fewbody {

/// Spectator arguments above this are clamped to f = 0.
inline constexpr double kSpectatorCeiling = 100.0;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Shape-preserving (Fritsch-Carlson) cubic of f against ln y, constant
/// below the first node and C / y^2 beyond the last, with C fitted on the
/// last decade of nodes.
class SpectatorInterpolant {
 public:
  explicit SpectatorInterpolant(const SpectatorTable& table);

  /// f(y); arguments above kSpectatorCeiling return 0 and bump the counter.
  double operator()(double y) const;

  double tail_coefficient() const noexcept { return tail_c_; }
  std::size_t clamped() const noexcept { return clamped_->load(std::memory_order_relaxed); }

 private:
  std::vector<double> log_y_;
  std::vector<double> f_;
  std::vector<double> slope_;  // df / d ln y at nodes
  double y_first_ = 0.0;
  double y_last_ = 0.0;
  double tail_c_ = 0.0;
  std::shared_ptr<std::atomic<std::size_t>> clamped_;
};

class WaveFunction {
 public:
  explicit WaveFunction(const SpectatorTable& table, double scale = 1.0);

  /// Psi(q, p) for Jacobi 3-vectors.
  double psi(const Vec3& q, const Vec3& p) const;
  /// Psi from magnitudes and z = cos(q, p).
  double psi(double q, double p, double z) const;
  /// scale * f(y).
  double spectator_value(double y) const { return scale_ * interp_(y); }

  double binding() const noexcept { return eps3_; }
  double scale() const noexcept { return scale_; }
  const SpectatorTable& source() const noexcept { return *source_; }
  std::size_t clamped_evaluations() const noexcept { return interp_.clamped(); }

  /// Same wave function with f multiplied by c.
  WaveFunction scaled(double c) const;

 private:
  std::shared_ptr<const SpectatorTable> source_;
  SpectatorInterpolant interp_;
  double eps3_;
  double scale_;
};

/// Tangent grid with map scale sqrt(eps3), the natural momentum of the state.
MomentumGrid default_integration_grid(const WaveFunction& wf, std::size_t n = 96);

/// int d^3q d^3p |Psi|^2 on the given grids. The same integral is repeated
/// with both point counts doubled; a relative drift above 1% throws
/// normalization_unstable.
double norm(const WaveFunction& wf, const MomentumGrid& q_grid, const MomentumGrid& p_grid,
            std::size_t angular_n = 32);

/// wf scaled so that norm(...) on the same grids is 1.
WaveFunction normalize(const WaveFunction& wf, const MomentumGrid& q_grid,
                       const MomentumGrid& p_grid, std::size_t angular_n = 32);

/// n(q) = int d^3p |Psi(q, p)|^2.
double momentum_density(const WaveFunction& wf, double q, const MomentumGrid& p_grid,
                        std::size_t angular_n = 32);

}  // namespace fewbody

#endif  // FEWBODY_CORE_WAVEFUNCTION_HPP
