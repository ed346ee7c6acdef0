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

// Renormalized zero-range two-body sector.
//
// Units: hbar = 1, all masses 1, momenta in units of the three-body
// subtraction scale mu and energies in units of mu^2. The pair reduced mass is
// 1/2, so the (2M)^(3/2) factor of the propagator is 1 and
//
//   tau^-1(E) = 2 pi^2 (sqrt(eps2) - sqrt(|E|)),   E < 0.

#ifndef FEWBODY_CORE_TWOBODY_HPP
#define FEWBODY_CORE_TWOBODY_HPP

namespace fewbody {

/// |tau^-1| below this is treated as sitting on the dimer pole.
inline constexpr double kPoleGuard = 1e-12;

/// Physics of one run: the dimensionless two-body binding energy eps2 >= 0
/// (0 is the unitarity limit). The subtraction point is fixed at -1.
class ChannelConfig {
 public:
  /// Throws ErrorCode::invalid_argument unless eps2 is finite and >= 0.
  explicit ChannelConfig(double eps2);
  double eps2() const noexcept { return eps2_; }
  double sqrt_eps2() const noexcept { return sqrt_eps2_; }

 private:
  double eps2_;
  double sqrt_eps2_;
};

struct FeshbachParams {
  double a_bg = 0.0;     // background scattering length
  double b0 = 0.0;       // resonance position
  double delta_b = 0.0;  // width parameter
};

/// 2 pi^2 (sqrt(eps2) - sqrt(|E|)). E >= 0 throws unsupported_region.
double tau_inverse(double energy, const ChannelConfig& cfg);

/// 1 / tau_inverse. Throws DimerPoleError when |tau^-1| < kPoleGuard.
double tau(double energy, const ChannelConfig& cfg);

/// tau(E) (E + eps2) = (sqrt(eps2) + sqrt(|E|)) / (2 pi^2): tau with the
/// dimer pole divided out. Finite at E = -eps2, where it equals the residue.
double tau_pole_removed(double energy, const ChannelConfig& cfg);

/// lim_{E -> -eps2} (E + eps2) tau(E) = sqrt(eps2) / pi^2. Throws
/// no_bound_state for eps2 = 0.
double tau_pole_residue(const ChannelConfig& cfg);

/// a(B) = a_bg (1 + delta_B / (B - B0)). Throws resonance_pole at B = B0 and
/// invalid_argument for non-finite parameters.
double feshbach_a(double field, const FeshbachParams& p);

}  // namespace fewbody

#endif  // FEWBODY_CORE_TWOBODY_HPP
