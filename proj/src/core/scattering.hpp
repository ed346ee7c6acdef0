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

// Elastic atom-dimer scattering below breakup.
//
// With E3 = -eps2 + 3/4 k^2 and tau_hat(y) = tau(E3 - 3/4 y^2) * 3/4 (k^2 - y^2)
// (tau with the dimer pole divided out), the s-wave half-off-shell amplitude
// obeys
//
//   h(y) = 2 tau_hat(y) dL(y, k)
//        + 4 pi tau_hat(y) int_0^inf dx x^2 dL(y, x) h(x) / (3/4 (k^2 - x^2) + i0),
//
// dL(y, x) = L(E3; y, x) - L(-1; y, x). The pole at x = k is subtracted:
//
//   int F(x) / (3/4 (k^2 - x^2) + i0) dx
//     = 4/3 [ sum_j w_j (F(x_j) - F(k)) / (k^2 - x_j^2) - i pi F(k) / (2k) ],
//
// using PV int_0^inf dx / (k^2 - x^2) = 0, with h(k) carried as one extra
// unknown. Normalization follows h = 2 tau_hat a, where a is the s-wave
// projected amplitude; overall (2 pi)^(3/2) factors are dropped.

#ifndef FEWBODY_CORE_SCATTERING_HPP
#define FEWBODY_CORE_SCATTERING_HPP

#include <complex>
#include <vector>

#include "core/quadrature.hpp"
#include "core/twobody.hpp"

namespace fewbody {

using complex = std::complex<double>;

class ElasticChannel {
 public:
  /// Throws no_bound_state for eps2 = 0, invalid_argument for k <= 0 and
  /// unsupported_region at or above breakup (3/4 k^2 >= eps2).
  ElasticChannel(ChannelConfig cfg, double k);

  const ChannelConfig& config() const noexcept { return cfg_; }
  double k() const noexcept { return k_; }
  double energy() const noexcept { return e3_; }

  /// tau(E3 - 3/4 y^2) * 3/4 (k^2 - y^2); regular at y = k.
  double tau_hat(double y) const;

 private:
  ChannelConfig cfg_;
  double k_;
  double e3_;
};

struct ScatteringSolution {
  double k = 0.0;
  double eps2 = 0.0;
  double energy = 0.0;
  MomentumGrid grid;          // as used (possibly jittered away from k)
  std::vector<complex> h;     // h(y_i, k)
  complex on_shell;           // h(k, k)
  double cross_section = 0.0; // |h(k, k)|^2
  double condition = 1.0;
  bool ill_conditioned = false;
  double refinement_drift = 0.0;  // relative on-shell change n -> 2n, if checked
};

/// 2 tau_hat(y) [L(E3; y, k) - L(-1; y, k)].
double scattering_driver(double y, const ElasticChannel& channel);

struct ScatterOptions {
  unsigned threads = 0;
  bool check_refinement = true;  // re-solve with 2n points, require drift <= 1e-4
  double driver_scale = 1.0;     // multiplies the inhomogeneous term
};

/// Pole-subtracted Nystrom solve. If a node lies within 1e-6 of k the grid
/// map scale is nudged by one part in 1e3.
ScatteringSolution solve_scattering(const ElasticChannel& channel, const MomentumGrid& grid,
                                    const ScatterOptions& options = {});

double cross_section(const ScatteringSolution& sol);

}  // namespace fewbody

#endif  // FEWBODY_CORE_SCATTERING_HPP
