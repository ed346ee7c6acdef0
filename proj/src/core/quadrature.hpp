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

#ifndef FEWBODY_CORE_QUADRATURE_HPP
#define FEWBODY_CORE_QUADRATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace fewbody {

/// Gauss-Legendre rule on [-1, 1], nodes in ascending order.
struct ReferenceRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Roots of P_n by Newton iteration (tolerance 1e-15) and the matching
/// weights. Throws ErrorCode::invalid_argument for n = 0.
ReferenceRule gauss_legendre(std::size_t n);

/// x = scale * tan(pi (t + 1) / 4); maps [-1, 1) onto [0, inf).
double tangent_map(double t, double scale);

/// Quadrature nodes and weights on the open momentum half-line (0, inf).
///
/// Momenta are dimensionless (units of the three-body subtraction scale).
/// Nodes are strictly increasing, positive and finite; weights are positive
/// and already include the Jacobian of the tangent map.
class MomentumGrid {
 public:
  MomentumGrid() = default;

  /// Maps a reference rule onto the half-line with the tangent map. Throws
  /// ErrorCode::invalid_argument unless map_scale is positive and finite.
  static MomentumGrid from_reference(const ReferenceRule& rule, double map_scale);

  /// Shorthand for from_reference(gauss_legendre(n), map_scale).
  static MomentumGrid tangent(std::size_t n, double map_scale = 1.0);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double map_scale() const noexcept { return map_scale_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Index of the node closest to y.
  std::size_t nearest(double y) const;

  /// Sum_i w_i f(x_i).
  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double map_scale_ = 1.0;
};

/// Free-function spelling of MomentumGrid::from_reference.
MomentumGrid map_to_halfline(const ReferenceRule& rule, double map_scale);

}  // namespace fewbody

#endif  // FEWBODY_CORE_QUADRATURE_HPP
