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

#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace fewbody {

namespace {

struct LegendreValue {
  double p;   // P_n(z)
  double dp;  // P_n'(z)
};

LegendreValue legendre(std::size_t n, double z) {
  double p0 = 1.0;
  double p1 = z;
  for (std::size_t j = 2; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    const double p2 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p0) / jd;
    p0 = p1;
    p1 = p2;
  }
  const double nd = static_cast<double>(n);
  return {p1, nd * (z * p1 - p0) / (z * z - 1.0)};
}

}  // namespace

ReferenceRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "gauss_legendre: n must be >= 1");

  ReferenceRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }

  const std::size_t half = (n + 1) / 2;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    LegendreValue v = legendre(n, z);
    for (int iter = 0; iter < 100; ++iter) {
      const double dz = v.p / v.dp;
      z -= dz;
      v = legendre(n, z);
      if (std::abs(dz) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * v.dp * v.dp);
    // z is the i-th largest root.
    rule.nodes[n - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double tangent_map(double t, double scale) {
  return scale * std::tan(std::numbers::pi * (t + 1.0) / 4.0);
}

MomentumGrid MomentumGrid::from_reference(const ReferenceRule& rule, double map_scale) {
  if (!(map_scale > 0.0) || !std::isfinite(map_scale))
    throw Error(ErrorCode::invalid_argument, "map_to_halfline: map_scale must be positive");
  if (rule.nodes.empty() || rule.nodes.size() != rule.weights.size())
    throw Error(ErrorCode::invalid_argument, "map_to_halfline: malformed reference rule");

  MomentumGrid grid;
  grid.map_scale_ = map_scale;
  grid.nodes_.reserve(rule.nodes.size());
  grid.weights_.reserve(rule.nodes.size());
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = quarter_pi * (rule.nodes[i] + 1.0);
    const double c = std::cos(theta);
    grid.nodes_.push_back(map_scale * std::tan(theta));
    grid.weights_.push_back(rule.weights[i] * map_scale * quarter_pi / (c * c));
  }
  return grid;
}

MomentumGrid MomentumGrid::tangent(std::size_t n, double map_scale) {
  return from_reference(gauss_legendre(n), map_scale);
}

std::size_t MomentumGrid::nearest(double y) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), y);
  if (it == nodes_.begin()) return 0;
  if (it == nodes_.end()) return nodes_.size() - 1;
  const auto lo = std::prev(it);
  return static_cast<std::size_t>((y - *lo <= *it - y ? lo : it) - nodes_.begin());
}

MomentumGrid map_to_halfline(const ReferenceRule& rule, double map_scale) {
  return MomentumGrid::from_reference(rule, map_scale);
}

}  // namespace fewbody
