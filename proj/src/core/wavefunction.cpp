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

#include "core/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace fewbody {

namespace {

double end_slope(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0) return 0.0;
  if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3.0 * d0)) return 3.0 * d0;
  return d;
}

double integrate_norm(const WaveFunction& wf, const MomentumGrid& qg, const MomentumGrid& pg,
                      const ReferenceRule& z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < qg.size(); ++i) {
    const double q = qg.node(i);
    double inner = 0.0;
    for (std::size_t j = 0; j < pg.size(); ++j) {
      const double p = pg.node(j);
      double ang = 0.0;
      for (std::size_t k = 0; k < z.nodes.size(); ++k) {
        const double v = wf.psi(q, p, z.nodes[k]);
        ang += z.weights[k] * v * v;
      }
      inner += pg.weight(j) * p * p * ang;
    }
    sum += qg.weight(i) * q * q * inner;
  }
  return 8.0 * std::numbers::pi * std::numbers::pi * sum;
}

}  // namespace

SpectatorInterpolant::SpectatorInterpolant(const SpectatorTable& table)
    : clamped_(std::make_shared<std::atomic<std::size_t>>(0)) {
  const auto nodes = table.grid.nodes();
  const std::size_t n = nodes.size();
  if (n < 2 || table.values.size() != n)
    throw Error(ErrorCode::invalid_argument, "SpectatorInterpolant: table needs >= 2 matching values");
  log_y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) log_y_[i] = std::log(nodes[i]);
  f_ = table.values;
  y_first_ = nodes.front();
  y_last_ = nodes.back();

  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = log_y_[i + 1] - log_y_[i];
    delta[i] = (f_[i + 1] - f_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = delta[0];
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      slope_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  // Least-squares C in f ~ C / y^2 over the last decade of nodes.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i] < y_last_ / 10.0) continue;
    const double b = 1.0 / (nodes[i] * nodes[i]);
    num += f_[i] * b;
    den += b * b;
  }
  tail_c_ = den > 0.0 ? num / den : 0.0;
}

double SpectatorInterpolant::operator()(double y) const {
  if (y > kSpectatorCeiling) {
    clamped_->fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  if (y <= y_first_) return f_.front();
  if (y > y_last_) return tail_c_ / (y * y);
  const double t = std::log(y);
  const auto it = std::upper_bound(log_y_.begin(), log_y_.end(), t);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - log_y_.begin()), log_y_.size() - 1) - 1;
  const double h = log_y_[k + 1] - log_y_[k];
  const double s = (t - log_y_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * f_[k] + (s3 - 2.0 * s2 + s) * h * slope_[k] +
         (-2.0 * s3 + 3.0 * s2) * f_[k + 1] + (s3 - s2) * h * slope_[k + 1];
}

WaveFunction::WaveFunction(const SpectatorTable& table, double scale)
    : source_(std::make_shared<const SpectatorTable>(table)),
      interp_(*source_),
      eps3_(table.energy),
      scale_(scale) {
  if (!(eps3_ > 0.0))
    throw Error(ErrorCode::invalid_argument, "WaveFunction: binding energy must be positive");
}

double WaveFunction::psi(double q, double p, double z) const {
  const double pq = p * q * z;
  const double base = p * p + 0.25 * q * q;
  const double minus = std::sqrt(std::max(0.0, base - pq));
  const double plus = std::sqrt(std::max(0.0, base + pq));
  const double numerator = interp_(q) + interp_(minus) + interp_(plus);
  return scale_ * numerator / (eps3_ + p * p + 0.75 * q * q);
}

double WaveFunction::psi(const Vec3& q, const Vec3& p) const {
  const double qn = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double pn = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double dot = q.x * p.x + q.y * p.y + q.z * p.z;
  const double z = (qn > 0.0 && pn > 0.0) ? std::clamp(dot / (qn * pn), -1.0, 1.0) : 0.0;
  return psi(qn, pn, z);
}

WaveFunction WaveFunction::scaled(double c) const {
  WaveFunction out = *this;
  out.scale_ *= c;
  return out;
}

MomentumGrid default_integration_grid(const WaveFunction& wf, std::size_t n) {
  return MomentumGrid::tangent(n, std::sqrt(wf.binding()));
}

double norm(const WaveFunction& wf, const MomentumGrid& q_grid, const MomentumGrid& p_grid,
            std::size_t angular_n) {
  const ReferenceRule z = gauss_legendre(angular_n);
  const double coarse = integrate_norm(wf, q_grid, p_grid, z);
  const MomentumGrid q2 = MomentumGrid::tangent(2 * q_grid.size(), q_grid.map_scale());
  const MomentumGrid p2 = MomentumGrid::tangent(2 * p_grid.size(), p_grid.map_scale());
  const double fine = integrate_norm(wf, q2, p2, gauss_legendre(2 * angular_n));
  const double drift = std::abs(fine - coarse) / std::abs(fine);
  if (!std::isfinite(coarse) || !(coarse > 0.0) || !(drift <= 1e-2)) {
    std::ostringstream os;
    os << "norm: integral drifts by " << drift << " under grid doubling (" << coarse << " vs "
       << fine << ")";
    throw Error(ErrorCode::normalization_unstable, os.str());
  }
  return coarse;
}

WaveFunction normalize(const WaveFunction& wf, const MomentumGrid& q_grid,
                       const MomentumGrid& p_grid, std::size_t angular_n) {
  return wf.scaled(1.0 / std::sqrt(norm(wf, q_grid, p_grid, angular_n)));
}

double momentum_density(const WaveFunction& wf, double q, const MomentumGrid& p_grid,
                        std::size_t angular_n) {
  const ReferenceRule z = gauss_legendre(angular_n);
  double sum = 0.0;
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    const double p = p_grid.node(j);
    double ang = 0.0;
    for (std::size_t k = 0; k < z.nodes.size(); ++k) {
      const double v = wf.psi(q, p, z.nodes[k]);
      ang += z.weights[k] * v * v;
    }
    sum += p_grid.weight(j) * p * p * ang;
  }
  return 2.0 * std::numbers::pi * sum;
}

}  // namespace fewbody
