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

#include "core/twobody.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace fewbody {

namespace {

constexpr double kTwoPiSquared = 2.0 * std::numbers::pi * std::numbers::pi;

void require_negative(double energy, const char* who) {
  if (!(energy < 0.0)) {
    std::ostringstream os;
    os << who << ": E = " << energy << " is not below breakup (E < 0 required)";
    throw Error(ErrorCode::unsupported_region, os.str());
  }
}

}  // namespace

ChannelConfig::ChannelConfig(double eps2) : eps2_(eps2), sqrt_eps2_(std::sqrt(eps2)) {
  if (!std::isfinite(eps2) || eps2 < 0.0) {
    std::ostringstream os;
    os << "eps2 must be finite and >= 0 (got " << eps2 << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

double tau_inverse(double energy, const ChannelConfig& cfg) {
  require_negative(energy, "tau_inverse");
  return kTwoPiSquared * (cfg.sqrt_eps2() - std::sqrt(-energy));
}

double tau(double energy, const ChannelConfig& cfg) {
  const double inv = tau_inverse(energy, cfg);
  if (std::abs(inv) < kPoleGuard) {
    std::ostringstream os;
    os << "tau: E = " << energy << " sits on the dimer pole (distance to -eps2: "
       << energy + cfg.eps2() << ")";
    throw DimerPoleError(energy, energy + cfg.eps2(), os.str());
  }
  return 1.0 / inv;
}

double tau_pole_removed(double energy, const ChannelConfig& cfg) {
  require_negative(energy, "tau_pole_removed");
  return (cfg.sqrt_eps2() + std::sqrt(-energy)) / kTwoPiSquared;
}

double tau_pole_residue(const ChannelConfig& cfg) {
  if (cfg.eps2() == 0.0)
    throw Error(ErrorCode::no_bound_state, "tau_pole_residue: eps2 = 0 has no dimer pole");
  return 2.0 * cfg.sqrt_eps2() / kTwoPiSquared;
}

double feshbach_a(double field, const FeshbachParams& p) {
  if (!std::isfinite(field) || !std::isfinite(p.a_bg) || !std::isfinite(p.b0) ||
      !std::isfinite(p.delta_b))
    throw Error(ErrorCode::invalid_argument, "feshbach_a: non-finite parameter");
  if (field == p.b0) {
    std::ostringstream os;
    os << "feshbach_a: B = B0 = " << p.b0 << " is the resonance pole";
    throw Error(ErrorCode::resonance_pole, os.str());
  }
  return p.a_bg * (1.0 + p.delta_b / (field - p.b0));
}

}  // namespace fewbody
