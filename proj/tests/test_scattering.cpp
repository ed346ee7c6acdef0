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


#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "core/bound_state.hpp"
#include "core/errors.hpp"
#include "core/scattering.hpp"
#include "oracles/oracles.hpp"

using namespace fewbody;

namespace {

const MomentumGrid& grid() {
  static const MomentumGrid g = MomentumGrid::tangent(300, 0.01);
  return g;
}

ScatteringSolution solve(double eps2, double k, ScatterOptions opt = {}) {
  return solve_scattering(ElasticChannel(ChannelConfig(eps2), k), grid(), opt);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("channel validation") {
  CHECK(code_of([] { ElasticChannel(ChannelConfig(0.0), 0.1); }) == ErrorCode::no_bound_state);
  CHECK(code_of([] { ElasticChannel(ChannelConfig(1.0), 0.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { ElasticChannel(ChannelConfig(1.0), -0.2); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { ElasticChannel(ChannelConfig(0.75), 1.0); }) == ErrorCode::unsupported_region);
  CHECK(code_of([] { ElasticChannel(ChannelConfig(1.0), 2.0); }) == ErrorCode::unsupported_region);
  const ElasticChannel ch(ChannelConfig(1.0), 0.4);
  CHECK(ch.energy() == doctest::Approx(-1.0 + 0.75 * 0.16));
}

TEST_CASE("driver identities and a composed spot value") {
  const double k = std::sqrt(4.0 / 3.0);
  const ElasticChannel sub(ChannelConfig(2.0), k);
  for (double y : {0.0, 1e-3, 0.5, 7.0}) CHECK(scattering_driver(y, sub) == 0.0);

  const ElasticChannel ch(ChannelConfig(1.0), 0.1);
  CHECK(std::abs(scattering_driver(1e8, ch)) < 1e-12);
  const double e3 = ch.energy();
  const double composed = 2.0 * tau_pole_removed(e3 - 0.75 * 0.01, ChannelConfig(1.0)) *
                          (angular_log(e3, 0.1, 0.1) - angular_log(-1.0, 0.1, 0.1));
  CHECK(scattering_driver(0.1, ch) == doctest::Approx(composed).epsilon(1e-14));
  CHECK(std::isfinite(composed));
  CHECK(composed != 0.0);
}

TEST_CASE("zero driver gives zero amplitude") {
  const auto s = solve(2.0, std::sqrt(4.0 / 3.0));
  CHECK(s.on_shell == complex(0.0));
  for (const auto& h : s.h) CHECK(h == complex(0.0));
  CHECK(cross_section(s) == 0.0);
}

TEST_CASE("pole subtraction agrees with the extrapolated +i eps solve") {
  const auto s = solve(1.0, 0.3);
  const complex ref = oracle::scattering_extrapolated(1.0, 0.3);
  CHECK(std::abs(s.on_shell - ref) / std::abs(ref) < 1e-4);
  CHECK(s.refinement_drift < 1e-4);
  CHECK_FALSE(s.ill_conditioned);
}

TEST_CASE("elastic unitarity: Im(1/h) / (-k) is k-independent") {
  std::vector<double> c;
  for (double f : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double k = f * std::sqrt(4.0 / 3.0);
    const auto s = solve(1.0, k);
    c.push_back((1.0 / s.on_shell).imag() / (-k));
  }
  for (double v : c) CHECK(std::abs(v / c.front() - 1.0) < 0.02);
}

TEST_CASE("linear in the driver") {
  ScatterOptions two;
  two.driver_scale = 2.0;
  const auto a = solve(1.0, 0.25);
  const auto b = solve(1.0, 0.25, two);
  CHECK(b.on_shell == 2.0 * a.on_shell);
  for (std::size_t i = 0; i < a.h.size(); ++i) CHECK(b.h[i] == 2.0 * a.h[i]);
}

TEST_CASE("low-energy limit is stable") {
  const double eps2 = 1e-4;
  const auto a = solve(eps2, 0.05 * std::sqrt(eps2));
  const auto b = solve(eps2, 0.01 * std::sqrt(eps2));
  CHECK(std::abs(a.on_shell.real() / b.on_shell.real() - 1.0) < 0.01);
  // The imaginary part vanishes linearly in k.
  CHECK(std::abs(b.on_shell.imag()) < 0.05 * std::abs(b.on_shell.real()));
}

TEST_CASE("node landing on the pole is moved away") {
  const double k = grid().node(150);
  REQUIRE(0.75 * k * k < 1.0);
  const auto s = solve(1.0, k);
  CHECK(s.grid.map_scale() != grid().map_scale());
  for (double x : s.grid.nodes()) CHECK(std::abs(x - k) >= 1e-6);
  CHECK(std::isfinite(s.on_shell.real()));
}

TEST_CASE("cross section") {
  const auto s = solve(1.0, 0.3);
  CHECK(cross_section(s) == doctest::Approx(std::norm(s.on_shell)));
  CHECK(s.cross_section == cross_section(s));
  ScatteringSolution rotated = s;
  rotated.on_shell *= std::polar(1.0, 0.7);
  CHECK(cross_section(rotated) == doctest::Approx(cross_section(s)).epsilon(1e-14));

  ScatterOptions opt;
  opt.check_refinement = false;
  const auto coarse = solve_scattering(ElasticChannel(ChannelConfig(1.0), 0.3), MomentumGrid::tangent(150, 0.01), opt);
  CHECK(std::abs(cross_section(coarse) / cross_section(s) - 1.0) < 0.01);
}

TEST_CASE("solutions are deterministic across thread counts") {
  ScatterOptions one;
  one.threads = 1;
  ScatterOptions four;
  four.threads = 4;
  const auto a = solve(0.5, 0.2, one);
  const auto b = solve(0.5, 0.2, four);
  CHECK(a.on_shell == b.on_shell);
}
