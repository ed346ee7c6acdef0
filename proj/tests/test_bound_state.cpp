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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "core/bound_state.hpp"
#include "core/errors.hpp"
#include "oracles/oracles.hpp"

using namespace fewbody;

namespace {

constexpr double kPi = std::numbers::pi;

SolverSettings settings(std::size_t n) {
  SolverSettings s;
  s.grid_n = n;
  return s;
}

// Levels at eps2 = 0 on a 200-point grid, computed once per process.
const EfimovSpectrum& unitary_spectrum() {
  static const EfimovSpectrum s =
      find_levels(BoundStateProblem::from_settings(ChannelConfig(0.0), settings(200)), 3);
  return s;
}

const BoundStateProblem& unitary_problem() {
  static const BoundStateProblem p = BoundStateProblem::from_settings(ChannelConfig(0.0), settings(200));
  return p;
}

double det_value(double e3, const BoundStateProblem& p) {
  const LogDet d = det_at(e3, p);
  return d.sign * std::exp(d.log_abs);
}

}  // namespace

TEST_CASE("angular_log closed forms") {
  CHECK(angular_log(-2.0, 1.0, 1.0) == doctest::Approx(std::log(3.0 / 5.0)).epsilon(1e-14));
  for (double y : {0.0, 0.3, 4.0}) CHECK(angular_log(-1.0, y, 0.0) == doctest::Approx(2.0 / (-1.0 - y * y)));
  CHECK(angular_log(-1.0, 0.0, 2.0) == doctest::Approx(2.0 / (-1.0 - 4.0)));
  try {
    angular_log(0.0, 1.0, 1.0);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_region);
  }
}

TEST_CASE("angular_log matches 64-point z quadrature") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> la(-3.0, 1.0);
  std::uniform_real_distribution<double> lm(-3.0, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double a = -std::pow(10.0, la(rng));
    const double y = std::pow(10.0, lm(rng));
    const double x = std::pow(10.0, lm(rng));
    const double ref = oracle::angular_by_quadrature(a, y, x, 64);
    CHECK(std::abs(angular_log(a, y, x) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("STM kernel identities and a composed spot value") {
  const ChannelConfig unitary(0.0);
  for (double y : {1e-4, 0.2, 3.0, 80.0})
    for (double x : {1e-5, 0.7, 20.0}) CHECK(stm_kernel(y, x, -1.0, unitary) == 0.0);
  CHECK(stm_kernel(0.5, 0.0, -0.2, unitary) == 0.0);

  const double composed = 4.0 * kPi * tau(-0.1 - 0.75, unitary) *
                          (angular_log(-0.1, 1.0, 1.0) - angular_log(-1.0, 1.0, 1.0));
  CHECK(stm_kernel(1.0, 1.0, -0.1, unitary) == doctest::Approx(composed).epsilon(1e-14));
  CHECK(stm_kernel(1.0, 1.0, -0.1, unitary) == doctest::Approx(oracle::stm(1.0, 1.0, -0.1, 0.0)).epsilon(1e-12));
  CHECK(stm_kernel(0.3, 2.0, -0.7, ChannelConfig(0.2)) ==
        doctest::Approx(oracle::stm(0.3, 2.0, -0.7, 0.2)).epsilon(1e-12));
}

TEST_CASE("det at the subtraction point is exactly (+1, 0)") {
  for (double eps2 : {1.5, 4.0, 100.0}) {
    const BoundStateProblem p(ChannelConfig(eps2), MomentumGrid::tangent(120, 0.01), {-10.0 * eps2, -eps2});
    const LogDet d = det_at(-1.0, p);
    CHECK(d.sign == 1);
    CHECK(d.log_abs == 0.0);
    CHECK(stm_matrix(-1.0, p).entries == DenseMatrix<double>::identity(120));
  }
}

TEST_CASE("problem and settings validation") {
  const auto g = MomentumGrid::tangent(10);
  auto bad_window = [&](double lo, double hi, double eps2) {
    try {
      BoundStateProblem(ChannelConfig(eps2), g, {lo, hi});
    } catch (const Error& e) {
      return e.code() == ErrorCode::invalid_argument;
    }
    return false;
  };
  CHECK(bad_window(-1.0, -2.0, 0.0));
  CHECK(bad_window(-1.0, 0.0, 0.0));
  CHECK(bad_window(-1.0, -0.5, 0.6));
  CHECK_FALSE(bad_window(-1.0, -0.6, 0.6));

  SolverSettings s;
  CHECK_NOTHROW(s.validate());
  s.grid_n = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SolverSettings{};
  s.map_scale = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SolverSettings{};
  s.points_per_decade = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK_THROWS_AS(find_levels(BoundStateProblem(ChannelConfig(0.0), g, {-1.0, -0.1}), 0), Error);
}

TEST_CASE("Efimov tower at unitarity") {
  const auto& s = unitary_spectrum();
  REQUIRE(s.levels.size() == 3);
  CHECK(s.diagnostic.empty());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.levels[i] > 0.0);
    if (i > 0) CHECK(s.levels[i] < s.levels[i - 1]);
  }
  const double universal = std::exp(2.0 * kPi / 1.006);
  CHECK(std::abs(s.ratios[1] / universal - 1.0) < 0.05);
  CHECK(std::abs(s.ratios[0] / universal - 1.0) < 0.2);
  // Closer to the universal value higher up the tower.
  CHECK(std::abs(s.ratios[1] - universal) < std::abs(s.ratios[0] - universal));
}

TEST_CASE("ground state agrees with the dense-grid oracle and the frozen value") {
  const double dense = oracle::dense_ground_state();
  const double level = unitary_spectrum().levels[0];
  CHECK(std::abs(level / dense - 1.0) < 1e-3);
  CHECK(std::abs(level / 0.0092716847159 - 1.0) < 1e-3);
}

TEST_CASE("determinant changes sign across each level") {
  const auto& p = unitary_problem();
  for (double eps3 : unitary_spectrum().levels) {
    const int deep = det_at(-eps3 * (1.0 + 1e-6), p).sign;
    const int shallow = det_at(-eps3 * (1.0 - 1e-6), p).sign;
    CHECK(deep * shallow == -1);
  }
}

TEST_CASE("determinant is grid-stable away from roots") {
  for (double e3 : {-0.3, -0.003, -2e-6}) {
    const BoundStateProblem a(ChannelConfig(0.0), MomentumGrid::tangent(200, 0.01), {-1.0, -1e-12});
    const BoundStateProblem b(ChannelConfig(0.0), MomentumGrid::tangent(400, 0.01), {-1.0, -1e-12});
    const double da = det_value(e3, a);
    const double db = det_value(e3, b);
    CHECK(std::abs(da / db - 1.0) < 1e-4);
  }
}

TEST_CASE("window edges do not move the levels") {
  const auto& ref = unitary_spectrum();
  const BoundStateProblem shifted(ChannelConfig(0.0), MomentumGrid::tangent(200, 0.01), {-3.7, -1e-9});
  const auto s = find_levels(shifted, 3);
  REQUIRE(s.levels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(s.levels[i] / ref.levels[i] - 1.0) <= 1e-10);
}

TEST_CASE("level count does not decrease as eps2 is halved") {
  std::size_t prev = 0;
  for (double eps2 : {8e-6, 4e-6, 2e-6, 1e-6}) {
    const auto s = find_levels(BoundStateProblem::from_settings(ChannelConfig(eps2), settings(100)), 10);
    CHECK(s.levels.size() >= prev);
    for (double l : s.levels) CHECK(l > eps2);
    prev = s.levels.size();
  }
  CHECK(prev == 3);
}

TEST_CASE("empty window gives an empty spectrum with a diagnostic") {
  const auto s = find_levels(BoundStateProblem::from_settings(ChannelConfig(1.0), settings(80)), 2);
  CHECK(s.levels.empty());
  CHECK(s.ratios.empty());
  CHECK_FALSE(s.diagnostic.empty());
}

TEST_CASE("spectator function: pivot, residual and the SVD null vector") {
  const auto& p = unitary_problem();
  for (std::size_t level = 0; level < 3; ++level) {
    const double eps3 = unitary_spectrum().levels[level];
    const SpectatorTable t = spectator(eps3, p);
    CHECK(t.values[t.pivot] == 1.0);
    CHECK(t.residual < 1e-8);
    CHECK(t.pivot == p.grid().nearest(std::sqrt(eps3)));

    const auto m = stm_matrix(-eps3, p).entries;
    const std::size_t n = m.size();
    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) em(i, j) = m(i, j);
    const std::vector<double> v = oracle::null_vector(em);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(v[i] / v[t.pivot] - t.values[i]));
    CHECK(diff < 1e-8);
  }
}

TEST_CASE("spectator tail decays beyond y = 10") {
  const SpectatorTable t = spectator(unitary_spectrum().levels[1], unitary_problem());
  for (std::size_t i = 1; i < t.values.size(); ++i)
    if (t.grid.node(i - 1) > 10.0) CHECK(std::abs(t.values[i]) < std::abs(t.values[i - 1]));
}

TEST_CASE("log-periodic nodes of the second excited level") {
  const double eps3 = unitary_spectrum().levels[2];
  const SpectatorTable t = spectator(eps3, unitary_problem());
  std::vector<double> nodes;
  for (std::size_t i = 1; i < t.values.size(); ++i) {
    const double y0 = t.grid.node(i - 1);
    const double y1 = t.grid.node(i);
    if (y0 < 10.0 * std::sqrt(eps3) || y1 > 0.5) continue;
    const double f0 = t.values[i - 1];
    const double f1 = t.values[i];
    if (f0 * f1 < 0.0) {
      const double s = f0 / (f0 - f1);
      nodes.push_back(std::exp(std::log(y0) + s * (std::log(y1) - std::log(y0))));
    }
  }
  REQUIRE(nodes.size() >= 2);
  const double expected = std::exp(kPi / 1.006);
  for (std::size_t i = 1; i < nodes.size(); ++i)
    CHECK(std::abs(nodes[i] / nodes[i - 1] / expected - 1.0) < 0.15);
}

TEST_CASE("spectator away from a level is an extraction error") {
  try {
    spectator(0.05, unitary_problem());
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::extraction);
  }
  CHECK_THROWS_AS(spectator(0.0, unitary_problem()), Error);
}
