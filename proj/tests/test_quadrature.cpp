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
#include <limits>
#include <numbers>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "oracles/oracles.hpp"

using namespace fewbody;

TEST_CASE("gauss_legendre low orders") {
  const auto r1 = gauss_legendre(1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre rejects n = 0") {
  try {
    gauss_legendre(0);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("16-point rule integrates x^8 exactly") {
  const auto r = gauss_legendre(16);
  double s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) s += r.weights[i] * std::pow(r.nodes[i], 8);
  CHECK(std::abs(s - 2.0 / 9.0) < 1e-14);
}

TEST_CASE("exactness up to degree 2n-1 and weight sum") {
  for (std::size_t n : {3u, 8u, 20u, 64u}) {
    const auto r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);
    for (std::size_t deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(deg));
      const double exact = deg % 2 == 0 ? 2.0 / (deg + 1.0) : 0.0;
      CHECK(std::abs(s - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("nodes agree with the Golub-Welsch construction") {
  const auto r = gauss_legendre(40);
  const auto o = oracle::golub_welsch(40);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(std::abs(r.nodes[i] - o.x[i]) < 1e-13);
    CHECK(std::abs(r.weights[i] - o.w[i]) < 1e-13);
  }
}

TEST_CASE("tangent map endpoint and monotone grid") {
  CHECK(tangent_map(-1.0, 1.0) == 0.0);
  CHECK(tangent_map(0.0, 2.5) == doctest::Approx(2.5));
  for (double scale : {1e-3, 0.01, 1.0, 30.0}) {
    for (std::size_t n : {1u, 7u, 64u, 300u}) {
      const auto g = MomentumGrid::tangent(n, scale);
      REQUIRE(g.size() == n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(g.node(i) > 0.0);
        CHECK(std::isfinite(g.node(i)));
        CHECK(g.weight(i) > 0.0);
        if (i > 0) CHECK(g.node(i) > g.node(i - 1));
      }
    }
  }
}

TEST_CASE("invalid map scale is rejected") {
  for (double s : {0.0, -1.0, std::nan(""), std::numeric_limits<double>::infinity()}) {
    try {
      MomentumGrid::tangent(8, s);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
    }
  }
}

TEST_CASE("half-line integral of exp(-x)") {
  const auto g = map_to_halfline(gauss_legendre(64), 1.0);
  const double one = g.integrate([](double x) { return std::exp(-x); });
  CHECK(std::abs(one - 1.0) < 1e-8);
  const auto g2 = map_to_halfline(gauss_legendre(64), 2.0);
  CHECK(std::abs(g2.integrate([](double x) { return std::exp(-x); }) - one) < 1e-7);
}

TEST_CASE("two map scales agree at n = 128") {
  const double pi = std::numbers::pi;
  struct Case {
    double (*f)(double);
    double exact;
  };
  const Case cases[] = {
      {[](double x) { return 1.0 / (1.0 + x * x); }, pi / 2.0},
      {[](double x) { return x * std::exp(-x * x); }, 0.5},
      {[](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, 1.0},
  };
  for (const auto& c : cases) {
    const double a = MomentumGrid::tangent(128, 1.0).integrate(c.f);
    const double b = MomentumGrid::tangent(128, 3.0).integrate(c.f);
    CHECK(std::abs(a - c.exact) < 1e-6 * c.exact);
    CHECK(std::abs(a - b) < 1e-6 * c.exact);
  }
}

TEST_CASE("nearest node") {
  const auto g = MomentumGrid::tangent(50, 1.0);
  CHECK(g.nearest(0.0) == 0);
  CHECK(g.nearest(1e9) == 49);
  const std::size_t i = g.nearest(g.node(17) * (1.0 + 1e-9));
  CHECK(i == 17);
}

TEST_CASE("grids are deterministic") {
  const auto a = MomentumGrid::tangent(200, 0.01);
  const auto b = MomentumGrid::tangent(200, 0.01);
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(a.node(i) == b.node(i));
    CHECK(a.weight(i) == b.weight(i));
  }
}
