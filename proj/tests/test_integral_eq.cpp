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
#include <complex>
#include <limits>
#include <random>

#include "core/errors.hpp"
#include "core/integral_eq.hpp"
#include "core/quadrature.hpp"

using namespace fewbody;

namespace {

double u(double y) { return 1.0 / (1.0 + y * y); }
double v(double x) { return std::exp(-x); }
double drv(double y) { return y * std::exp(-y); }
double rank1(double y, double x) { return u(y) * v(x); }

// phi = d + lambda u <v, d> / (1 - lambda <v, u>), inner products on the grid.
std::vector<double> rank1_closed_form(const MomentumGrid& g, double lambda) {
  const double vd = g.integrate([](double x) { return v(x) * drv(x); });
  const double vu = g.integrate([](double x) { return v(x) * u(x); });
  std::vector<double> out;
  for (double y : g.nodes()) out.push_back(drv(y) + lambda * u(y) * vd / (1.0 - lambda * vu));
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

DenseMatrix<double> random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  DenseMatrix<double> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng) + (i == j ? 3.0 : 0.0);
  return m;
}

}  // namespace

TEST_CASE("zero kernel assembles to the identity") {
  const auto g = MomentumGrid::tangent(20);
  const auto m = assemble<double>([](double, double, double) { return 0.0; }, g, -0.5);
  CHECK(m.entries == DenseMatrix<double>::identity(20));
  CHECK(m.energy_tag == -0.5);
  CHECK(m.grid.size() == 20);
}

TEST_CASE("unit kernel: I minus a row of weights, det = 1 - W") {
  const auto g = MomentumGrid::from_reference(gauss_legendre(9), 0.02);
  double w = 0.0;
  for (double x : g.weights()) w += x;
  const auto m = assemble<double>([](double, double, double) { return 1.0; }, g, 0.0);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) CHECK(m.entries(i, j) == (i == j ? 1.0 : 0.0) - g.weight(j));
  const LogDet d = logdet_sign(m);
  CHECK(d.sign * std::exp(d.log_abs) == doctest::Approx(1.0 - w).epsilon(1e-12));
}

TEST_CASE("assembly is bit-reproducible across thread counts") {
  const auto g = MomentumGrid::tangent(64, 0.3);
  auto k = [](double y, double x, double e) { return std::sin(y * x + e) / (1.0 + x * x); };
  const auto a = assemble<double>(k, g, 0.7, 1);
  const auto b = assemble<double>(k, g, 0.7, 4);
  const auto c = assemble<double>(k, g, 0.7, 4);
  CHECK(a.entries == b.entries);
  CHECK(b.entries == c.entries);
}

TEST_CASE("non-finite kernel value names the entry") {
  const auto g = MomentumGrid::tangent(10);
  auto k = [&](double y, double x, double) {
    return (y == g.node(3) && x == g.node(6)) ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  try {
    assemble<double>(k, g, -2.0, 1);
    FAIL("expected an exception");
  } catch (const AssemblyError& e) {
    CHECK(e.code() == ErrorCode::assembly);
    CHECK(e.row() == 3);
    CHECK(e.col() == 6);
    CHECK(e.energy() == -2.0);
  }
}

TEST_CASE("logdet closed forms") {
  const LogDet id = logdet_sign(DenseMatrix<double>::identity(7));
  CHECK(id.sign == 1);
  CHECK(id.log_abs == 0.0);

  DenseMatrix<double> d(2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  const LogDet ld = logdet_sign(d);
  CHECK(ld.sign == 1);
  CHECK(ld.log_abs == doctest::Approx(std::log(6.0)).epsilon(1e-15));

  DenseMatrix<double> neg(2);
  neg(0, 1) = 1.0;
  neg(1, 0) = 1.0;
  CHECK(logdet_sign(neg).sign == -1);

  DenseMatrix<double> rep(3);
  const double rows[3][3] = {{2, -1, 5}, {0.5, 3, 1}, {2, -1, 5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rep(i, j) = rows[i][j];
  const LogDet s = logdet_sign(rep);
  CHECK(s.sign == 0);
  CHECK(s.log_abs == -std::numeric_limits<double>::infinity());
}

TEST_CASE("logdet matches Eigen and is multiplicative") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + trial;
    const auto a = random_matrix(rng, n);
    const auto b = random_matrix(rng, n);
    DenseMatrix<double> ab(n);
    Eigen::MatrixXd ea(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ea(i, j) = a(i, j);
        for (std::size_t k = 0; k < n; ++k) ab(i, j) += a(i, k) * b(k, j);
      }
    const LogDet la = logdet_sign(a);
    const LogDet lb = logdet_sign(b);
    const LogDet lab = logdet_sign(ab);
    const double det = ea.determinant();
    CHECK(la.sign == (det > 0 ? 1 : -1));
    CHECK(la.log_abs == doctest::Approx(std::log(std::abs(det))).epsilon(1e-12));
    CHECK(lab.sign == la.sign * lb.sign);
    CHECK(lab.log_abs == doctest::Approx(la.log_abs + lb.log_abs).epsilon(1e-12));
  }
}

TEST_CASE("lambda = 0 returns the driver") {
  const auto g = MomentumGrid::tangent(30);
  const auto s = solve_second_kind<double>(rank1, g, drv, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(s.values[i] == doctest::Approx(drv(g.node(i))));
}

TEST_CASE("separable kernel matches the closed form") {
  const auto g = MomentumGrid::tangent(48);
  for (double lambda : {-3.0, 0.4, 1.7}) {
    const auto s = solve_second_kind<double>(rank1, g, drv, lambda);
    CHECK(max_diff(s.values, rank1_closed_form(g, lambda)) < 1e-10);
    CHECK_FALSE(s.ill_conditioned);
    CHECK(s.condition >= 1.0);
  }
}

TEST_CASE("complex coupling shares the code path") {
  const auto g = MomentumGrid::tangent(40);
  const std::complex<double> lambda(0.8, -0.6);
  const auto s = solve_second_kind<std::complex<double>>(rank1, g, drv, lambda);
  const double vd = g.integrate([](double x) { return v(x) * drv(x); });
  const double vu = g.integrate([](double x) { return v(x) * u(x); });
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y = g.node(i);
    const std::complex<double> exact = drv(y) + lambda * u(y) * vd / (1.0 - lambda * vu);
    CHECK(std::abs(s.values[i] - exact) < 1e-10);
  }
}

TEST_CASE("direct solve residual") {
  const auto g = MomentumGrid::tangent(80, 0.5);
  auto k = [](double y, double x) { return std::exp(-std::abs(y - x)) / (1.0 + x * x); };
  const double lambda = 0.9;
  const auto s = solve_second_kind<double>(k, g, drv, lambda);
  double res = 0.0;
  double mx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double acc = drv(g.node(i));
    for (std::size_t j = 0; j < g.size(); ++j) acc += lambda * g.weight(j) * k(g.node(i), g.node(j)) * s.values[j];
    res = std::max(res, std::abs(s.values[i] - acc));
    mx = std::max(mx, std::abs(s.values[i]));
  }
  CHECK(res < 1e-10 * mx);
}

TEST_CASE("singular system reports its condition estimate") {
  DenseMatrix<double> m(3);
  const double rows[3][3] = {{1, 2, 3}, {4, 5, 6}, {2, 4, 6}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  const std::vector<double> b{1.0, 2.0, 3.0};
  try {
    solve_dense<double>(m, b);
    FAIL("expected an exception");
  } catch (const SingularMatrixError& e) {
    CHECK(e.code() == ErrorCode::singular_matrix);
    CHECK(e.condition() * std::numeric_limits<double>::epsilon() >= 1.0);
  }
}

TEST_CASE("ill-conditioned solves are flagged") {
  DenseMatrix<double> m = DenseMatrix<double>::identity(2);
  m(1, 1) = 1e-13;
  const std::vector<double> b{1.0, 1.0};
  const auto s = solve_dense<double>(m, b);
  CHECK(s.ill_conditioned);
  CHECK(s.condition > 1e12);
  CHECK(s.values[1] == doctest::Approx(1e13));
}

TEST_CASE("Born series: m = 0 convention and agreement with the direct solve") {
  const auto g = MomentumGrid::tangent(48);
  const auto b0 = born_series<double>(rank1, g, drv, 0.3, 0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(b0.values[i] == drv(g.node(i)));

  const double norm = hs_norm(rank1, g);
  const double lambda = 0.5 / norm;
  const auto b = born_series<double>(rank1, g, drv, lambda, 60);
  const auto d = solve_second_kind<double>(rank1, g, drv, lambda);
  CHECK_FALSE(b.diverged);
  CHECK(max_diff(b.values, d.values) < 1e-8);
  CHECK(max_diff(b.values, rank1_closed_form(g, lambda)) < 1e-8);
}

TEST_CASE("Born series agrees for a full-rank kernel below 0.9") {
  const auto g = MomentumGrid::tangent(60, 0.7);
  auto k = [](double y, double x) { return std::exp(-(y + 1.0) * x) / (1.0 + y); };
  const double lambda = -0.9 / hs_norm(k, g);
  CHECK(born_convergent(std::abs(lambda), hs_norm(k, g)));
  const auto b = born_series<double>(k, g, drv, lambda, 100);
  const auto d = solve_second_kind<double>(k, g, drv, lambda);
  double mx = 0.0;
  for (double x : d.values) mx = std::max(mx, std::abs(x));
  CHECK(max_diff(b.values, d.values) < 1e-6 * mx);
}

TEST_CASE("Born series divergence is detected") {
  const auto g = MomentumGrid::tangent(48);
  const double norm = hs_norm(rank1, g);
  const double vu = g.integrate([](double x) { return v(x) * u(x); });
  // For a rank-1 kernel the growth rate is |lambda <v, u>|; pick it as 1.5.
  const double lambda = 1.5 / vu;
  CHECK_FALSE(born_convergent(lambda, norm));
  const auto b = born_series<double>(rank1, g, drv, lambda, 40);
  CHECK(b.diverged);
  CHECK(b.term_norms.back() > b.term_norms[1] * 1e5);
}

TEST_CASE("Hilbert-Schmidt norm") {
  const auto g = MomentumGrid::tangent(64);
  CHECK(hs_norm([](double, double) { return 0.0; }, g) == 0.0);
  CHECK(hs_norm([](double y, double x) { return std::exp(-x - y); }, g) ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK_FALSE(born_convergent(3.0, 0.5));
  CHECK(born_convergent(1.9, 0.5));
}
