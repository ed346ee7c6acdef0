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

#include "core/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "core/bound_state.hpp"
#include "core/errors.hpp"
#include "core/integral_eq.hpp"
#include "core/quadrature.hpp"
#include "core/scattering.hpp"
#include "core/twobody.hpp"

namespace fewbody {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b, double tol = 1e-13) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

template <class F>
bool throws_code(F&& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  std::vector<SelftestCase> out;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    SelftestCase c{name, false, {}};
    try {
      c.passed = body();
      if (!c.passed) c.detail = "check returned false";
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  };

  check("gauss_legendre n=1 is the midpoint rule", [] {
    const auto r = gauss_legendre(1);
    return r.nodes.size() == 1 && near(r.nodes[0], 0.0) && near(r.weights[0], 2.0);
  });
  check("gauss_legendre n=2 nodes +-1/sqrt3", [] {
    const auto r = gauss_legendre(2);
    return near(r.nodes[0], -1.0 / std::sqrt(3.0)) && near(r.nodes[1], 1.0 / std::sqrt(3.0)) &&
           near(r.weights[0], 1.0) && near(r.weights[1], 1.0);
  });
  check("tangent map sends -1 to 0", [] { return tangent_map(-1.0, 1.0) == 0.0; });

  const MomentumGrid grid = MomentumGrid::tangent(12, 1.0);
  check("zero kernel assembles to the identity", [&] {
    const auto m = assemble<double>([](double, double, double) { return 0.0; }, grid, 0.0, 1);
    return m.entries == DenseMatrix<double>::identity(grid.size());
  });
  check("unit kernel has det 1 - W", [] {
    const MomentumGrid g = MomentumGrid::from_reference(gauss_legendre(6), 0.05);
    double w = 0.0;
    for (double v : g.weights()) w += v;
    const auto m = assemble<double>([](double, double, double) { return 1.0; }, g, 0.0, 1);
    const LogDet d = logdet_sign(m);
    return near(d.sign * std::exp(d.log_abs), 1.0 - w, 1e-12);
  });
  check("logdet of the identity is (+1, 0)", [] {
    const LogDet d = logdet_sign(DenseMatrix<double>::identity(5));
    return d.sign == 1 && d.log_abs == 0.0;
  });
  check("logdet of diag(2, 3) is (+1, ln 6)", [] {
    DenseMatrix<double> m(2);
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    const LogDet d = logdet_sign(m);
    return d.sign == 1 && near(d.log_abs, std::log(6.0));
  });
  check("logdet of a matrix with a repeated row is singular", [] {
    DenseMatrix<double> m(3);
    const double rows[3][3] = {{1, 2, 3}, {1, 2, 3}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
    const LogDet d = logdet_sign(m);
    return d.sign == 0 && std::isinf(d.log_abs) && d.log_abs < 0.0;
  });

  auto driver = [](double y) { return 1.0 / (1.0 + y * y); };
  auto smooth = [](double y, double x) { return std::exp(-y - x); };
  check("lambda = 0 returns the driver", [&] {
    const auto s = solve_second_kind<double>(smooth, grid, driver, 0.0, 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (!near(s.values[i], driver(grid.node(i)))) return false;
    return true;
  });
  check("Born series with m = 0 returns the driver", [&] {
    const auto b = born_series<double>(smooth, grid, driver, 0.7, 0);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (b.values[i] != driver(grid.node(i))) return false;
    return !b.diverged;
  });
  check("Born series divergence is reported", [&] {
    const double nrm = hs_norm(smooth, grid);
    const auto b = born_series<double>(smooth, grid, driver, 3.0 / nrm, 40);
    return b.diverged;
  });
  check("zero kernel has zero norm", [&] {
    return hs_norm([](double, double) { return 0.0; }, grid) == 0.0;
  });
  check("Born predicate false for lambda 3, norm 1/2", [] { return !born_convergent(3.0, 0.5); });

  check("tau_inverse vanishes at the dimer pole", [] {
    const ChannelConfig c(2.5);
    return tau_inverse(-2.5, c) == 0.0;
  });
  check("tau_inverse(eps2=0, E=-1) = -2 pi^2", [] {
    return near(tau_inverse(-1.0, ChannelConfig(0.0)), -2.0 * kPi * kPi);
  });
  check("tau_inverse(eps2=4, E=-1) = 2 pi^2", [] {
    return near(tau_inverse(-1.0, ChannelConfig(4.0)), 2.0 * kPi * kPi);
  });
  check("tau(eps2=0, E=-1) = -1/(2 pi^2)", [] {
    return near(tau(-1.0, ChannelConfig(0.0)), -1.0 / (2.0 * kPi * kPi));
  });
  check("tau(eps2=4, E=-1) = 1/(2 pi^2)", [] {
    return near(tau(-1.0, ChannelConfig(4.0)), 1.0 / (2.0 * kPi * kPi));
  });
  check("tau at its pole raises dimer-pole", [] {
    return throws_code([] { tau(-1.0, ChannelConfig(1.0)); }, ErrorCode::dimer_pole);
  });

  check("feshbach with zero width is a_bg", [] {
    const FeshbachParams p{1.7, 100.0, 0.0};
    return feshbach_a(50.0, p) == 1.7 && feshbach_a(130.0, p) == 1.7;
  });
  check("feshbach zero crossing at B0 - delta_B", [] {
    const FeshbachParams p{1.0, 100.0, 10.0};
    return std::abs(feshbach_a(90.0, p)) < 1e-15;
  });
  check("feshbach tends to a_bg far from B0", [] {
    const FeshbachParams p{2.0, 100.0, 10.0};
    return near(feshbach_a(1e15, p), 2.0, 1e-12);
  });
  check("feshbach at B0 raises resonance-pole", [] {
    return throws_code([] { feshbach_a(100.0, FeshbachParams{1.0, 100.0, 10.0}); },
                       ErrorCode::resonance_pole);
  });

  check("angular_log(-2; 1, 1) = ln(3/5)", [] {
    return near(angular_log(-2.0, 1.0, 1.0), std::log(3.0 / 5.0));
  });
  check("angular_log at x = 0 is 2 / (a - y^2)", [] {
    return near(angular_log(-1.0, 0.7, 0.0), 2.0 / (-1.0 - 0.49));
  });
  check("STM kernel vanishes at the subtraction point", [] {
    const ChannelConfig c(0.0);
    for (double y : {0.01, 0.3, 2.0, 50.0})
      for (double x : {0.02, 0.5, 7.0})
        if (stm_kernel(y, x, kSubtractionEnergy, c) != 0.0) return false;
    return true;
  });
  check("STM kernel vanishes at x = 0", [] {
    return stm_kernel(0.4, 0.0, -0.3, ChannelConfig(0.0)) == 0.0;
  });
  check("det at the subtraction point is (+1, 0)", [] {
    const ChannelConfig c(4.0);
    const BoundStateProblem p(c, MomentumGrid::tangent(40, 0.01), {-50.0, -4.0 * (1.0 + 1e-8)}, 1e-10,
                              200.0, 1);
    const LogDet d = det_at(kSubtractionEnergy, p);
    return d.sign == 1 && d.log_abs == 0.0;
  });

  // eps2 = 2, 3/4 k^2 = 1 puts E3 on the subtraction point.
  const double k_sub = std::sqrt(4.0 / 3.0);
  check("scattering driver vanishes at the subtraction point", [&] {
    const ElasticChannel ch(ChannelConfig(2.0), k_sub);
    for (double y : {0.0, 0.2, 1.0, 30.0})
      if (scattering_driver(y, ch) != 0.0) return false;
    return true;
  });
  check("zero driver gives zero amplitude", [&] {
    const ElasticChannel ch(ChannelConfig(2.0), k_sub);
    ScatterOptions opt;
    opt.threads = 1;
    opt.check_refinement = false;
    const auto s = solve_scattering(ch, MomentumGrid::tangent(24, 1.0), opt);
    if (s.on_shell != complex(0.0)) return false;
    for (const complex& v : s.h)
      if (v != complex(0.0)) return false;
    return cross_section(s) == 0.0;
  });

  return out;
}

}  // namespace fewbody
