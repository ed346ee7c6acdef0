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

#include "core/bound_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace fewbody {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kResidualLimit = 1e-8;
constexpr std::size_t kMaxPivotAttempts = 8;

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

void SolverSettings::validate() const {
  if (grid_n < 2) throw Error(ErrorCode::invalid_argument, describe("grid_n must be >= 2", double(grid_n)));
  if (!(map_scale > 0.0) || !std::isfinite(map_scale))
    throw Error(ErrorCode::invalid_argument, describe("map_scale must be positive", map_scale));
  if (!(points_per_decade >= 1.0) || !std::isfinite(points_per_decade))
    throw Error(ErrorCode::invalid_argument,
                describe("points_per_decade must be >= 1", points_per_decade));
  if (!(root_tolerance > 0.0 && root_tolerance < 1e-2))
    throw Error(ErrorCode::invalid_argument,
                describe("root_tolerance must be in (0, 1e-2)", root_tolerance));
  if (!(min_binding > 0.0 && min_binding < 1.0))
    throw Error(ErrorCode::invalid_argument, describe("min_binding must be in (0, 1)", min_binding));
}

double angular_log(double a, double y, double x) {
  if (!(a < 0.0)) throw Error(ErrorCode::unsupported_region, describe("angular_log: a must be < 0", a));
  const double big = a - y * y - x * x;  // < -2xy <= 0
  const double b = x * y;
  if (b == 0.0) return 2.0 / big;
  // ln((A + B) / (A - B)) = 2 atanh(B / A), and |B / A| < 1 strictly.
  return 2.0 * std::atanh(b / big) / b;
}

double stm_kernel(double y, double x, double e3, const ChannelConfig& cfg) {
  const double diff = angular_log(e3, y, x) - angular_log(kSubtractionEnergy, y, x);
  if (diff == 0.0) return 0.0;
  return kFourPi * tau(e3 - 0.75 * y * y, cfg) * x * x * diff;
}

BoundStateProblem::BoundStateProblem(ChannelConfig cfg, MomentumGrid grid, EnergyWindow window,
                                     double root_tolerance, double points_per_decade,
                                     unsigned threads)
    : cfg_(cfg),
      grid_(std::move(grid)),
      window_(window),
      root_tolerance_(root_tolerance),
      points_per_decade_(points_per_decade),
      threads_(threads) {
  if (!(window.lo < window.hi) || !(window.hi < 0.0)) {
    std::ostringstream os;
    os << "search window must satisfy E_lo < E_hi < 0 (got [" << window.lo << ", " << window.hi
       << "])";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (window.hi > -cfg.eps2()) {
    std::ostringstream os;
    os << "search window upper edge " << window.hi << " lies above the two-body cut -eps2 = "
       << -cfg.eps2();
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (grid_.size() == 0) throw Error(ErrorCode::invalid_argument, "empty momentum grid");
  if (!(root_tolerance > 0.0))
    throw Error(ErrorCode::invalid_argument, describe("root_tolerance must be > 0", root_tolerance));
  if (!(points_per_decade >= 1.0))
    throw Error(ErrorCode::invalid_argument,
                describe("points_per_decade must be >= 1", points_per_decade));
}

BoundStateProblem BoundStateProblem::from_settings(const ChannelConfig& cfg,
                                                   const SolverSettings& s) {
  s.validate();
  const EnergyWindow window{-std::max(1.0, 10.0 * cfg.eps2()),
                            -std::max(cfg.eps2() * (1.0 + 1e-8), s.min_binding)};
  return BoundStateProblem(cfg, s.make_grid(), window, s.root_tolerance, s.points_per_decade,
                           s.threads);
}

KernelMatrix<double> stm_matrix(double e3, const BoundStateProblem& problem) {
  const ChannelConfig& cfg = problem.config();
  return assemble<double>(
      [&cfg](double y, double x, double e) { return stm_kernel(y, x, e, cfg); }, problem.grid(),
      e3, problem.threads());
}

LogDet det_at(double e3, const BoundStateProblem& problem) {
  return logdet_sign(stm_matrix(e3, problem));
}

EfimovSpectrum find_levels(const BoundStateProblem& problem, std::size_t max_levels) {
  if (max_levels == 0) throw Error(ErrorCode::invalid_argument, "find_levels: max_levels must be >= 1");

  EfimovSpectrum out;
  out.eps2 = problem.config().eps2();
  out.grid_n = problem.grid().size();
  out.map_scale = problem.grid().map_scale();

  // Binding energies, deep to shallow, with exact endpoints.
  const double deep = -problem.window().lo;
  const double shallow = -problem.window().hi;
  const double decades = std::log10(deep / shallow);
  const std::size_t intervals =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(decades * problem.points_per_decade())));
  std::vector<double> mesh(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    mesh[i] = deep * std::pow(shallow / deep, static_cast<double>(i) / static_cast<double>(intervals));
  mesh.front() = deep;
  mesh.back() = shallow;

  // The scan parallelizes over energies; each determinant is then built on a
  // single thread. Bisection parallelizes inside the assembly instead.
  const unsigned workers = resolve_threads(problem.threads());
  const BoundStateProblem serial(problem.config(), problem.grid(), problem.window(),
                                 problem.root_tolerance(), problem.points_per_decade(), 1);
  auto sign_at = [&](double binding, const BoundStateProblem& p) { return det_at(-binding, p).sign; };

  auto bisect = [&](double a, double b, int sign_a) {
    // a deeper than b; invariant: sign(a) == sign_a != sign(b).
    while ((a - b) > problem.root_tolerance() * b) {
      const double mid = std::sqrt(a * b);
      const int s = sign_at(mid, problem);
      if (s == 0) return mid;
      if (s == sign_a)
        a = mid;
      else
        b = mid;
    }
    return std::sqrt(a * b);
  };

  const std::size_t batch = std::max<std::size_t>(1, 2 * static_cast<std::size_t>(workers));
  std::vector<int> signs(mesh.size(), 2);
  std::size_t next = 0;  // first unevaluated mesh index
  auto ensure = [&](std::size_t upto) {
    if (upto < next) return;
    const std::size_t end = std::min(mesh.size(), std::max(upto + 1, next + batch));
    parallel_for(end - next, workers, [&](std::size_t k) { signs[next + k] = sign_at(mesh[next + k], serial); });
    next = end;
  };

  ensure(0);
  if (signs[0] == 0) out.levels.push_back(mesh[0]);
  for (std::size_t i = 1; i < mesh.size() && out.levels.size() < max_levels; ++i) {
    ensure(i);
    if (signs[i] == 0) {
      out.levels.push_back(mesh[i]);
      continue;
    }
    if (signs[i - 1] == 0 || signs[i] == signs[i - 1]) continue;
    out.levels.push_back(bisect(mesh[i - 1], mesh[i], signs[i - 1]));
  }

  for (std::size_t i = 0; i + 1 < out.levels.size(); ++i)
    out.ratios.push_back(out.levels[i] / out.levels[i + 1]);
  if (out.levels.size() < max_levels) {
    std::ostringstream os;
    os << "found " << out.levels.size() << " of " << max_levels << " requested level(s) in window ["
       << problem.window().lo << ", " << problem.window().hi << "]";
    out.diagnostic = os.str();
  }
  return out;
}

SpectatorTable spectator(double eps3, const BoundStateProblem& problem) {
  if (!(eps3 > problem.config().eps2()))
    throw Error(ErrorCode::invalid_argument,
                describe("spectator: binding energy must exceed eps2", eps3));

  constexpr double kBracket = 1e-7;
  const int below = det_at(-eps3 * (1.0 + kBracket), problem).sign;
  const int above = det_at(-eps3 * (1.0 - kBracket), problem).sign;
  if (below != 0 && above != 0 && below == above)
    throw Error(ErrorCode::extraction,
                describe("spectator: no determinant sign change brackets the energy", eps3));

  const KernelMatrix<double> km = stm_matrix(-eps3, problem);
  const DenseMatrix<double>& m = km.entries;
  const MomentumGrid& grid = problem.grid();
  const std::size_t n = grid.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double target = std::sqrt(eps3);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(grid.node(a) - target) < std::abs(grid.node(b) - target);
  });

  std::string last_failure = "no pivot attempted";
  for (std::size_t attempt = 0; attempt < std::min(n, kMaxPivotAttempts); ++attempt) {
    const std::size_t p = order[attempt];
    DenseMatrix<double> reduced(n - 1);
    std::vector<double> rhs(n - 1);
    for (std::size_t i = 0, ri = 0; i < n; ++i) {
      if (i == p) continue;
      for (std::size_t j = 0, rj = 0; j < n; ++j) {
        if (j == p) continue;
        reduced(ri, rj++) = m(i, j);
      }
      rhs[ri++] = -m(i, p);
    }
    Solution<double> sol;
    try {
      sol = solve_dense<double>(std::move(reduced), rhs);
    } catch (const SingularMatrixError& e) {
      last_failure = e.what();
      continue;
    }
    SpectatorTable table{eps3, grid, std::vector<double>(n), p, 0.0};
    for (std::size_t i = 0, ri = 0; i < n; ++i) table.values[i] = i == p ? 1.0 : sol.values[ri++];

    const std::vector<double> r = m.multiply(table.values);
    double rmax = 0.0;
    double fmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rmax = std::max(rmax, std::abs(r[i]));
      fmax = std::max(fmax, std::abs(table.values[i]));
    }
    table.residual = rmax / fmax;
    if (std::isfinite(table.residual) && table.residual < kResidualLimit) return table;
    std::ostringstream os;
    os << "pivot " << p << " residual " << table.residual;
    last_failure = os.str();
  }
  throw Error(ErrorCode::extraction, "spectator: every pivot failed; last: " + last_failure);
}

}  // namespace fewbody
