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

// Nystrom machinery for second-kind Fredholm equations
//
//   phi(y) = driver(y) + lambda * int_0^inf dx K(y, x) phi(x)
//
// discretized on a MomentumGrid. Everything is templated on the value type so
// the real (bound state) and complex (scattering) paths share one
// implementation. Matrices are dense and row-major; factorization is LU with
// partial pivoting.

#ifndef FEWBODY_CORE_INTEGRAL_EQ_HPP
#define FEWBODY_CORE_INTEGRAL_EQ_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace fewbody {

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

/// Above this 1-norm condition estimate a solve is flagged ill-conditioned.
inline constexpr double kIllConditioned = 1e12;

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const T> data() const noexcept { return data_; }

  std::vector<T> multiply(std::span<const T> v) const {
    std::vector<T> out(n_, T{});
    for (std::size_t i = 0; i < n_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < n_; ++j) acc += data_[i * n_ + j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// entries(i, j) = delta_ij - w_j K(y_i, x_j; E), plus the grid and the energy
/// it was assembled at.
template <class T>
struct KernelMatrix {
  DenseMatrix<T> entries;
  MomentumGrid grid;
  double energy_tag = 0.0;
};

/// Signed log-determinant. sign == 0 marks an exactly singular matrix, with
/// log_abs = -inf.
struct LogDet {
  int sign = 1;
  double log_abs = 0.0;
};

template <class T>
class LuFactorization {
 public:
  explicit LuFactorization(DenseMatrix<T> a) : lu_(std::move(a)), perm_(lu_.size()) {
    const std::size_t n = lu_.size();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < n; ++i) colsum += std::abs(lu_(i, j));
      norm1_ = std::max(norm1_, colsum);
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(lu_(i, k));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best == 0.0) {
        singular_ = true;
        continue;
      }
      if (piv != k) {
        auto rk = lu_.row(k);
        auto rp = lu_.row(piv);
        for (std::size_t j = 0; j < n; ++j) std::swap(rk[j], rp[j]);
        std::swap(perm_[k], perm_[piv]);
        swaps_ ^= 1;
      }
      const T pivot = lu_(k, k);
      const auto rk = lu_.row(k);
      for (std::size_t i = k + 1; i < n; ++i) {
        auto ri = lu_.row(i);
        const T l = ri[k] / pivot;
        ri[k] = l;
        if (l == T{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
      }
    }
  }

  std::size_t size() const noexcept { return lu_.size(); }
  bool singular() const noexcept { return singular_; }

  /// Real matrices only: sign and log|det|.
  LogDet logdet() const
    requires(!is_complex_v<T>)
  {
    if (singular_) return {0, -std::numeric_limits<double>::infinity()};
    int sign = swaps_ ? -1 : 1;
    double log_abs = 0.0;
    for (std::size_t i = 0; i < lu_.size(); ++i) {
      const T d = lu_(i, i);
      if (d < 0) sign = -sign;
      log_abs += std::log(std::abs(d));
    }
    return {sign, log_abs};
  }

  std::vector<T> solve(std::span<const T> b) const {
    const std::size_t n = lu_.size();
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
      const auto ri = lu_.row(i);
      T acc = x[i];
      for (std::size_t j = 0; j < i; ++j) acc -= ri[j] * x[j];
      x[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      const auto ri = lu_.row(ii);
      T acc = x[ii];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= ri[j] * x[j];
      x[ii] = acc / ri[ii];
    }
    return x;
  }

  /// Solves A^H x = b (A^T x = b for real T).
  std::vector<T> solve_adjoint(std::span<const T> b) const {
    const std::size_t n = lu_.size();
    std::vector<T> z(b.begin(), b.end());
    // U^H w = b
    for (std::size_t i = 0; i < n; ++i) {
      T acc = z[i];
      for (std::size_t j = 0; j < i; ++j) acc -= conj(lu_(j, i)) * z[j];
      z[i] = acc / conj(lu_(i, i));
    }
    // L^H v = w
    for (std::size_t ii = n; ii-- > 0;) {
      T acc = z[ii];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= conj(lu_(j, ii)) * z[j];
      z[ii] = acc;
    }
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
    return x;
  }

  /// Hager's estimate of ||A||_1 ||A^-1||_1; +inf when singular.
  double condition_estimate() const {
    if (singular_) return std::numeric_limits<double>::infinity();
    const std::size_t n = lu_.size();
    if (n == 0) return 1.0;
    std::vector<T> x(n, T{1.0 / static_cast<double>(n)});
    double estimate = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
      const std::vector<T> y = solve(x);
      double ynorm = 0.0;
      std::vector<T> xi(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(y[i]);
        ynorm += a;
        xi[i] = a == 0.0 ? T{1} : y[i] / a;
      }
      estimate = std::max(estimate, ynorm);
      const std::vector<T> z = solve_adjoint(xi);
      std::size_t jmax = 0;
      double zmax = 0.0;
      double ztx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(z[i]) > zmax) {
          zmax = std::abs(z[i]);
          jmax = i;
        }
        ztx += real_part(conj(z[i]) * x[i]);
      }
      if (zmax <= ztx) break;
      std::fill(x.begin(), x.end(), T{});
      x[jmax] = T{1};
    }
    return norm1_ * estimate;
  }

 private:
  static T conj(const T& v) {
    if constexpr (is_complex_v<T>)
      return std::conj(v);
    else
      return v;
  }
  static double real_part(const T& v) {
    if constexpr (is_complex_v<T>)
      return v.real();
    else
      return v;
  }

  DenseMatrix<T> lu_;
  std::vector<std::size_t> perm_;
  double norm1_ = 0.0;
  bool singular_ = false;
  int swaps_ = 0;
};

/// Values on the grid plus the condition estimate of the system that
/// produced them.
template <class T>
struct Solution {
  std::vector<T> values;
  double condition = 1.0;
  bool ill_conditioned = false;
};

/// Factor and solve A x = b. Throws SingularMatrixError when a pivot is
/// exactly zero or the condition estimate exceeds 1/epsilon.
template <class T>
Solution<T> solve_dense(DenseMatrix<T> a, std::span<const T> b) {
  LuFactorization<T> lu(std::move(a));
  const double cond = lu.condition_estimate();
  if (lu.singular() || !(cond * std::numeric_limits<double>::epsilon() < 1.0)) {
    std::ostringstream os;
    os << "singular system (condition estimate " << cond << ")";
    throw SingularMatrixError(cond, os.str());
  }
  return {lu.solve(b), cond, cond > kIllConditioned};
}

/// Builds delta_ij - w_j kernel(y_i, x_j, E). Rows are filled in parallel;
/// each entry depends only on its own kernel call, so the result does not
/// depend on the thread count. A non-finite entry raises AssemblyError.
template <class T, class Kernel>
KernelMatrix<T> assemble(Kernel&& kernel, const MomentumGrid& grid, double energy,
                         unsigned threads = 1) {
  const std::size_t n = grid.size();
  KernelMatrix<T> m{DenseMatrix<T>(n), grid, energy};
  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  parallel_for(n, threads, [&](std::size_t i) {
    auto row = m.entries.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const T k = static_cast<T>(kernel(nodes[i], nodes[j], energy));
      if (!std::isfinite(std::abs(k))) {
        std::ostringstream os;
        os << "non-finite kernel value at (i=" << i << ", j=" << j << ", E=" << energy << ")";
        throw AssemblyError(i, j, energy, os.str());
      }
      row[j] = (i == j ? T{1} : T{}) - weights[j] * k;
    }
  });
  return m;
}

LogDet logdet_sign(const DenseMatrix<double>& m);
inline LogDet logdet_sign(const KernelMatrix<double>& m) { return logdet_sign(m.entries); }

/// Direct Nystrom solve of phi = driver + lambda K phi on the grid nodes.
template <class T, class Kernel, class Driver>
Solution<T> solve_second_kind(Kernel&& kernel, const MomentumGrid& grid, Driver&& driver,
                              T lambda, unsigned threads = 1) {
  auto scaled = [&](double y, double x, double) -> T { return lambda * static_cast<T>(kernel(y, x)); };
  KernelMatrix<T> m = assemble<T>(scaled, grid, 0.0, threads);
  std::vector<T> rhs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rhs[i] = static_cast<T>(driver(grid.node(i)));
  return solve_dense<T>(std::move(m.entries), rhs);
}

template <class T>
struct BornResult {
  std::vector<T> values;           // partial sum through lambda^m phi_m
  std::vector<double> term_norms;  // max-norm of lambda^n phi_n, n = 0..m
  bool diverged = false;
};

/// Partial sums of the Neumann (Born) series. `diverged` is set when the
/// terms stop shrinking: the geometric growth rate over the second half of
/// the series is >= 1, or a term is non-finite.
template <class T, class Kernel, class Driver>
BornResult<T> born_series(Kernel&& kernel, const MomentumGrid& grid, Driver&& driver,
                          T lambda, std::size_t m) {
  const std::size_t n = grid.size();
  DenseMatrix<T> wk(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      wk(i, j) = lambda * grid.weight(j) * static_cast<T>(kernel(grid.node(i), grid.node(j)));

  BornResult<T> out;
  std::vector<T> term(n);
  for (std::size_t i = 0; i < n; ++i) term[i] = static_cast<T>(driver(grid.node(i)));
  out.values = term;
  auto max_norm = [](const std::vector<T>& v) {
    double r = 0.0;
    for (const T& x : v) r = std::max(r, std::abs(x));
    return r;
  };
  out.term_norms.push_back(max_norm(term));
  for (std::size_t k = 1; k <= m; ++k) {
    term = wk.multiply(term);
    for (std::size_t i = 0; i < n; ++i) out.values[i] += term[i];
    const double tn = max_norm(term);
    out.term_norms.push_back(tn);
    if (!std::isfinite(tn)) {
      out.diverged = true;
      break;
    }
  }
  const std::size_t last = out.term_norms.size() - 1;
  if (!out.diverged && last >= 2) {
    const std::size_t mid = last / 2;
    const double a = out.term_norms[mid];
    const double b = out.term_norms[last];
    if (a > 0.0 && b > 0.0) {
      const double rate = std::pow(b / a, 1.0 / static_cast<double>(last - mid));
      out.diverged = rate >= 1.0;
    }
  }
  return out;
}

/// Quadrature estimate of the Hilbert-Schmidt norm
/// sqrt( sum_ij w_i w_j |K(x_i, x_j)|^2 ).
template <class Kernel>
double hs_norm(Kernel&& kernel, const MomentumGrid& grid) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double a = std::abs(kernel(grid.node(i), grid.node(j)));
      sum += grid.weight(i) * grid.weight(j) * a * a;
    }
  return std::sqrt(sum);
}

/// Sufficient condition for the Born series to converge.
inline bool born_convergent(double lambda_abs, double norm) { return lambda_abs * norm < 1.0; }

}  // namespace fewbody

#endif  // FEWBODY_CORE_INTEGRAL_EQ_HPP
