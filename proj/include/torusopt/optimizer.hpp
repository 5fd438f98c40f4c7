// Copyright 2026 The torusopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Local minimization of the pair objective F on one ordering cell. With one
// coordinate block fixed, F is a quadratic in the other block, so alternating
// exact block solves converge linearly to the unique cell minimizer (the cell
// objectives are strictly convex for gamma in [0,6] once (x_0,y_0) is pinned
// to the origin). With a positive offset delta the same iteration drives both
// block gradients to delta * 1, which is what the dual certifier needs.

#ifndef TORUSOPT_OPTIMIZER_HPP_
#define TORUSOPT_OPTIMIZER_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusopt/kernel.hpp"
#include "torusopt/permutation.hpp"
#include "torusopt/rational.hpp"

namespace torusopt {

// Symmetric kernel coefficient matrix c[i][j] = 1 + gamma k(|u_i - u_j|)
// for one coordinate block u; diagonal entries equal 1 + gamma/12.
template <class S>
struct KernelCoeffs {
  int n = 0;
  std::vector<S> c;

  const S& at(int i, int j) const { return c[static_cast<size_t>(i) * n + j]; }
};

template <class S>
KernelCoeffs<S> kernel_coeffs(const std::vector<S>& u, const S& gamma) {
  const int n = static_cast<int>(u.size());
  KernelCoeffs<S> out;
  out.n = n;
  out.c.assign(static_cast<size_t>(n) * n, S(0));
  using Ops = scalar_ops<S>;
  const S diag = S(1) + gamma * Ops::ratio(1, 12);
  for (int i = 0; i < n; ++i) {
    out.c[static_cast<size_t>(i) * n + i] = diag;
    for (int j = i + 1; j < n; ++j) {
      S v = S(1) + gamma * bernoulli_k(abs_diff(u[i], u[j]));
      out.c[static_cast<size_t>(i) * n + j] = v;
      out.c[static_cast<size_t>(j) * n + i] = v;
    }
  }
  return out;
}

// Gradient of F restricted to the cell, with respect to the block u (entries
// 1..N-1; u[0] is pinned to 0). rank[i] gives the position of index i in the
// block's cell ordering, so the sign pattern sgn(u_k - u_j) is the constant
// rank[k] > rank[j] on the whole closed cell:
//   dF/du_k = sum_{j != k} c_{k,j} * ((u_k - u_j) - s_{k,j}/2).
// For the x-block the ordering is by index and rank is the identity.
template <class S>
std::vector<S> block_gradient(const std::vector<S>& u, const KernelCoeffs<S>& coeffs,
                              const Perm& rank) {
  const int n = static_cast<int>(u.size());
  std::vector<S> grad(n - 1, S(0));
  using Ops = scalar_ops<S>;
  const S half = Ops::ratio(1, 2);
  for (int k = 1; k < n; ++k) {
    S acc = S(0);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const S& c = coeffs.at(k, j);
      S term = c * (u[k] - u[j]);
      if (rank[k] > rank[j])
        term -= c * half;
      else
        term += c * half;
      acc += term;
    }
    grad[k - 1] = acc;
  }
  return grad;
}

// Hessian of the block quadratic, independent of u itself:
//   H[k][k] = sum_{i != k} c_{i,k},   H[k][j] = -c_{k,j}  (k, j in 1..N-1).
template <class S>
std::vector<S> block_hessian(const KernelCoeffs<S>& coeffs) {
  const int n = coeffs.n;
  const int m = n - 1;
  std::vector<S> h(static_cast<size_t>(m) * m, S(0));
  for (int k = 1; k < n; ++k) {
    S diag = S(0);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      diag += coeffs.at(i, k);
      if (i >= 1) h[static_cast<size_t>(k - 1) * m + (i - 1)] = -coeffs.at(k, i);
    }
    h[static_cast<size_t>(k - 1) * m + (k - 1)] = diag;
  }
  return h;
}

// Exact minimizer of the block quadratic shifted so the gradient at the
// result equals delta * 1: u_new = u - H^{-1} (grad(u) - delta 1).
inline std::vector<double> block_minimize(const std::vector<double>& u,
                                          const KernelCoeffs<double>& coeffs,
                                          const Perm& rank, double delta) {
  const int n = static_cast<int>(u.size());
  const int m = n - 1;
  const std::vector<double> grad = block_gradient(u, coeffs, rank);
  const std::vector<double> hess = block_hessian(coeffs);
  Eigen::MatrixXd h(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs(i) = grad[i] - delta;
    for (int j = 0; j < m; ++j) h(i, j) = hess[static_cast<size_t>(i) * m + j];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "block Hessian not positive definite (gamma outside [0,6] or degenerate input)");
  const Eigen::VectorXd step = llt.solve(rhs);
  std::vector<double> out = u;
  for (int i = 0; i < m; ++i) out[i + 1] -= step(i);
  return out;
}

// One ordering cell: x_0 = y_0 = 0, x nondecreasing in index, y nondecreasing
// in sigma-order.
struct CellProblem {
  int n;
  double gamma;
  Perm sigma;

  CellProblem(int n_, double gamma_, Perm sigma_)
      : n(n_), gamma(gamma_), sigma(std::move(sigma_)) {
    if (static_cast<int>(sigma.size()) != n || !is_valid_permutation(sigma) || sigma[0] != 0)
      throw std::invalid_argument("cell problem: sigma must fix 0 and permute 0..N-1");
    if (gamma < 0.0 || gamma > 6.0)
      throw std::invalid_argument("cell problem: gamma outside [0,6]");
  }
};

enum class SolveStatus { kConverged, kMaxIter, kCellExit };

struct CellResult {
  std::vector<double> x, y;
  double objective = 0.0;
  double gradient_residual = 0.0;  // max |component - delta| over both blocks
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::kMaxIter;
  std::string diagnostic;
};

namespace detail {

inline bool inside_cell(const std::vector<double>& x, const std::vector<double>& y,
                        const Perm& sigma) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i + 1 < n; ++i)
    if (x[i] > x[i + 1]) return false;
  for (int r = 0; r + 1 < n; ++r)
    if (y[sigma[r]] > y[sigma[r + 1]]) return false;
  for (int i = 0; i < n; ++i)
    if (x[i] < 0.0 || x[i] >= 1.0 || y[i] < 0.0 || y[i] >= 1.0) return false;
  return true;
}

}  // namespace detail

// Canonical start point of a cell: the lattice-like configuration
// x_i = i/N, y_{sigma(r)} = r/N, which lies in the cell by construction.
inline void cell_start(const Perm& sigma, std::vector<double>* x, std::vector<double>* y) {
  const int n = static_cast<int>(sigma.size());
  x->assign(n, 0.0);
  y->assign(n, 0.0);
  for (int i = 0; i < n; ++i) (*x)[i] = static_cast<double>(i) / n;
  for (int r = 0; r < n; ++r) (*y)[sigma[r]] = static_cast<double>(r) / n;
}

// Alternating block minimization. Stops when the Euclidean norm of the
// deviation of both block gradients from the delta-target drops below eps.
// Iterates are not projected; leaving the cell aborts with kCellExit.
inline CellResult alternating_minimize_from(const CellProblem& problem,
                                            std::vector<double> x, std::vector<double> y,
                                            double eps, double delta, int max_iter) {
  if (eps <= 0.0) throw std::invalid_argument("alternating_minimize: eps must be positive");
  if (delta < 0.0) throw std::invalid_argument("alternating_minimize: delta must be >= 0");
  const int n = problem.n;
  CellResult result;
  if (n == 1) {
    result.x = {0.0};
    result.y = {0.0};
    result.converged = true;
    result.status = SolveStatus::kConverged;
    return result;
  }

  Perm rank_x(n), rank_y(n);
  for (int i = 0; i < n; ++i) rank_x[i] = i;
  for (int r = 0; r < n; ++r) rank_y[problem.sigma[r]] = r;

  const double gamma = problem.gamma;
  for (int iter = 1; iter <= max_iter; ++iter) {
    result.iterations = iter;
    // Membership is checked after each half-step so no kernel is ever
    // evaluated on out-of-range coordinates.
    x = block_minimize(x, kernel_coeffs(y, gamma), rank_x, delta);
    bool inside = detail::inside_cell(x, y, problem.sigma);
    if (inside) {
      y = block_minimize(y, kernel_coeffs(x, gamma), rank_y, delta);
      inside = detail::inside_cell(x, y, problem.sigma);
    }
    if (!inside) {
      result.x = std::move(x);
      result.y = std::move(y);
      result.status = SolveStatus::kCellExit;
      result.diagnostic = "iterate left the cell at iteration " + std::to_string(iter);
      return result;
    }

    const std::vector<double> gx = block_gradient(x, kernel_coeffs(y, gamma), rank_x);
    const std::vector<double> gy = block_gradient(y, kernel_coeffs(x, gamma), rank_y);
    double norm2 = 0.0, maxdev = 0.0;
    for (double g : gx) {
      norm2 += (g - delta) * (g - delta);
      maxdev = std::max(maxdev, std::fabs(g - delta));
    }
    for (double g : gy) {
      norm2 += (g - delta) * (g - delta);
      maxdev = std::max(maxdev, std::fabs(g - delta));
    }
    result.gradient_residual = maxdev;
    if (std::sqrt(norm2) < eps) {
      result.x = std::move(x);
      result.y = std::move(y);
      result.objective = objective_f(result.x, result.y, gamma);
      result.converged = true;
      result.status = SolveStatus::kConverged;
      return result;
    }
  }
  result.x = std::move(x);
  result.y = std::move(y);
  result.objective = objective_f(result.x, result.y, gamma);
  result.status = SolveStatus::kMaxIter;
  result.diagnostic = "gradient residual " + std::to_string(result.gradient_residual) +
                      " after " + std::to_string(max_iter) + " iterations";
  return result;
}

inline CellResult alternating_minimize(const CellProblem& problem, double eps = 1e-12,
                                       double delta = 0.0, int max_iter = 10000) {
  std::vector<double> x, y;
  cell_start(problem.sigma, &x, &y);
  return alternating_minimize_from(problem, std::move(x), std::move(y), eps, delta,
                                   max_iter);
}

// Full gradient of F at a point of the given cell, both blocks concatenated
// (x-components first). Works in exact rational arithmetic as well; rank
// arrays are derived from sigma.
template <class S>
std::vector<S> cell_gradient(const std::vector<S>& x, const std::vector<S>& y,
                             const S& gamma, const Perm& sigma) {
  const int n = static_cast<int>(x.size());
  Perm rank_x(n), rank_y(n);
  for (int i = 0; i < n; ++i) rank_x[i] = i;
  for (int r = 0; r < n; ++r) rank_y[sigma[r]] = r;
  std::vector<S> gx = block_gradient(x, kernel_coeffs(y, gamma), rank_x);
  const std::vector<S> gy = block_gradient(y, kernel_coeffs(x, gamma), rank_y);
  gx.insert(gx.end(), gy.begin(), gy.end());
  return gx;
}

}  // namespace torusopt

#endif  // TORUSOPT_OPTIMIZER_HPP_
