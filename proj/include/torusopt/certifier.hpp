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
// Certified lower bounds per cell and the exhaustion loop that proves global
// optimality of a candidate point set.
//
// On a cell the objective F is convex with linear ordering constraints
// v_i(x) = x_i - x_{i-1} >= 0 and w_i(y) = y_{sigma(i)} - y_{sigma(i-1)} >= 0.
// Any multipliers lambda, mu >= 0 with grad_x F = B lambda and grad_y F =
// B P_sigma mu make the Lagrangian value
//   beta = F(x,y) - lambda^T v(x) - mu^T w(y)
// a lower bound for F on the whole cell (Wolfe duality). B is the
// upper-bidiagonal difference matrix; its inverse is the all-ones upper
// triangle, so multipliers are plain suffix sums of the gradient. The float
// solver supplies a point with gradient close to delta * 1 > 0; the bound
// itself is evaluated in exact rational arithmetic on the exact binary value
// of that iterate, so every emitted beta is mathematically reliable no matter
// what the floating-point solve did.

#ifndef TORUSOPT_CERTIFIER_HPP_
#define TORUSOPT_CERTIFIER_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torusopt/kernel.hpp"
#include "torusopt/lattice.hpp"
#include "torusopt/optimizer.hpp"
#include "torusopt/parallel.hpp"
#include "torusopt/rational.hpp"
#include "torusopt/torus.hpp"

namespace torusopt {

// (B^{-1} v)_i = sum_{j >= i} v_j: suffix sums, since B^{-1} is the
// upper-triangular all-ones matrix.
template <class S>
std::vector<S> apply_B_inverse(const std::vector<S>& v) {
  std::vector<S> out(v.size(), S(0));
  S acc = S(0);
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
    acc += v[i];
    out[i] = acc;
  }
  return out;
}

// Multiplication by B (first difference with a trailing identity row), the
// inverse of apply_B_inverse.
template <class S>
std::vector<S> apply_B(const std::vector<S>& v) {
  std::vector<S> out(v.size(), S(0));
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i];
    if (i + 1 < v.size()) out[i] -= v[i + 1];
  }
  return out;
}

// Wolfe multipliers at a point of the cell, exact:
//   lambda = B^{-1} grad_x F,   mu = B^{-1} (grad_y F read in sigma-order).
// strictly_positive reports component-wise lambda, mu > 0, which is what the
// exhaustion loop requires of a usable dual point.
struct Multipliers {
  std::vector<Rational> lambda;
  std::vector<Rational> mu;
  bool strictly_positive = false;
};

inline Multipliers multipliers(const std::vector<Rational>& x,
                               const std::vector<Rational>& y, const Perm& sigma,
                               const Rational& gamma) {
  const int n = static_cast<int>(x.size());
  Perm rank_x(n), rank_y(n);
  for (int i = 0; i < n; ++i) rank_x[i] = i;
  for (int r = 0; r < n; ++r) rank_y[sigma[r]] = r;

  const std::vector<Rational> gx = block_gradient(x, kernel_coeffs(y, gamma), rank_x);
  const std::vector<Rational> gy = block_gradient(y, kernel_coeffs(x, gamma), rank_y);

  std::vector<Rational> gy_sigma(n - 1, Rational(0));
  for (int r = 1; r < n; ++r) gy_sigma[r - 1] = gy[sigma[r] - 1];

  Multipliers m;
  m.lambda = apply_B_inverse(gx);
  m.mu = apply_B_inverse(gy_sigma);
  m.strictly_positive = true;
  for (const Rational& l : m.lambda)
    if (l <= 0) m.strictly_positive = false;
  for (const Rational& u : m.mu)
    if (u <= 0) m.strictly_positive = false;
  return m;
}

// Exact stationarity of the multipliers: grad_x F == B lambda and
// grad_y F == B P_sigma mu with zero residual; (B P_sigma mu)_j =
// mu_{rank(j)} - mu_{rank(j)+1} with mu_N = 0.
inline bool multipliers_consistent(const std::vector<Rational>& x,
                                   const std::vector<Rational>& y, const Perm& sigma,
                                   const Rational& gamma, const Multipliers& m) {
  const int n = static_cast<int>(x.size());
  Perm rank_x(n), rank_y(n);
  for (int i = 0; i < n; ++i) rank_x[i] = i;
  for (int r = 0; r < n; ++r) rank_y[sigma[r]] = r;
  const std::vector<Rational> gx = block_gradient(x, kernel_coeffs(y, gamma), rank_x);
  const std::vector<Rational> gy = block_gradient(y, kernel_coeffs(x, gamma), rank_y);
  const std::vector<Rational> bl = apply_B(m.lambda);
  for (int k = 1; k < n; ++k)
    if (gx[k - 1] != bl[k - 1]) return false;
  for (int j = 1; j < n; ++j) {
    const int r = rank_y[j];
    Rational expect = m.mu[r - 1];
    if (r < n - 1) expect -= m.mu[r];
    if (gy[j - 1] != expect) return false;
  }
  return true;
}

// Exact cell membership: 0 = x_0 <= x_1 <= ..., y nondecreasing in
// sigma-order, all coordinates inside [0,1).
inline bool in_cell_exact(const std::vector<Rational>& x, const std::vector<Rational>& y,
                          const Perm& sigma) {
  const int n = static_cast<int>(x.size());
  if (x[0] != 0 || y[0] != 0) return false;
  for (int i = 0; i + 1 < n; ++i)
    if (x[i] > x[i + 1]) return false;
  for (int r = 0; r + 1 < n; ++r)
    if (y[sigma[r]] > y[sigma[r + 1]]) return false;
  for (int i = 0; i < n; ++i)
    if (x[i] < 0 || x[i] >= 1 || y[i] < 0 || y[i] >= 1) return false;
  return true;
}

// The certified lower bound beta = F(x,y) - lambda^T v(x) - mu^T w(y).
// Requires an exactly feasible dual point: (x,y) in the closed cell,
// multipliers componentwise nonnegative, and the stationarity identity
// satisfied with zero residual. (Wolfe duality needs nonnegativity only; the
// exhaustion loop separately insists on strict positivity.)
inline Rational wolfe_bound(const std::vector<Rational>& x, const std::vector<Rational>& y,
                            const Perm& sigma, const Rational& gamma,
                            const Multipliers& m) {
  const int n = static_cast<int>(x.size());
  if (!in_cell_exact(x, y, sigma))
    throw std::invalid_argument("wolfe_bound: point is not in the cell");
  for (const Rational& l : m.lambda)
    if (l < 0) throw std::invalid_argument("wolfe_bound: negative multiplier");
  for (const Rational& u : m.mu)
    if (u < 0) throw std::invalid_argument("wolfe_bound: negative multiplier");
  if (!multipliers_consistent(x, y, sigma, gamma, m))
    throw std::invalid_argument("wolfe_bound: multipliers are not stationary");
  Rational beta = objective_f(x, y, gamma);
  for (int i = 1; i < n; ++i) {
    beta -= m.lambda[i - 1] * (x[i] - x[i - 1]);
    beta -= m.mu[i - 1] * (y[sigma[i]] - y[sigma[i - 1]]);
  }
  return beta;
}

enum class CellStatus { kExcluded, kSurvived, kUnresolved };

struct CellBound {
  Perm sigma;
  Rational beta;        // valid unless status is kUnresolved
  CellStatus status = CellStatus::kUnresolved;
  std::string note;
};

// Global-optimality record for one (n, gamma) instance.
struct Certificate {
  int n = 0;
  Rational gamma;
  Rational theta;                  // exact objective of the candidate
  Perm candidate_sigma;
  uint64_t cells_total = 0;
  uint64_t cells_excluded = 0;
  std::vector<CellBound> xi;         // surviving cells, beta <= theta
  std::vector<CellBound> unresolved;  // cells with no valid bound after retries
  double delta = 0.0;
  double runtime_seconds = 0.0;
  // True iff nothing is unresolved and every surviving cell is
  // torus-equivalent to the candidate's cell.
  bool certified = false;
  std::vector<CellBound> all_cells;  // populated only when keep_all_bounds
};

struct CertifyParams {
  double delta = 0.0;        // 0 selects the margin-based default
  double eps = 1e-12;
  int max_iter = 10000;
  int max_retries = 3;       // delta/10 per retry on a failed bound attempt
  int threads = 0;
  bool keep_all_bounds = false;
  uint64_t progress_every = 0;
};

namespace detail {

inline std::vector<Rational> to_rational_vec(const std::vector<double>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (double d : v) out.push_back(rational_from_double(d));
  return out;
}

// One bound attempt for a cell at a fixed delta. Returns the bound or an
// explanation of why the dual point was unusable.
inline std::pair<std::optional<Rational>, std::string> bound_attempt(
    int n, const Rational& gamma, double gamma_d, const Perm& sigma, double delta,
    double eps, int max_iter) {
  CellProblem problem(n, gamma_d, sigma);
  CellResult r = alternating_minimize(problem, eps, delta, max_iter);
  if (r.status == SolveStatus::kCellExit) {
    // Retry once from a start nudged toward the canonical interior point.
    std::vector<double> sx, sy;
    cell_start(sigma, &sx, &sy);
    std::vector<double> px = r.x, py = r.y;
    const double step = 1.0 / (4.0 * n);
    for (int i = 0; i < n; ++i) {
      px[i] += step * (sx[i] - px[i]);
      py[i] += step * (sy[i] - py[i]);
    }
    r = alternating_minimize_from(problem, std::move(px), std::move(py), eps, delta,
                                  max_iter);
  }
  if (!r.converged) return {std::nullopt, "solver: " + r.diagnostic};

  const std::vector<Rational> xr = to_rational_vec(r.x);
  const std::vector<Rational> yr = to_rational_vec(r.y);
  if (!in_cell_exact(xr, yr, sigma)) return {std::nullopt, "iterate not in cell"};
  const Multipliers m = multipliers(xr, yr, sigma, gamma);
  if (!m.strictly_positive) return {std::nullopt, "dual infeasible"};
  return {wolfe_bound(xr, yr, sigma, gamma, m), ""};
}

}  // namespace detail

// Proof by exhaustion that the candidate minimizes F over all cells. For
// every semi-canonical cell a certified lower bound beta is computed; cells
// with beta <= theta survive into xi. The certificate succeeds when xi holds
// only cells torus-equivalent to the candidate's own cell. A cell whose bound
// is at first insufficient or dual-infeasible is retried with delta shrunk
// tenfold; a cell with no valid bound after the retries is reported
// unresolved, never dropped.
inline Certificate certify(int n, const Gamma& gamma, const PointSet<Rational>& candidate,
                           const CertifyParams& params = {}) {
  gamma.require_convex_range();
  if (candidate.size() != n) throw std::invalid_argument("certify: candidate size != n");
  const auto t0 = std::chrono::steady_clock::now();

  Certificate cert;
  cert.n = n;
  cert.gamma = gamma.value;

  const PointSet<Rational> cand = normalize(candidate);
  cert.candidate_sigma = lattice_sigma(cand);
  cert.theta = objective_f(cand, gamma.value);
  const std::set<Perm> cand_orbit = cell_orbit(cert.candidate_sigma);
  const double gamma_d = gamma.d();
  const double theta_d = to_double(cert.theta);

  if (n == 1) {
    cert.certified = true;
    return cert;
  }

  SweepOptions sweep;
  sweep.threads = params.threads;
  sweep.progress_every = params.progress_every;

  // Pass 1 (floating point): local minima of every cell, for the default
  // delta. The margin between the candidate value and the best non-equivalent
  // cell bounds the slack the dual points may spend.
  double delta = params.delta;
  if (delta <= 0.0) {
    struct MarginAcc {
      double best_other = std::numeric_limits<double>::infinity();
    } margin;
    parallel_cells(
        n, sweep, margin,
        [&](const Perm& sigma, MarginAcc& acc) {
          double value = theta_d;  // conservative when the cell does not solve
          try {
            CellResult r = alternating_minimize(CellProblem(n, gamma_d, sigma),
                                                params.eps, 0.0, params.max_iter);
            if (r.converged) value = r.objective;
          } catch (const std::exception&) {
          }
          if (cand_orbit.count(sigma) == 0 && value < acc.best_other)
            acc.best_other = value;
        },
        [](MarginAcc& total, MarginAcc&& part) {
          total.best_other = std::min(total.best_other, part.best_other);
        });
    const double gap = margin.best_other - theta_d;
    delta = gap > 0.0 ? gap / (2.0 * n * n) : 1e-9;
    if (!std::isfinite(delta) || delta <= 0.0) delta = 1e-9;
  }
  cert.delta = delta;

  // Pass 2: certified bounds.
  struct BoundAcc {
    uint64_t excluded = 0;
    std::vector<CellBound> xi;
    std::vector<CellBound> unresolved;
    std::vector<CellBound> all;
  } acc_total;

  const Rational theta = cert.theta;
  cert.cells_total = parallel_cells(
      n, sweep, acc_total,
      [&](const Perm& sigma, BoundAcc& acc) {
        CellBound record;
        record.sigma = sigma;
        bool have_bound = false;
        bool excluded = false;
        std::string last_failure;
        double d = delta;
        // A failed attempt (infeasible dual point, cell exit, or a bound that
        // does not clear theta) is retried with delta shrunk tenfold; the
        // tightest valid bound found is the one reported.
        for (int attempt = 0; attempt <= params.max_retries && !excluded;
             ++attempt, d /= 10.0) {
          const double cell_eps = std::min(params.eps, std::max(d * 1e-3, 1e-14));
          std::optional<Rational> beta;
          std::string why;
          try {
            std::tie(beta, why) = detail::bound_attempt(n, gamma.value, gamma_d, sigma,
                                                        d, cell_eps, params.max_iter);
          } catch (const std::exception& e) {
            why = e.what();
          }
          if (!beta) {
            last_failure = why;
            continue;
          }
          if (!have_bound || *beta > record.beta) record.beta = *beta;
          have_bound = true;
          if (record.beta > theta) excluded = true;
        }
        if (excluded) {
          record.status = CellStatus::kExcluded;
          ++acc.excluded;
        } else if (have_bound) {
          record.status = CellStatus::kSurvived;
          acc.xi.push_back(record);
        } else {
          record.status = CellStatus::kUnresolved;
          record.note = last_failure;
          acc.unresolved.push_back(record);
        }
        if (params.keep_all_bounds) acc.all.push_back(record);
      },
      [](BoundAcc& total, BoundAcc&& part) {
        total.excluded += part.excluded;
        for (auto& r : part.xi) total.xi.push_back(std::move(r));
        for (auto& r : part.unresolved) total.unresolved.push_back(std::move(r));
        for (auto& r : part.all) total.all.push_back(std::move(r));
      });

  cert.cells_excluded = acc_total.excluded;
  cert.xi = std::move(acc_total.xi);
  cert.unresolved = std::move(acc_total.unresolved);
  cert.all_cells = std::move(acc_total.all);

  cert.certified = cert.unresolved.empty() && !cert.xi.empty();
  for (const CellBound& survivor : cert.xi)
    if (cand_orbit.count(survivor.sigma) == 0) cert.certified = false;

  cert.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

}  // namespace torusopt

#endif  // TORUSOPT_CERTIFIER_HPP_
