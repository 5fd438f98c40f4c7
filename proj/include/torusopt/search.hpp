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
// Global search driver: minimize F over every semi-canonical cell and keep
// the best local minimizer. Ties in the objective break lexicographically on
// sigma, so the outcome is identical for any thread count or sharding.

#ifndef TORUSOPT_SEARCH_HPP_
#define TORUSOPT_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "torusopt/certifier.hpp"
#include "torusopt/kernel.hpp"
#include "torusopt/lattice.hpp"
#include "torusopt/optimizer.hpp"
#include "torusopt/parallel.hpp"
#include "torusopt/permutation.hpp"
#include "torusopt/torus.hpp"

namespace torusopt {

inline constexpr const char kToolVersion[] = "torusopt 0.1.0";

struct SearchRecord {
  int n = 0;
  Rational gamma;
  Perm sigma;                 // best cell
  PointSet<double> points;    // best point set, anchored at (0,0), x ascending
  double wce_value = 0.0;
  double d2_value = 0.0;
  double objective = 0.0;
  uint64_t cells_scanned = 0;
  double wall_seconds = 0.0;
  std::string version = kToolVersion;
};

struct SearchParams {
  double eps = 1e-12;
  double delta = 0.0;
  int max_iter = 10000;
  int threads = 0;
  std::vector<int> shard_prefix;
  uint64_t progress_every = 10000;
};

struct FailedCell {
  Perm sigma;
  std::string diagnostic;
};

struct SearchOutcome {
  SearchRecord record;
  std::vector<FailedCell> failed;  // cells whose solve did not converge
  bool found = false;              // false when the shard contained no cells
};

inline SearchOutcome optimize_search(int n, const Gamma& gamma,
                                     const SearchParams& params = {}) {
  gamma.require_convex_range();
  if (n < 1) throw std::invalid_argument("optimize: need n >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  SearchOutcome outcome;
  SearchRecord& rec = outcome.record;
  rec.n = n;
  rec.gamma = gamma.value;

  if (n == 1) {
    rec.sigma = {0};
    rec.points.pts = {{0.0, 0.0}};
    rec.objective = 0.0;
    outcome.found = true;
  } else {
    struct Best {
      double objective = std::numeric_limits<double>::infinity();
      Perm sigma;
      CellResult result;
      uint64_t cells = 0;
      std::vector<FailedCell> failed;
    } best;

    const double gamma_d = gamma.d();
    SweepOptions sweep;
    sweep.threads = params.threads;
    sweep.shard_prefix = params.shard_prefix;
    sweep.progress_every = params.progress_every;

    auto better = [](double obj_a, const Perm& sig_a, double obj_b, const Perm& sig_b) {
      if (obj_a != obj_b) return obj_a < obj_b;
      return sig_a < sig_b;
    };

    rec.cells_scanned = parallel_cells(
        n, sweep, best,
        [&](const Perm& sigma, Best& acc) {
          ++acc.cells;
          CellResult r;
          try {
            r = alternating_minimize(CellProblem(n, gamma_d, sigma), params.eps,
                                     params.delta, params.max_iter);
          } catch (const std::exception& e) {
            acc.failed.push_back({sigma, e.what()});
            return;
          }
          if (!r.converged) {
            acc.failed.push_back({sigma, r.diagnostic});
            return;
          }
          if (acc.sigma.empty() || better(r.objective, sigma, acc.objective, acc.sigma)) {
            acc.objective = r.objective;
            acc.sigma = sigma;
            acc.result = std::move(r);
          }
        },
        [&](Best& total, Best&& part) {
          total.cells += part.cells;
          for (auto& f : part.failed) total.failed.push_back(std::move(f));
          if (part.sigma.empty()) return;
          if (total.sigma.empty() ||
              better(part.objective, part.sigma, total.objective, total.sigma)) {
            total.objective = part.objective;
            total.sigma = std::move(part.sigma);
            total.result = std::move(part.result);
          }
        });

    outcome.failed = std::move(best.failed);
    if (best.sigma.empty()) {
      if (rec.cells_scanned == 0) return outcome;  // empty shard
      throw std::runtime_error("optimize: no cell solved successfully");
    }
    rec.sigma = best.sigma;
    rec.objective = best.objective;
    rec.points = point_set_from_blocks(best.result.x, best.result.y);
    outcome.found = true;
  }

  rec.wce_value = wce(rec.points, gamma.d());
  rec.d2_value = periodic_l2_discrepancy(rec.points);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return outcome;
}

}  // namespace torusopt

#endif  // TORUSOPT_SEARCH_HPP_
