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
// Deterministic parallel sweep over semi-canonical cells. The lexicographic
// enumeration tree is statically partitioned by the first one or two values
// after sigma(0) = 0; workers steal whole subtrees from an atomic cursor and
// reduce into per-task slots, which are merged in task order afterwards.
// Results therefore never depend on thread count or scheduling.

#ifndef TORUSOPT_PARALLEL_HPP_
#define TORUSOPT_PARALLEL_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <iostream>
#include <thread>
#include <vector>

#include "torusopt/permutation.hpp"

namespace torusopt {

// Disjoint prefix cover of the enumeration tree, restricted to an optional
// shard prefix. Prefix values are the entries after the fixed leading 0.
inline std::vector<std::vector<int>> cell_task_prefixes(int n,
                                                        const std::vector<int>& shard) {
  if (n < 6 || shard.size() >= 2) return {shard};
  std::vector<std::vector<int>> tasks;
  if (shard.size() == 1) {
    for (int v2 = 1; v2 < n; ++v2) {
      if (v2 == shard[0]) continue;
      tasks.push_back({shard[0], v2});
    }
    return tasks;
  }
  for (int v1 = 1; 2 * v1 <= n; ++v1)
    for (int v2 = 1; v2 < n; ++v2) {
      if (v2 == v1) continue;
      tasks.push_back({v1, v2});
    }
  return tasks;
}

struct SweepOptions {
  int threads = 0;                 // 0 selects hardware concurrency
  std::vector<int> shard_prefix;   // restrict to sigma = (0, prefix..., *)
  uint64_t progress_every = 0;     // 0 disables progress reports on stderr
};

// Calls per_cell(sigma, acc) for every semi-canonical sigma (within the
// shard), enumeration order within each task, tasks merged in order via
// merge(total, std::move(task_acc)). Returns the cell count.
template <class Acc, class PerCell, class Merge>
uint64_t parallel_cells(int n, const SweepOptions& opts, Acc& total, PerCell per_cell,
                        Merge merge) {
  const std::vector<std::vector<int>> tasks = cell_task_prefixes(n, opts.shard_prefix);
  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > static_cast<int>(tasks.size())) threads = static_cast<int>(tasks.size());

  std::vector<Acc> slots(tasks.size());
  std::atomic<size_t> cursor{0};
  std::atomic<uint64_t> done{0};

  auto worker = [&]() {
    while (true) {
      const size_t t = cursor.fetch_add(1);
      if (t >= tasks.size()) return;
      Acc& acc = slots[t];
      enumerate_semi_canonical(
          n,
          [&](const Perm& sigma) {
            per_cell(sigma, acc);
            const uint64_t k = done.fetch_add(1) + 1;
            if (opts.progress_every && k % opts.progress_every == 0)
              std::cerr << "processed " << k << " cells\n";
          },
          tasks[t]);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& slot : slots) merge(total, std::move(slot));
  return done.load();
}

}  // namespace torusopt

#endif  // TORUSOPT_PARALLEL_HPP_
