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
// Cells of the point-set optimization problem are indexed by permutations:
// sigma(r) is the index of the point with the r-th smallest y-coordinate when
// points are labeled in x-order. The torus symmetry group acts on these cell
// indices; semi-canonical permutations are the reduced set of representatives
// that the search and the certification loop enumerate.

#ifndef TORUSOPT_PERMUTATION_HPP_
#define TORUSOPT_PERMUTATION_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusopt {

using Perm = std::vector<int>;

inline bool is_valid_permutation(const Perm& p) {
  const int n = static_cast<int>(p.size());
  std::vector<bool> seen(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Perm inverse_permutation(const Perm& p) {
  Perm inv(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) inv[p[i]] = i;
  return inv;
}

inline std::string format_permutation(const Perm& p) {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out << ' ';
    out << p[i];
  }
  out << ')';
  return out.str();
}

inline Perm parse_permutation(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  Perm p;
  int v;
  while (in >> v) p.push_back(v);
  if (p.empty() || !is_valid_permutation(p))
    throw std::invalid_argument("not a permutation of 0..N-1: " + text);
  return p;
}

// Distance on the cyclic index set {0,...,n-1}.
inline int cyclic_distance(int i, int j, int n) {
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::out_of_range("cyclic_distance: index outside 0..n-1");
  const int d = i > j ? i - j : j - i;
  return d < n - d ? d : n - d;
}

// A permutation sigma with sigma(0) = 0 is semi-canonical when
//   (ii)  d(sigma(1), sigma(2)) <= d(0, sigma(N-1)),
//   (iii) sigma(1) equals the minimum consecutive cyclic distance
//         d(sigma(i), sigma(i+1)), i = 0..N-1, identifying sigma(N) with 0
//         (this forces sigma(1) <= N/2), and
//   (iv)  sigma <= sigma^{-1} lexicographically.
// (iv) is non-strict: involutions such as (0 1) or (0 1 3 2) index real cells
// and a strict comparison would drop them.
inline bool is_semi_canonical(const Perm& sigma) {
  const int n = static_cast<int>(sigma.size());
  if (n < 2 || !is_valid_permutation(sigma)) return false;
  if (sigma[0] != 0) return false;
  if (2 * sigma[1] > n) return false;
  int min_dist = n;
  for (int i = 0; i < n; ++i) {
    const int next = i + 1 < n ? sigma[i + 1] : 0;
    const int d = cyclic_distance(sigma[i], next, n);
    if (d < min_dist) min_dist = d;
  }
  if (min_dist != sigma[1]) return false;
  if (cyclic_distance(sigma[1], sigma[2 % n], n) > cyclic_distance(0, sigma[n - 1], n))
    return false;
  const Perm inv = inverse_permutation(sigma);
  return sigma <= inv;
}

namespace detail {

// Depth-first lexicographic enumeration. Prefix pruning: sigma(0) = 0,
// sigma(1) <= N/2, and every placed consecutive pair must keep its cyclic
// distance >= sigma(1), otherwise the minimum in (iii) would undercut
// sigma(1). Conditions (ii), (iv) and the wrap-around distance are checked
// at the leaves.
class SemiCanonicalDfs {
 public:
  SemiCanonicalDfs(int n, const std::function<void(const Perm&)>* emit)
      : n_(n), emit_(emit), sigma_(n, 0), used_(n, false) {
    used_[0] = true;
  }

  uint64_t run(const std::vector<int>& prefix) {
    int depth = 1;
    for (int v : prefix) {
      if (depth >= n_ || v <= 0 || v >= n_ || used_[v]) return 0;
      if (depth == 1 && 2 * v > n_) return 0;
      if (depth > 1 && cyclic_distance(sigma_[depth - 1], v, n_) < sigma_[1]) return 0;
      sigma_[depth] = v;
      used_[v] = true;
      ++depth;
    }
    count_ = 0;
    extend(depth);
    for (int v : prefix) used_[v] = false;
    return count_;
  }

 private:
  void extend(int depth) {
    if (depth == n_) {
      if (cyclic_distance(sigma_[n_ - 1], 0, n_) < sigma_[1]) return;
      if (!is_semi_canonical(sigma_)) return;
      ++count_;
      if (emit_ && *emit_) (*emit_)(sigma_);
      return;
    }
    const int limit = depth == 1 ? n_ / 2 : n_ - 1;
    for (int v = 1; v <= limit; ++v) {
      if (used_[v]) continue;
      if (depth > 1 && cyclic_distance(sigma_[depth - 1], v, n_) < sigma_[1]) continue;
      sigma_[depth] = v;
      used_[v] = true;
      extend(depth + 1);
      used_[v] = false;
    }
  }

  int n_;
  const std::function<void(const Perm&)>* emit_;
  Perm sigma_;
  std::vector<bool> used_;
  uint64_t count_ = 0;
};

}  // namespace detail

// Streams every semi-canonical permutation of size n in lexicographic order,
// optionally restricted to those beginning with (0, prefix...). Returns the
// number emitted. Permutations are never materialized as a whole list.
inline uint64_t enumerate_semi_canonical(int n, const std::function<void(const Perm&)>& emit,
                                         const std::vector<int>& prefix = {}) {
  if (n < 2) throw std::invalid_argument("enumerate_semi_canonical: need n >= 2");
  detail::SemiCanonicalDfs dfs(n, &emit);
  return dfs.run(prefix);
}

inline uint64_t count_semi_canonical(int n) {
  if (n < 2) throw std::invalid_argument("count_semi_canonical: need n >= 2");
  static const std::function<void(const Perm&)> kNoop;
  detail::SemiCanonicalDfs dfs(n, &kNoop);
  return dfs.run({});
}

// ---------------------------------------------------------------------------
// Symmetry action on cell indices.
//
// With the x-order permutation reduced to the identity, the torus symmetries
// act on the remaining cell index sigma through four generators:
//   * value shift      sigma(i) -> sigma(i) + 1 (mod N)     [x-shift]
//   * value reversal   sigma(i) -> N - 1 - sigma(i)         [x-reflection]
//   * sequence reversal (sigma(N-1), ..., sigma(0))         [y-reflection]
//   * inversion        sigma -> sigma^{-1}                  [swap x and y]
// Sequence rotations (y-shifts) arise as inversion-conjugated value shifts.

inline std::set<Perm> cell_orbit(const Perm& sigma) {
  if (!is_valid_permutation(sigma))
    throw std::invalid_argument("cell_orbit: not a permutation");
  const int n = static_cast<int>(sigma.size());
  std::set<Perm> seen;
  std::deque<Perm> queue;
  seen.insert(sigma);
  queue.push_back(sigma);
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    Perm shifted(n), reflected(n), reversed(n);
    for (int i = 0; i < n; ++i) {
      shifted[i] = (cur[i] + 1) % n;
      reflected[i] = n - 1 - cur[i];
      reversed[i] = cur[n - 1 - i];
    }
    for (const Perm& next : {shifted, reflected, reversed, inverse_permutation(cur)}) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

// True iff the cells indexed by a and b are torus-equivalent.
inline bool same_cell_orbit(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) return false;
  return cell_orbit(a).count(b) > 0;
}

// Brute-force verification oracle: partitions all permutations with
// sigma(0) = 0 into symmetry orbits and counts the classes. Exponential in n,
// so refuses n > 8.
inline uint64_t orbit_oracle_count(int n) {
  if (n < 2) throw std::invalid_argument("orbit_oracle_count: need n >= 2");
  if (n > 8) throw std::invalid_argument("orbit_oracle_count: n > 8 is too expensive");
  std::set<Perm> visited;
  uint64_t orbits = 0;
  Perm sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  do {
    if (sigma[0] != 0) continue;
    if (visited.count(sigma)) continue;
    ++orbits;
    for (const Perm& member : cell_orbit(sigma))
      if (member[0] == 0) visited.insert(member);
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
  return orbits;
}

}  // namespace torusopt

#endif  // TORUSOPT_PERMUTATION_HPP_
