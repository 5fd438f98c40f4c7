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

#ifndef TORUSOPT_LATTICE_HPP_
#define TORUSOPT_LATTICE_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusopt/permutation.hpp"
#include "torusopt/rational.hpp"
#include "torusopt/torus.hpp"

namespace torusopt {

// Rank-1 integration lattice { (i/N, (i g mod N)/N) : i = 0..N-1 } with
// gcd(g, N) = 1. N = 1 degenerates to the single point (0,0).
struct LatticeSpec {
  int n;
  int g;

  LatticeSpec(int n_, int g_) : n(n_), g(g_) {
    if (n < 1) throw std::invalid_argument("lattice: need N >= 1");
    if (n > 1 && (g < 1 || g > n - 1))
      throw std::invalid_argument("lattice: generator must be in 1..N-1");
    if (n == 1) g = 1;
    if (std::gcd(g, n) != 1)
      throw std::invalid_argument("lattice: generator not coprime to N");
  }
};

inline PointSet<Rational> rank1_lattice(const LatticeSpec& spec) {
  PointSet<Rational> out;
  out.pts.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Rational x(i, spec.n);
    Rational y((i * static_cast<long>(spec.g)) % spec.n, spec.n);
    x.canonicalize();
    y.canonicalize();
    out.pts.push_back({x, y});
  }
  return out;
}

// Fibonacci numbers with F_1 = F_2 = 1.
inline uint64_t fibonacci(int index) {
  if (index < 1 || index > 92) throw std::invalid_argument("fibonacci: index out of range");
  uint64_t a = 1, b = 1;
  for (int i = 3; i <= index; ++i) {
    uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

// Returns the Fibonacci index of n, if n is a Fibonacci number. n = 1 maps
// to index 2.
inline std::optional<int> fibonacci_index(uint64_t n) {
  if (n < 1) return std::nullopt;
  for (int k = 2; k <= 92; ++k) {
    const uint64_t f = fibonacci(k);
    if (f == n) return k;
    if (f > n) return std::nullopt;
  }
  return std::nullopt;
}

// The Fibonacci lattice with N = F_n points and generator g = F_{n-1}
// (g = 1 for N <= 2).
inline PointSet<Rational> fibonacci_lattice(int index) {
  if (index < 2) throw std::invalid_argument("fibonacci_lattice: need index >= 2");
  const uint64_t n = fibonacci(index);
  if (n > 1u << 20) throw std::invalid_argument("fibonacci_lattice: N too large");
  const uint64_t g = n <= 2 ? 1 : fibonacci(index - 1);
  return rank1_lattice(LatticeSpec(static_cast<int>(n), static_cast<int>(g)));
}

inline PointSet<Rational> fibonacci_lattice_n(int n) {
  const auto index = fibonacci_index(static_cast<uint64_t>(n));
  if (!index) throw std::invalid_argument("not a Fibonacci number: " + std::to_string(n));
  return fibonacci_lattice(*index);
}

// Cell index of a point set: sigma(r) = index of the point with the r-th
// smallest y, with points labeled in x-order. Requires a normalized set with
// pairwise distinct coordinates in each dimension.
template <class S>
Perm lattice_sigma(const PointSet<S>& p) {
  const int n = p.size();
  if (n < 1) throw std::invalid_argument("lattice_sigma: empty point set");
  for (int i = 0; i + 1 < n; ++i)
    if (!(p.pts[i].x < p.pts[i + 1].x))
      throw std::invalid_argument("lattice_sigma: x-coordinates must be strictly increasing");
  Perm sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  std::sort(sigma.begin(), sigma.end(),
            [&](int a, int b) { return p.pts[a].y < p.pts[b].y; });
  for (int r = 0; r + 1 < n; ++r)
    if (p.pts[sigma[r]].y == p.pts[sigma[r + 1]].y)
      throw std::invalid_argument("lattice_sigma: duplicate y-coordinate, cell is ambiguous");
  return sigma;
}

// Detects whether p coincides with some rank-1 lattice: returns the generator
// of the first match with every coordinate within tol in the torus metric.
// Expects p normalized (anchored at (0,0), x ascending).
inline std::optional<int> match_rank1_lattice(const PointSet<double>& p, double tol) {
  const int n = p.size();
  if (n == 1) {
    if (detail::torus_coord_dist(p.pts[0].x, 0.0) <= tol &&
        detail::torus_coord_dist(p.pts[0].y, 0.0) <= tol)
      return 1;
    return std::nullopt;
  }
  for (int g = 1; g < n; ++g) {
    if (std::gcd(g, n) != 1) continue;
    const PointSet<double> lat = to_double_set(rank1_lattice(LatticeSpec(n, g)));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      ok = detail::torus_coord_dist(p.pts[i].x, lat.pts[i].x) <= tol &&
           detail::torus_coord_dist(p.pts[i].y, lat.pts[i].y) <= tol;
    }
    if (ok) return g;
  }
  return std::nullopt;
}

}  // namespace torusopt

#endif  // TORUSOPT_LATTICE_HPP_
