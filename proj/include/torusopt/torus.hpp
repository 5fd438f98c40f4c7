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

#ifndef TORUSOPT_TORUS_HPP_
#define TORUSOPT_TORUS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "torusopt/rational.hpp"

namespace torusopt {

template <class S>
struct TorusPoint {
  S x{};
  S y{};

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

// An ordered list of N points on the 2-torus, coordinates in [0,1).
template <class S>
struct PointSet {
  std::vector<TorusPoint<S>> pts;

  PointSet() = default;
  explicit PointSet(std::vector<TorusPoint<S>> p) : pts(std::move(p)) {}

  int size() const { return static_cast<int>(pts.size()); }
  const TorusPoint<S>& operator[](int i) const { return pts[i]; }
  TorusPoint<S>& operator[](int i) { return pts[i]; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.pts == b.pts;
  }
};

template <class S>
PointSet<S> point_set_from_blocks(const std::vector<S>& x, const std::vector<S>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("point_set_from_blocks: length mismatch");
  PointSet<S> out;
  out.pts.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) out.pts.push_back({x[i], y[i]});
  return out;
}

inline PointSet<double> to_double_set(const PointSet<Rational>& p) {
  PointSet<double> out;
  out.pts.reserve(p.pts.size());
  for (const auto& pt : p.pts) out.pts.push_back({to_double(pt.x), to_double(pt.y)});
  return out;
}

inline PointSet<Rational> to_rational_set(const PointSet<double>& p) {
  PointSet<Rational> out;
  out.pts.reserve(p.pts.size());
  for (const auto& pt : p.pts)
    out.pts.push_back({rational_from_double(pt.x), rational_from_double(pt.y)});
  return out;
}

// Generators of the error-preserving symmetry group of the 2-torus:
// coordinate shifts mod 1, coordinate reflections, swapping the two
// coordinates, and relabeling the points.
template <class S>
struct TorusSymmetry {
  enum class Kind { kShiftX, kShiftY, kReflectX, kReflectY, kSwapXY, kRelabel };

  Kind kind;
  S shift{};
  std::vector<int> relabel;

  static TorusSymmetry shift_x(S c) { return {Kind::kShiftX, std::move(c), {}}; }
  static TorusSymmetry shift_y(S c) { return {Kind::kShiftY, std::move(c), {}}; }
  static TorusSymmetry reflect_x() { return {Kind::kReflectX, S{}, {}}; }
  static TorusSymmetry reflect_y() { return {Kind::kReflectY, S{}, {}}; }
  static TorusSymmetry swap_xy() { return {Kind::kSwapXY, S{}, {}}; }
  static TorusSymmetry relabel_points(std::vector<int> perm) {
    return {Kind::kRelabel, S{}, std::move(perm)};
  }
};

namespace detail {

inline bool is_permutation_of_range(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace detail

template <class S>
PointSet<S> apply_symmetry(const PointSet<S>& p, const TorusSymmetry<S>& s) {
  using Kind = typename TorusSymmetry<S>::Kind;
  using Ops = scalar_ops<S>;
  PointSet<S> out = p;
  switch (s.kind) {
    case Kind::kShiftX:
      for (auto& pt : out.pts) pt.x = Ops::mod1(pt.x + s.shift);
      break;
    case Kind::kShiftY:
      for (auto& pt : out.pts) pt.y = Ops::mod1(pt.y + s.shift);
      break;
    case Kind::kReflectX:
      for (auto& pt : out.pts) pt.x = Ops::mod1(S(1) - pt.x);
      break;
    case Kind::kReflectY:
      for (auto& pt : out.pts) pt.y = Ops::mod1(S(1) - pt.y);
      break;
    case Kind::kSwapXY:
      for (auto& pt : out.pts) std::swap(pt.x, pt.y);
      break;
    case Kind::kRelabel: {
      if (!detail::is_permutation_of_range(s.relabel, p.size()))
        throw std::invalid_argument("relabel map is not a permutation of the point indices");
      for (int i = 0; i < p.size(); ++i) out.pts[i] = p.pts[s.relabel[i]];
      break;
    }
  }
  return out;
}

// Shifts the set so points[0] lands on (0,0) and relabels into lexicographic
// (x, then y) order; the origin point sorts first.
template <class S>
PointSet<S> normalize(const PointSet<S>& p) {
  using Ops = scalar_ops<S>;
  if (p.size() < 1) throw std::invalid_argument("normalize: empty point set");
  const S dx = p.pts[0].x;
  const S dy = p.pts[0].y;
  PointSet<S> out = p;
  for (auto& pt : out.pts) {
    pt.x = Ops::mod1(pt.x - dx);
    pt.y = Ops::mod1(pt.y - dy);
  }
  std::sort(out.pts.begin(), out.pts.end());
  return out;
}

namespace detail {

inline double torus_coord_dist(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

// Relabel-free matching: pair every point of a with a distinct point of b at
// torus deviation <= tol. Greedy is enough because tol is always far below
// the point separation in practice, and it avoids sort instabilities when a
// coordinate sits within tol of the 0/1 seam.
inline bool matches_within(const std::vector<TorusPoint<double>>& a,
                           const std::vector<TorusPoint<double>>& b, double tol) {
  std::vector<bool> used(b.size(), false);
  for (const auto& pa : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (torus_coord_dist(pa.x, b[j].x) <= tol &&
          torus_coord_dist(pa.y, b[j].y) <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

// True iff some composition of torus symmetries maps q onto p with maximum
// per-coordinate deviation <= tol in the torus metric. The search is finite:
// any error-preserving shift aligning the two sets must send some point of q
// onto a point of p, so shifts are anchored at candidate point pairs.
inline bool equivalent(const PointSet<double>& p, const PointSet<double>& q,
                       double tol) {
  if (p.size() != q.size()) throw std::invalid_argument("equivalent: size mismatch");
  const int n = p.size();
  for (int swap = 0; swap < 2; ++swap) {
    for (int rx = 0; rx < 2; ++rx) {
      for (int ry = 0; ry < 2; ++ry) {
        PointSet<double> qt = q;
        if (swap) qt = apply_symmetry(qt, TorusSymmetry<double>::swap_xy());
        if (rx) qt = apply_symmetry(qt, TorusSymmetry<double>::reflect_x());
        if (ry) qt = apply_symmetry(qt, TorusSymmetry<double>::reflect_y());
        for (int anchor = 0; anchor < n; ++anchor) {
          PointSet<double> shifted = qt;
          const double cx = p.pts[0].x - qt.pts[anchor].x;
          const double cy = p.pts[0].y - qt.pts[anchor].y;
          for (auto& pt : shifted.pts) {
            pt.x = mod1(pt.x + cx);
            pt.y = mod1(pt.y + cy);
          }
          if (detail::matches_within(p.pts, shifted.pts, tol)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace torusopt

#endif  // TORUSOPT_TORUS_HPP_
