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
// Metrics for N-point sets on the 2-torus: the degree-two Bernoulli kernel,
// the tensor-product kernel K_2, the quadrature worst-case error for the
// weighted mixed-smoothness space, the periodic L2-discrepancy, and the pair
// objectives F/G whose minimizers are the optimal point sets. Every formula
// is implemented once, templated over the scalar, so the same code runs in
// fast floating point and in exact rational arithmetic.

#ifndef TORUSOPT_KERNEL_HPP_
#define TORUSOPT_KERNEL_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torusopt/rational.hpp"
#include "torusopt/torus.hpp"

namespace torusopt {

// Space weight gamma. Metrics accept any gamma >= 0; the cell objectives are
// convex only for gamma in [0,6], so the optimizer and certifier insist on
// that range.
struct Gamma {
  Rational value;

  explicit Gamma(Rational v) : value(std::move(v)) {
    if (value < 0) throw std::invalid_argument("gamma must be nonnegative");
  }
  static Gamma parse(const std::string& text) { return Gamma(parse_rational(text)); }

  double d() const { return to_double(value); }
  void require_convex_range() const {
    if (value < 0 || value > 6)
      throw std::invalid_argument("gamma outside [0,6]: objectives are not convex");
  }
};

// k(t) = (t^2 - t + 1/6) / 2, the Bernoulli polynomial of degree two halved.
// Satisfies k(t) == k(1-t), which is why plain |u - v| of representatives in
// [0,1) can stand in for the torus distance everywhere below.
template <class S>
S bernoulli_k(const S& t) {
  using Ops = scalar_ops<S>;
  if (t < S(0) || t > S(1))
    throw std::domain_error("bernoulli_k: argument outside [0,1]");
  S r = (t * t - t + Ops::ratio(1, 6)) * Ops::ratio(1, 2);
  return r;
}

// Univariate kernel 1 + gamma * k(|u - v|) for u, v in [0,1).
template <class S>
S kernel1(const S& u, const S& v, const S& gamma) {
  S r = S(1) + gamma * bernoulli_k(abs_diff(u, v));
  return r;
}

// Tensor-product kernel on the 2-torus.
template <class S>
S kernel2(const TorusPoint<S>& p, const TorusPoint<S>& q, const S& gamma) {
  S r = kernel1(p.x, q.x, gamma) * kernel1(p.y, q.y, gamma);
  return r;
}

// Squared worst-case error of the equal-weight rule on p:
//   wce^2 = -1 + (1/N^2) sum_{i,j} K_2(p_i, p_j).
template <class S>
S wce_squared(const PointSet<S>& p, const S& gamma) {
  using Ops = scalar_ops<S>;
  const int n = p.size();
  if (n < 1) throw std::invalid_argument("wce: empty point set");
  const S diag = (S(1) + gamma * Ops::ratio(1, 12)) * (S(1) + gamma * Ops::ratio(1, 12));
  S sum = S(n) * diag;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sum += S(2) * kernel2(p.pts[i], p.pts[j], gamma);
  S r = sum / (S(n) * S(n)) - S(1);
  return r;
}

// The squared wce is provably nonnegative; anything below -1e-12 signals an
// internal inconsistency rather than roundoff.
inline double wce(const PointSet<double>& p, double gamma) {
  const double w2 = wce_squared(p, gamma);
  if (w2 < -1e-12) throw std::runtime_error("wce: negative squared worst-case error");
  return std::sqrt(std::max(0.0, w2));
}

// Pair objective F: sum over i<j of
//   k(|x_i-x_j|) + k(|y_i-y_j|) + gamma k(|x_i-x_j|) k(|y_i-y_j|).
// Related to the worst-case error by
//   wce^2 == gamma (2 k(0) + gamma k(0)^2) / N + (2 gamma / N^2) F.
template <class S>
S objective_f(const std::vector<S>& x, const std::vector<S>& y, const S& gamma) {
  const int n = static_cast<int>(x.size());
  if (y.size() != x.size()) throw std::invalid_argument("objective_f: length mismatch");
  S total = S(0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      S kx = bernoulli_k(abs_diff(x[i], x[j]));
      S ky = bernoulli_k(abs_diff(y[i], y[j]));
      total += kx + ky + gamma * kx * ky;
    }
  }
  return total;
}

template <class S>
S objective_f(const PointSet<S>& p, const S& gamma) {
  std::vector<S> x, y;
  x.reserve(p.pts.size());
  y.reserve(p.pts.size());
  for (const auto& pt : p.pts) {
    x.push_back(pt.x);
    y.push_back(pt.y);
  }
  return objective_f(x, y, gamma);
}

// Full double-sum objective G = sum_{i,j} K_2(p_i, p_j) == N^2 (wce^2 + 1).
template <class S>
S objective_g(const std::vector<S>& x, const std::vector<S>& y, const S& gamma) {
  const int n = static_cast<int>(x.size());
  if (y.size() != x.size()) throw std::invalid_argument("objective_g: length mismatch");
  S total = S(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      total += kernel1(x[i], x[j], gamma) * kernel1(y[i], y[j], gamma);
  return total;
}

// Converts an F value into the squared worst-case error it corresponds to.
template <class S>
S wce_squared_from_f(const S& f_value, int n, const S& gamma) {
  using Ops = scalar_ops<S>;
  const S k0 = Ops::ratio(1, 12);
  S r = gamma * (S(2) * k0 + gamma * k0 * k0) / S(n) +
        (S(2) * gamma / (S(n) * S(n))) * f_value;
  return r;
}

// Squared periodic L2-discrepancy via the shifted kernel
//   Ktilde(u,v) = |u-v|^2 - |u-v| + 1/2  (per coordinate, product over both):
//   D2^2 = -1/9 + (1/N^2) sum_{i,j} Ktilde_2(p_i, p_j).
// Equals wce^2 at gamma = 6 scaled by 1/9; both routes are kept so one can
// check the other.
template <class S>
S discrepancy_squared(const PointSet<S>& p) {
  using Ops = scalar_ops<S>;
  const int n = p.size();
  if (n < 1) throw std::invalid_argument("discrepancy: empty point set");
  auto ktilde = [](const S& u, const S& v) {
    S t = abs_diff(u, v);
    S r = t * t - t + scalar_ops<S>::ratio(1, 2);
    return r;
  };
  S sum = S(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sum += ktilde(p.pts[i].x, p.pts[j].x) * ktilde(p.pts[i].y, p.pts[j].y);
  S r = sum / (S(n) * S(n)) - Ops::ratio(1, 9);
  return r;
}

inline double periodic_l2_discrepancy(const PointSet<double>& p) {
  const double d2 = discrepancy_squared(p);
  if (d2 < -1e-12) throw std::runtime_error("discrepancy: negative squared value");
  return std::sqrt(std::max(0.0, d2));
}

// Independent test oracle for the periodic L2-discrepancy: averages the
// squared box discrepancy D(P,B)^2 over all periodic boxes whose corners lie
// on the m^4 grid {0, 1/m, ..., (m-1)/m}^4. Riemann-sum error is O(1/m).
// Periodic intervals are left-closed right-open; I(a,a) is empty and a
// wrap-around interval [a,1) u [0,b) counts as two pieces.
inline double box_discrepancy_estimate(const PointSet<double>& p, int m) {
  if (m < 1) throw std::invalid_argument("box oracle: grid resolution must be >= 1");
  const int n = p.size();
  if (n > 64) throw std::invalid_argument("box oracle: supports at most 64 points");

  // Membership masks per dimension: bit i set iff point i lies in I(a/m, b/m).
  auto build = [&](bool ydim) {
    std::vector<uint64_t> masks(static_cast<size_t>(m) * m, 0);
    std::vector<double> len(static_cast<size_t>(m) * m, 0.0);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const double lo = static_cast<double>(a) / m;
        const double hi = static_cast<double>(b) / m;
        uint64_t mask = 0;
        for (int i = 0; i < n; ++i) {
          const double u = ydim ? p.pts[i].y : p.pts[i].x;
          const bool inside = lo <= hi ? (u >= lo && u < hi) : (u >= lo || u < hi);
          if (inside) mask |= uint64_t{1} << i;
        }
        masks[static_cast<size_t>(a) * m + b] = mask;
        len[static_cast<size_t>(a) * m + b] = lo <= hi ? hi - lo : 1.0 - lo + hi;
      }
    }
    return std::pair(masks, len);
  };
  auto [mx, lx] = build(false);
  auto [my, ly] = build(true);

  double acc = 0.0;
  const size_t cells = static_cast<size_t>(m) * m;
  for (size_t i = 0; i < cells; ++i) {
    for (size_t j = 0; j < cells; ++j) {
      const int count = std::popcount(mx[i] & my[j]);
      const double d = static_cast<double>(count) / n - lx[i] * ly[j];
      acc += d * d;
    }
  }
  return std::sqrt(acc / (static_cast<double>(cells) * cells));
}

}  // namespace torusopt

#endif  // TORUSOPT_KERNEL_HPP_
