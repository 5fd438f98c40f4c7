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

#ifndef TORUSOPT_RATIONAL_HPP_
#define TORUSOPT_RATIONAL_HPP_

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace torusopt {

// Exact arbitrary-precision rational scalar. mpq_class keeps values
// canonicalized: lowest terms, denominator > 0.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  return Rational(v);
}

// Reduces to the half-open unit interval [0,1).
inline Rational mod1(const Rational& v) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  Rational out(r, v.get_den());
  out.canonicalize();
  return out;
}

inline double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

// Serialized form is "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "p/q", decimal literals ("0.25") and scientific notation
// ("2.5e-3"); all are converted exactly.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const bool has_slash = text.find('/') != std::string::npos;
  const bool has_point = text.find('.') != std::string::npos;
  const bool has_exp =
      text.find('e') != std::string::npos || text.find('E') != std::string::npos;
  if (has_slash) {
    if (has_point || has_exp)
      throw std::invalid_argument("malformed rational literal: " + text);
    Rational q;
    if (q.set_str(text, 10) != 0)
      throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }

  // Decimal form: sign, digits, optional fraction, optional exponent.
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool any_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    digits += text[pos];
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      digits += text[pos];
      ++frac_digits;
      any_digit = true;
    }
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("malformed literal: " + text);
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos)
      exponent = exponent * 10 + (text[pos] - '0');
    if (exp_neg) exponent = -exponent;
  }
  if (!any_digit || pos != text.size())
    throw std::invalid_argument("malformed literal: " + text);

  mpz_class mantissa(digits.empty() ? "0" : digits, 10);
  if (negative) mantissa = -mantissa;
  const long net = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  Rational q = net < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return q;
}

// If q is the square of a rational, stores the nonnegative root and returns
// true; otherwise returns false.
inline bool exact_sqrt(const Rational& q, Rational* root) {
  if (q < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  *root = Rational(rn, rd);
  return true;
}

// Small shims so the metric/optimizer templates can run over either plain
// doubles or exact rationals.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<double> {
  static constexpr bool kExact = false;
  static double ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double mod1(double v) { return torusopt::mod1(v); }
};

template <>
struct scalar_ops<Rational> {
  static constexpr bool kExact = true;
  static Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  static Rational mod1(const Rational& v) { return torusopt::mod1(v); }
};

template <class S>
S abs_diff(const S& a, const S& b) {
  S d = a - b;
  if (d < S(0)) d = -d;
  return d;
}

}  // namespace torusopt

#endif  // TORUSOPT_RATIONAL_HPP_
