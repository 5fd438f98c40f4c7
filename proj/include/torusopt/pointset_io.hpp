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
// Point-set file format: one point per line, two fields separated by a single
// space, each field a decimal literal or an exact rational "p/q". Lines
// starting with '#' are comments. UTF-8, LF line endings.

#ifndef TORUSOPT_POINTSET_IO_HPP_
#define TORUSOPT_POINTSET_IO_HPP_

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "torusopt/rational.hpp"
#include "torusopt/torus.hpp"

namespace torusopt {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

template <class S, class FieldParser>
PointSet<S> read_points_impl(std::istream& in, FieldParser parse_field) {
  PointSet<S> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string fx, fy, extra;
    if (!(fields >> fx >> fy)) throw ParseError(lineno, "expected two fields");
    if (fields >> extra) throw ParseError(lineno, "trailing content after two fields");
    S x, y;
    try {
      x = parse_field(fx);
      y = parse_field(fy);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    if (x < S(0) || x >= S(1)) throw ParseError(lineno, "coordinate outside [0,1)");
    if (y < S(0) || y >= S(1)) throw ParseError(lineno, "coordinate outside [0,1)");
    out.pts.push_back({x, y});
  }
  if (out.pts.empty()) throw ParseError(lineno, "no points in file");
  return out;
}

inline double parse_double_field(const std::string& field) {
  if (field.find('/') != std::string::npos) return to_double(parse_rational(field));
  size_t used = 0;
  double v;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number: " + field);
  }
  if (used != field.size()) throw std::invalid_argument("malformed number: " + field);
  return v;
}

}  // namespace detail

// Reads a point set with every coordinate converted exactly to a rational;
// decimal literals are scaled powers of ten, so "0.3" becomes 3/10.
inline PointSet<Rational> read_rational_points(std::istream& in) {
  return detail::read_points_impl<Rational>(
      in, [](const std::string& f) { return parse_rational(f); });
}

// Reads a point set as doubles; decimal fields round-trip bit-exactly.
inline PointSet<double> read_points(std::istream& in) {
  return detail::read_points_impl<double>(in, detail::parse_double_field);
}

inline PointSet<Rational> read_rational_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_rational_points(in);
}

inline PointSet<double> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_points(in);
}

inline void write_points(std::ostream& out, const PointSet<double>& p) {
  char buf[64];
  for (const auto& pt : p.pts) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", pt.x, pt.y);
    out << buf;
  }
}

inline void write_points(std::ostream& out, const PointSet<Rational>& p) {
  for (const auto& pt : p.pts)
    out << to_string(pt.x) << ' ' << to_string(pt.y) << '\n';
}

template <class S>
void write_points_file(const std::string& path, const PointSet<S>& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_points(out, p);
}

}  // namespace torusopt

#endif  // TORUSOPT_POINTSET_IO_HPP_
