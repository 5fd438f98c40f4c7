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
// Persistence: search records and certificates as JSON, point sets in the
// plain text format. Rational values are serialized as "p/q" strings.
// Records are self-validating: loading recomputes the stored metrics from
// the point-set file and rejects drift beyond 1e-12.

#ifndef TORUSOPT_RECORDS_HPP_
#define TORUSOPT_RECORDS_HPP_

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "torusopt/certifier.hpp"
#include "torusopt/kernel.hpp"
#include "torusopt/pointset_io.hpp"
#include "torusopt/search.hpp"

namespace torusopt {

using Json = nlohmann::json;

// results/N=<n>/gamma=<p_q>/ — one self-contained directory per instance.
inline std::filesystem::path run_directory(const std::filesystem::path& out_root, int n,
                                           const Rational& gamma) {
  std::string g = to_string(gamma);
  for (char& c : g)
    if (c == '/') c = '_';
  return out_root / ("N=" + std::to_string(n)) / ("gamma=" + g);
}

inline Json search_record_to_json(const SearchRecord& rec) {
  Json j;
  j["n"] = rec.n;
  j["gamma"] = to_string(rec.gamma);
  j["sigma"] = rec.sigma;
  j["wce"] = rec.wce_value;
  j["d2"] = rec.d2_value;
  j["objective"] = rec.objective;
  j["cells_scanned"] = rec.cells_scanned;
  j["wall_seconds"] = rec.wall_seconds;
  j["version"] = rec.version;
  j["points_file"] = "points.txt";
  return j;
}

inline std::filesystem::path save_search_record(const std::filesystem::path& out_root,
                                                const SearchRecord& rec) {
  const std::filesystem::path dir = run_directory(out_root, rec.n, rec.gamma);
  std::filesystem::create_directories(dir);
  write_points_file((dir / "points.txt").string(), rec.points);
  std::ofstream out(dir / "record.json");
  if (!out) throw std::runtime_error("cannot write record.json under " + dir.string());
  out << search_record_to_json(rec).dump(2) << '\n';
  return dir;
}

// Loads and revalidates a record: the stored wce and d2 must match values
// recomputed from the stored point set to 1e-12.
inline SearchRecord load_search_record(const std::filesystem::path& dir) {
  std::ifstream in(dir / "record.json");
  if (!in) throw std::runtime_error("cannot open record.json under " + dir.string());
  Json j = Json::parse(in);
  SearchRecord rec;
  rec.n = j.at("n").get<int>();
  rec.gamma = parse_rational(j.at("gamma").get<std::string>());
  rec.sigma = j.at("sigma").get<Perm>();
  rec.wce_value = j.at("wce").get<double>();
  rec.d2_value = j.at("d2").get<double>();
  rec.objective = j.at("objective").get<double>();
  rec.cells_scanned = j.at("cells_scanned").get<uint64_t>();
  rec.wall_seconds = j.at("wall_seconds").get<double>();
  rec.version = j.at("version").get<std::string>();
  rec.points = read_points_file((dir / j.at("points_file").get<std::string>()).string());
  if (rec.points.size() != rec.n)
    throw std::runtime_error("record validation: point count mismatch");
  const double w = wce(rec.points, to_double(rec.gamma));
  const double d = periodic_l2_discrepancy(rec.points);
  if (std::fabs(w - rec.wce_value) > 1e-12 || std::fabs(d - rec.d2_value) > 1e-12)
    throw std::runtime_error("record validation: stored metrics do not match point set");
  return rec;
}

inline Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["gamma"] = to_string(cert.gamma);
  j["theta"] = to_string(cert.theta);
  j["candidate_sigma"] = cert.candidate_sigma;
  j["cells_total"] = cert.cells_total;
  j["cells_certified"] = cert.cells_excluded;
  j["delta"] = cert.delta;
  j["certified"] = cert.certified;
  j["runtime_seconds"] = cert.runtime_seconds;
  Json xi = Json::array();
  for (const CellBound& b : cert.xi) {
    Json e;
    e["sigma"] = b.sigma;
    e["beta"] = to_string(b.beta);
    xi.push_back(e);
  }
  j["xi"] = xi;
  Json unresolved = Json::array();
  for (const CellBound& b : cert.unresolved) {
    Json e;
    e["sigma"] = b.sigma;
    e["reason"] = b.note;
    unresolved.push_back(e);
  }
  j["unresolved"] = unresolved;
  return j;
}

inline void save_certificate(const std::filesystem::path& dir, const Certificate& cert) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "certificate.json");
  if (!out) throw std::runtime_error("cannot write certificate.json under " + dir.string());
  out << certificate_to_json(cert).dump(2) << '\n';
}

}  // namespace torusopt

#endif  // TORUSOPT_RECORDS_HPP_
