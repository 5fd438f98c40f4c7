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
// torusopt: provably optimal quasi-Monte Carlo point sets on the 2-torus.
//
// Subcommands:
//   optimize   sweep all ordering cells, report the best point set
//   certify    prove a candidate globally optimal with exact rational bounds
//   enumerate  count (or stream) the semi-canonical cell representatives
//   table      reproduce the optimum summary table for N = 1..n_max
//   eval       evaluate metrics for a point-set file
//   lattice    emit rank-1 or Fibonacci lattice point sets
//
// Exit codes: 0 success/certified, 1 refuted or runtime failure,
// 2 unresolved cells, 64 usage or input-format error.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "torusopt/torusopt.hpp"

namespace {

using namespace torusopt;

std::vector<int> parse_shard_prefix(const std::string& text) {
  std::vector<int> prefix;
  std::istringstream in(text);
  int v;
  while (in >> v) prefix.push_back(v);
  return prefix;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int cmd_optimize(int n, const std::string& gamma_text, double eps, double delta,
                 int max_iter, int threads, const std::string& out,
                 const std::string& shard) {
  const Gamma gamma = Gamma::parse(gamma_text);
  SearchParams params;
  params.eps = eps;
  params.delta = delta;
  params.max_iter = max_iter;
  params.threads = threads;
  params.shard_prefix = parse_shard_prefix(shard);
  const SearchOutcome outcome = optimize_search(n, gamma, params);

  if (!outcome.found) {
    std::cerr << "shard contains no cells\n";
    return 0;
  }
  Json summary = search_record_to_json(outcome.record);
  if (out.empty()) {
    summary.erase("points_file");
  } else {
    const std::filesystem::path dir = save_search_record(out, outcome.record);
    summary["output_dir"] = dir.string();
  }
  std::cout << summary.dump(2) << "\n";

  if (!outcome.failed.empty()) {
    std::cerr << outcome.failed.size() << " cell(s) did not solve:\n";
    for (const FailedCell& f : outcome.failed)
      std::cerr << "  " << format_permutation(f.sigma) << ": " << f.diagnostic << "\n";
    return 2;
  }
  return 0;
}

int cmd_certify(int n, const std::string& gamma_text, const std::string& candidate_file,
                double delta, double eps, int max_iter, int threads,
                const std::string& out) {
  const Gamma gamma = Gamma::parse(gamma_text);
  const PointSet<Rational> candidate = read_rational_points_file(candidate_file);
  CertifyParams params;
  params.delta = delta;
  params.eps = eps;
  params.max_iter = max_iter;
  params.threads = threads;
  params.progress_every = 10000;
  const Certificate cert = certify(n, gamma, candidate, params);

  Json j = certificate_to_json(cert);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) save_certificate(run_directory(out, n, gamma.value), cert);

  if (!cert.unresolved.empty()) {
    std::cerr << cert.unresolved.size() << " unresolved cell(s):\n";
    for (const CellBound& b : cert.unresolved)
      std::cerr << "  " << format_permutation(b.sigma) << ": " << b.note << "\n";
    return 2;
  }
  return cert.certified ? 0 : 1;
}

int cmd_enumerate(int n, bool list, const std::string& shard) {
  uint64_t count;
  if (list) {
    count = enumerate_semi_canonical(
        n,
        [](const Perm& sigma) {
          for (size_t i = 0; i < sigma.size(); ++i)
            std::cout << (i ? " " : "") << sigma[i];
          std::cout << "\n";
        },
        parse_shard_prefix(shard));
  } else {
    const std::function<void(const Perm&)> noop;
    count = enumerate_semi_canonical(n, noop, parse_shard_prefix(shard));
    std::cout << count << "\n";
  }
  return 0;
}

int cmd_table(int n_max, const std::string& out, bool emit_plot_data, int threads) {
  std::printf("%3s  %12s  %-12s  %-12s  %-8s  %s\n", "N", "cells", "wce(gamma=1)",
              "D2(gamma=6)", "lattice", "sigma*");
  for (int n = 1; n <= n_max; ++n) {
    SearchParams params;
    params.threads = threads;
    const SearchOutcome at1 = optimize_search(n, Gamma(Rational(1)), params);
    const SearchOutcome at6 = optimize_search(n, Gamma(Rational(6)), params);
    const std::optional<int> g = match_rank1_lattice(at1.record.points, 1e-9);
    const std::string lattice_mark = g ? "g=" + std::to_string(*g) : "";
    std::printf("%3d  %12" PRIu64 "  %-12s  %-12s  %-8s  %s\n", n,
                at1.record.cells_scanned, format_double(at1.record.wce_value).c_str(),
                format_double(at6.record.d2_value).c_str(), lattice_mark.c_str(),
                format_permutation(at1.record.sigma).c_str());
    if (emit_plot_data && !out.empty()) {
      for (const auto* rec : {&at1.record, &at6.record}) {
        const std::filesystem::path dir = std::filesystem::path(out) / "plots" /
                                          ("gamma=" + to_string(rec->gamma));
        std::filesystem::create_directories(dir);
        write_points_file((dir / ("N=" + std::to_string(n) + ".txt")).string(),
                          rec->points);
      }
    }
  }
  return 0;
}

int cmd_eval(const std::string& file, const std::string& gamma_text, bool exact) {
  const Gamma gamma = Gamma::parse(gamma_text);
  const PointSet<Rational> pr = read_rational_points_file(file);
  const PointSet<double> pd = to_double_set(pr);
  const int n = pd.size();

  std::cout << "n: " << n << "\n";
  std::cout << "gamma: " << to_string(gamma.value) << "\n";
  std::cout << "wce: " << format_double(wce(pd, gamma.d())) << "\n";
  std::cout << "d2: " << format_double(periodic_l2_discrepancy(pd)) << "\n";

  if (exact) {
    const Rational w2 = wce_squared(pr, gamma.value);
    const Rational d2 = discrepancy_squared(pr);
    std::cout << "wce_squared_exact: " << to_string(w2) << "\n";
    Rational root;
    if (exact_sqrt(w2, &root)) std::cout << "wce_exact: " << to_string(root) << "\n";
    std::cout << "d2_squared_exact: " << to_string(d2) << "\n";
    if (exact_sqrt(d2, &root)) std::cout << "d2_exact: " << to_string(root) << "\n";
  }

  const PointSet<double> normalized = normalize(pd);
  try {
    const Perm sigma = lattice_sigma(normalized);
    std::cout << "sigma: " << format_permutation(sigma) << "\n";
    std::vector<double> x, y;
    for (const auto& pt : normalized.pts) {
      x.push_back(pt.x);
      y.push_back(pt.y);
    }
    double residual = 0.0;
    if (n > 1 && gamma.value <= 6)
      for (double gcomp : cell_gradient(x, y, gamma.d(), sigma))
        residual = std::max(residual, std::fabs(gcomp));
    std::cout << "gradient_residual: " << format_double(residual) << "\n";
  } catch (const std::invalid_argument&) {
    std::cout << "sigma: ambiguous (tied coordinates)\n";
  }

  const std::optional<int> g = match_rank1_lattice(normalized, 1e-9);
  if (g)
    std::cout << "lattice: g=" << *g << "\n";
  else
    std::cout << "lattice: no\n";
  return 0;
}

int cmd_lattice(int n, int g, bool fibonacci, const std::string& out) {
  PointSet<Rational> p;
  if (fibonacci) {
    p = fibonacci_lattice_n(n);
  } else {
    if (g <= 0 && n > 1) throw std::invalid_argument("lattice: generator --g required");
    p = rank1_lattice(LatticeSpec(n, n > 1 ? g : 1));
  }
  if (out.empty())
    write_points(std::cout, p);
  else
    write_points_file(out, p);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal quasi-Monte Carlo point sets on the 2-torus"};
  app.require_subcommand(1);

  int n = 0, n_max = 8, g = 0, max_iter = 10000, threads = 0;
  double eps = 1e-12, delta = 0.0;
  std::string gamma = "1", out, shard, file;
  bool list = false, exact = false, fibonacci = false, emit_plot_data = false;

  auto* opt = app.add_subcommand("optimize", "Sweep every cell, report the optimum");
  opt->add_option("--n", n, "number of points")->required();
  opt->add_option("--gamma", gamma, "space weight, rational string");
  opt->add_option("--eps", eps, "gradient tolerance");
  opt->add_option("--delta", delta, "gradient offset");
  opt->add_option("--max-iter", max_iter, "iteration cap per cell");
  opt->add_option("--threads", threads, "worker threads (0 = all cores)");
  opt->add_option("--out", out, "output directory for record.json and points.txt");
  opt->add_option("--shard-prefix", shard, "restrict to cells with this sigma prefix");

  auto* cert = app.add_subcommand("certify", "Certify a candidate point set");
  cert->add_option("candidate", file, "candidate point-set file")->required();
  cert->add_option("--n", n, "number of points")->required();
  cert->add_option("--gamma", gamma, "space weight, rational string");
  cert->add_option("--delta", delta, "gradient offset (0 = automatic)");
  cert->add_option("--eps", eps, "gradient tolerance");
  cert->add_option("--max-iter", max_iter, "iteration cap per cell");
  cert->add_option("--threads", threads, "worker threads (0 = all cores)");
  cert->add_option("--out", out, "output directory for certificate.json");

  auto* enu = app.add_subcommand("enumerate", "Count semi-canonical cells");
  enu->add_option("--n", n, "number of points")->required();
  enu->add_flag("--list", list, "stream the permutations to stdout");
  enu->add_option("--shard-prefix", shard, "restrict to this sigma prefix");

  auto* tab = app.add_subcommand("table", "Optimum summary for N = 1..n-max");
  tab->add_option("--n-max", n_max, "largest N")->check(CLI::Range(1, 16));
  tab->add_option("--threads", threads, "worker threads (0 = all cores)");
  tab->add_option("--out", out, "output directory for plot data");
  tab->add_flag("--emit-plot-data", emit_plot_data, "write per-N optimal point files");

  auto* ev = app.add_subcommand("eval", "Evaluate metrics of a point-set file");
  ev->add_option("file", file, "point-set file")->required();
  ev->add_option("--gamma", gamma, "space weight, rational string");
  ev->add_flag("--exact", exact, "also print exact rational values");

  auto* lat = app.add_subcommand("lattice", "Emit a rank-1 lattice point set");
  lat->add_option("--n", n, "number of points")->required();
  lat->add_option("--g", g, "generator, coprime to N");
  lat->add_flag("--fibonacci", fibonacci,
                "use the Fibonacci generator (N must be Fibonacci)");
  lat->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (app.got_subcommand(opt))
      return cmd_optimize(n, gamma, eps, delta, max_iter, threads, out, shard);
    if (app.got_subcommand(cert))
      return cmd_certify(n, gamma, file, delta, eps, max_iter, threads, out);
    if (app.got_subcommand(enu)) return cmd_enumerate(n, list, shard);
    if (app.got_subcommand(tab)) return cmd_table(n_max, out, emit_plot_data, threads);
    if (app.got_subcommand(ev)) return cmd_eval(file, gamma, exact);
    if (app.got_subcommand(lat)) return cmd_lattice(n, g, fibonacci, out);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
