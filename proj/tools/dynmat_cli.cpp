// Copyright 2026 The Authors.
//
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

// Command-line front end: one solve per invocation, plus bench and verify.

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynmat/apps.hpp"
#include "dynmat/error.hpp"
#include "dynmat/intersection.hpp"
#include "dynmat/testkit.hpp"
#include "dynmat/union.hpp"

namespace {

using namespace dynmat;
using json = nlohmann::json;

struct Flags {
  int k = 2;
  std::uint64_t seed = 1;
  double epsilon = 0.0;
  std::string json_path;
  bool stats_only = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text << "\n";
}

void emit(const Flags& flags, const RunReport& report) {
  print_report(std::cout, report, flags.stats_only);
  if (!flags.json_path.empty()) write_file(flags.json_path, report_json(report));
}

struct BenchOptions {
  std::string problem = "matching";
  int n = 1024;
  int rank = 32;
  int vertices = 64;
  int trials = 4;
  int threads = 0;
};

// One random instance; returns (oracle ops, solution size).
std::pair<std::uint64_t, int> bench_trial(const BenchOptions& opt, int k, std::uint64_t seed) {
  testkit::Rng rng(seed);
  if (opt.problem == "matching") {
    std::vector<int> left(opt.n), right(opt.n);
    for (int e = 0; e < opt.n; ++e) {
      left[e] = rng.uniform(0, opt.rank - 1);
      right[e] = rng.uniform(0, opt.rank - 1);
    }
    const std::vector<int> unit(opt.rank, 1);
    const auto res = intersect(Matroid::partition(left, unit), Matroid::partition(right, unit));
    return {res.total().total_ops(), static_cast<int>(res.set.size())};
  }
  if (opt.problem == "kfold") {
    const Matroid m = Matroid::graphic(opt.vertices, testkit::random_edges(rng, opt.n, opt.vertices, false));
    const auto res = kfold_union(m, k);
    return {res.stats.total_ops(), static_cast<int>(res.set.size())};
  }
  fail(ErrorCode::kInvalidArgument, "bench problem is 'matching' or 'kfold'");
}

int run_bench(const Flags& flags, const BenchOptions& opt) {
  if (opt.n < 1 || opt.rank < 1 || opt.vertices < 1 || opt.trials < 1) {
    fail(ErrorCode::kInvalidArgument, "bench sizes must be positive");
  }
  const int threads = opt.threads > 0 ? opt.threads
                                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::pair<std::uint64_t, int>> results(opt.trials);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, opt.trials); ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next++) < opt.trials;) {
        try {
          results[i] = bench_trial(opt, flags.k, flags.seed + static_cast<std::uint64_t>(i));
        } catch (...) {
          std::lock_guard lock(error_mu);
          error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  double mean = 0;
  json trials = json::array();
  for (int i = 0; i < opt.trials; ++i) {
    mean += static_cast<double>(results[i].first) / opt.trials;
    trials.push_back({{"seed", flags.seed + i}, {"ops", results[i].first}, {"size", results[i].second}});
    if (!flags.stats_only) {
      std::cout << "trial " << i << ": ops=" << results[i].first << " size=" << results[i].second << "\n";
    }
  }
  std::cout << "bench " << opt.problem << ": n=" << opt.n << " trials=" << opt.trials
            << " mean ops=" << static_cast<std::uint64_t>(mean) << " wall=" << wall << "s\n";
  if (!flags.json_path.empty()) {
    json j = {{"problem", "bench-" + opt.problem}, {"n", opt.n},         {"rank", opt.rank},
              {"vertices", opt.vertices},          {"k", flags.k},       {"trials", trials},
              {"mean_ops", mean},                  {"wall_seconds", wall}};
    write_file(flags.json_path, j.dump(2));
  }
  return 0;
}

// Random small instances against exhaustive search.
int run_verify(const Flags& flags, int trials, int max_n) {
  if (max_n < 1 || max_n > 12) fail(ErrorCode::kInvalidArgument, "verify needs 1 <= n <= 12");
  testkit::Rng rng(flags.seed);
  int inter_bad = 0, union_bad = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = rng.uniform(1, max_n);
    const Matroid a = testkit::random_intersection_kind(rng, n);
    const Matroid b = testkit::random_intersection_kind(rng, n);
    const auto got = intersect(a, b);
    const bool ok = static_cast<int>(got.set.size()) == testkit::brute_intersection(a, b).size &&
                    a.is_independent(got.set) && b.is_independent(got.set);
    inter_bad += !ok;

    const int un = rng.uniform(1, std::min(max_n, 10));
    const int k = rng.uniform(1, 3);
    const Matroid m = testkit::random_matroid(rng, un);
    const auto u = kfold_union(m, k);
    union_bad += static_cast<int>(u.set.size()) != testkit::brute_union(m, k).size;
  }
  std::cout << "verify: " << trials << " intersection pairs, " << inter_bad << " mismatches; " << trials
            << " k-fold unions, " << union_bad << " mismatches\n";
  if (!flags.json_path.empty()) {
    json j = {{"problem", "verify"}, {"trials", trials}, {"seed", flags.seed},
              {"intersection_mismatches", inter_bad}, {"union_mismatches", union_bad}};
    write_file(flags.json_path, j.dump(2));
  }
  return inter_bad + union_bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matroid intersection and union solver"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--k", flags.k, "Number of classes for k-fold problems")->capture_default_str();
  app.add_option("--seed", flags.seed, "Seed for bench and verify")->capture_default_str();
  app.add_option("--epsilon", flags.epsilon, "Stop intersection once d_t > 1/epsilon")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--json", flags.json_path, "Write the run report as JSON");
  app.add_flag("--stats-only", flags.stats_only, "Print statistics without the solution");

  std::function<RunReport()> solve;
  std::function<int()> special;
  std::vector<std::string> files;

  auto graph_cmd = [&](const std::string& name, const std::string& help,
                       std::function<RunReport(const GraphInstance&)> fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("graph", files, "Graph file")->required()->expected(1)->check(CLI::ExistingFile);
    sub->callback([&, fn] { solve = [&, fn] { return fn(load_graph(files.at(0))); }; });
    return sub;
  };

  auto* inter = app.add_subcommand("intersect", "Intersection of two matroids given as JSON");
  inter->add_option("matroids", files)->required()->expected(2)->check(CLI::ExistingFile);
  inter->callback([&] {
    solve = [&] { return solve_intersect(load_matroid(files[0]), load_matroid(files[1]), flags.epsilon); };
  });

  auto* uni = app.add_subcommand("union", "Union of matroids given as JSON");
  uni->add_option("matroids", files)->required()->expected(1, 64)->check(CLI::ExistingFile);
  uni->callback([&] {
    solve = [&] {
      std::vector<Matroid> ms;
      for (const auto& f : files) ms.push_back(load_matroid(f));
      return solve_union(ms);
    };
  });

  auto* kfold = app.add_subcommand("kfold", "k-fold union of one matroid given as JSON");
  kfold->add_option("matroid", files)->required()->expected(1)->check(CLI::ExistingFile);
  kfold->callback([&] { solve = [&] { return solve_kfold(load_matroid(files[0]), flags.k); }; });

  graph_cmd("kdst", "k edge-disjoint spanning trees", [&](const GraphInstance& g) { return solve_kdst(g, flags.k); });
  graph_cmd("kforest", "k edge-disjoint forests of maximum size",
            [&](const GraphInstance& g) { return solve_kforest(g, flags.k); });
  graph_cmd("kpseudoforest", "k edge-disjoint pseudoforests of maximum size",
            [&](const GraphInstance& g) { return solve_kpseudoforest(g, flags.k); });
  int forests = 1, pseudoforests = 1;
  auto* mixed = graph_cmd("mixed", "f forests and p pseudoforests of maximum total size",
                          [&](const GraphInstance& g) { return solve_mixed(g, forests, pseudoforests); });
  mixed->add_option("--forests,-f", forests)->capture_default_str();
  mixed->add_option("--pseudoforests,-p", pseudoforests)->capture_default_str();
  graph_cmd("arboricity", "Fewest forests covering the edges", solve_arboricity);
  graph_cmd("pseudoarboricity", "Fewest pseudoforests covering the edges", solve_pseudoarboricity);
  graph_cmd("tree-packing", "Most edge-disjoint spanning trees", solve_tree_packing);
  graph_cmd("shannon", "Shannon switching game winner", solve_shannon);
  graph_cmd("colorful-st", "Spanning tree with distinct edge colors",
            [&](const GraphInstance& g) { return solve_colorful_st(g, flags.epsilon); });
  graph_cmd("bipartite-matching", "Maximum bipartite matching",
            [&](const GraphInstance& g) { return solve_bipartite_matching(g, flags.epsilon); });
  graph_cmd("forest-deadlines", "Largest forest built one edge per day within edge windows",
            [&](const GraphInstance& g) { return solve_forest_deadlines(g, flags.epsilon); });

  auto* gi = app.add_subcommand("graphic-intersect", "Common forest of two graphs with matched edge order");
  gi->add_option("graphs", files)->required()->expected(2)->check(CLI::ExistingFile);
  gi->callback([&] {
    solve = [&] { return solve_graphic_intersection(load_graph(files[0]), load_graph(files[1]), flags.epsilon); };
  });

  auto* si = app.add_subcommand("scheduling-intersect", "Jobs schedulable on two machines");
  si->add_option("jobs", files)->required()->expected(1)->check(CLI::ExistingFile);
  si->callback([&] { solve = [&] { return solve_scheduling_intersection(load_jobs(files[0]), flags.epsilon); }; });

  auto* li = app.add_subcommand("linear-intersect", "Row sets independent in two matrices");
  li->add_option("matrices", files)->required()->expected(2)->check(CLI::ExistingFile);
  li->callback([&] {
    solve = [&] { return solve_linear_intersection(load_matrix(files[0]), load_matrix(files[1]), flags.epsilon); };
  });

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Oracle-operation counts on random instances");
  b->add_option("--problem", bench.problem, "matching or kfold")->capture_default_str();
  b->add_option("--n", bench.n, "Ground set size")->capture_default_str();
  b->add_option("--rank", bench.rank, "Vertices per side for matching")->capture_default_str();
  b->add_option("--vertices", bench.vertices, "Graph vertices for kfold")->capture_default_str();
  b->add_option("--trials", bench.trials)->capture_default_str();
  b->add_option("--threads", bench.threads, "0 = hardware concurrency")->capture_default_str();
  b->callback([&] { special = [&] { return run_bench(flags, bench); }; });

  int verify_trials = 200, verify_n = 8;
  auto* v = app.add_subcommand("verify", "Random small instances against exhaustive search");
  v->add_option("--trials", verify_trials)->capture_default_str();
  v->add_option("--n", verify_n, "Largest ground set")->capture_default_str();
  v->callback([&] { special = [&] { return run_verify(flags, verify_trials, verify_n); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    if (special) return special();
    emit(flags, solve());
    return 0;
  } catch (const MatroidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
