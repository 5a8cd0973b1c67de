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

// Acceptance gate: one PASS/FAIL line per criterion. Every threshold is a
// named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "dynmat/apps.hpp"
#include "dynmat/dynamic_basis.hpp"
#include "dynmat/gammoid.hpp"
#include "dynmat/intersection.hpp"
#include "dynmat/oracle.hpp"
#include "dynmat/testkit.hpp"
#include "dynmat/union.hpp"

namespace {

using namespace dynmat;
using testkit::Rng;
using Clock = std::chrono::steady_clock;

// 1
constexpr int kIntersectTrials = 1000;
constexpr int kIntersectMaxN = 12;
constexpr double kIntersectSeconds = 60;
// 2
constexpr int kUnionTrials = 500;
constexpr int kUnionMaxN = 10;
constexpr int kUnionMaxK = 3;
constexpr double kUnionSeconds = 60;
// 3
constexpr int kMatchingRank = 64;
constexpr int kMatchingSizes[] = {256, 1024, 4096};
constexpr int kMatchingSeeds = 3;
constexpr double kMatchingRatioSpread = 4.0;
constexpr int kMatchingFixedN = 4096;
constexpr int kMatchingLowRank = 32;
constexpr int kMatchingHighRank = 128;
constexpr double kMatchingSeconds = 300;
// 4
constexpr int kSparseVertices = 64;
constexpr int kSparseEdges[] = {512, 2048, 8192};
constexpr int kSparseK = 2;
constexpr int kSparseSeeds = 3;
constexpr double kSparseGrowth = 1.5;
constexpr double kSparseSeconds = 300;
// 5
constexpr int kTreesMinK = 2;
constexpr int kTreesMaxK = 8;
constexpr double kTreesSeconds = 5;
// 6
constexpr int kArbExhaustiveVertices = 6;
constexpr int kArbCompleteMax = 12;
constexpr double kArbSeconds = 120;
// 7
constexpr int kBasisInstances = 200;
constexpr int kBasisMaxN = 4096;
constexpr double kBasisOpsFactor = 50;
constexpr double kBasisSeconds = 180;
// 8
constexpr int kPathInstances = 100;
constexpr double kPathFactor = 20;
// 10
constexpr int kGammoidInstances = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome intersection_exactness() {
  const auto start = Clock::now();
  Rng rng(1001);
  int bad = 0;
  for (int t = 0; t < kIntersectTrials; ++t) {
    const int n = rng.uniform(0, kIntersectMaxN);
    const Matroid a = testkit::random_intersection_kind(rng, n);
    const Matroid b = testkit::random_intersection_kind(rng, n);
    const auto got = intersect(a, b);
    const bool ok = static_cast<int>(got.set.size()) == testkit::brute_intersection(a, b).size &&
                    a.is_independent(got.set) && b.is_independent(got.set);
    bad += !ok;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < kIntersectSeconds,
          std::to_string(kIntersectTrials - bad) + "/" + std::to_string(kIntersectTrials) + " exact, " +
              fmt("%.1fs", secs)};
}

Matroid union_member(Rng& rng, int n) {
  if (rng.chance(0.5)) return testkit::random_partition(rng, n, rng.uniform(1, 4), 2);
  return testkit::random_graphic(rng, n, rng.uniform(2, 6));
}

Outcome union_exactness() {
  const auto start = Clock::now();
  Rng rng(2002);
  int bad = 0;
  for (int t = 0; t < kUnionTrials; ++t) {
    const int n = rng.uniform(1, kUnionMaxN);
    const int k = rng.uniform(1, kUnionMaxK);
    const Matroid m = union_member(rng, n);
    const int expect = testkit::brute_union(m, k).size;
    const auto kf = kfold_union(m, k);
    const auto copies = matroid_union(std::vector<Matroid>(k, m));
    std::vector<Matroid> mixed;
    for (int i = 0; i < k; ++i) mixed.push_back(union_member(rng, n));
    const auto general = matroid_union(mixed);
    const bool ok = static_cast<int>(kf.set.size()) == expect && static_cast<int>(copies.set.size()) == expect &&
                    static_cast<int>(general.set.size()) == testkit::brute_union_general(mixed).size;
    bad += !ok;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < kUnionSeconds,
          std::to_string(kUnionTrials - bad) + "/" + std::to_string(kUnionTrials) +
              " exact (k-fold, copies, mixed), " + fmt("%.1fs", secs)};
}

// Mean oracle operations of a random bipartite matching with rank vertices per side.
double matching_ops(int n, int rank, std::uint64_t seed) {
  double total = 0;
  for (int s = 0; s < kMatchingSeeds; ++s) {
    Rng rng(seed + s);
    std::vector<int> left(n), right(n);
    for (int e = 0; e < n; ++e) {
      left[e] = rng.uniform(0, rank - 1);
      right[e] = rng.uniform(0, rank - 1);
    }
    const std::vector<int> unit(rank, 1);
    total += static_cast<double>(
        intersect(Matroid::partition(left, unit), Matroid::partition(right, unit)).total().total_ops());
  }
  return total / kMatchingSeeds;
}

Outcome matching_scaling() {
  const auto start = Clock::now();
  std::vector<double> ratios;
  std::string detail = "ops/(n sqrt(r) log2^2 n):";
  for (int n : kMatchingSizes) {
    const double lg = std::log2(n);
    ratios.push_back(matching_ops(n, kMatchingRank, 3000 + n) / (n * std::sqrt(kMatchingRank) * lg * lg));
    detail += fmt(" %.3f", ratios.back());
  }
  const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                        *std::min_element(ratios.begin(), ratios.end());
  const double low = matching_ops(kMatchingFixedN, kMatchingLowRank, 3100);
  const double high = matching_ops(kMatchingFixedN, kMatchingHighRank, 3200);
  const double growth = high / low;
  const double linear = static_cast<double>(kMatchingHighRank) / kMatchingLowRank;
  const double secs = seconds_since(start);
  detail += fmt(", spread %.2f", spread) + fmt(", r 32->128 growth %.2f", growth) +
            fmt(" (linear %.0f)", linear) + fmt(", %.1fs", secs);
  return {spread < kMatchingRatioSpread && growth < linear && secs < kMatchingSeconds, detail};
}

Outcome sparsification_payoff() {
  const auto start = Clock::now();
  std::vector<double> beyond;
  std::string detail = "ops beyond init:";
  for (int m : kSparseEdges) {
    double total = 0;
    for (int s = 0; s < kSparseSeeds; ++s) {
      Rng rng(4000 + 17 * m + s);
      const Matroid g = Matroid::graphic(kSparseVertices, testkit::random_edges(rng, m, kSparseVertices, false));
      const auto res = kfold_union(g, kSparseK);
      total += static_cast<double>(res.stats.total_ops()) - static_cast<double>(res.init_ops);
    }
    beyond.push_back(total / kSparseSeeds);
    detail += fmt(" %.0f", beyond.back());
  }
  const double growth = beyond.back() / beyond.front();
  const double secs = seconds_since(start);
  detail += fmt(", growth %.2f", growth) + fmt(" for 16x edges, %.1fs", secs);
  return {growth < kSparseGrowth && secs < kSparseSeconds, detail};
}

Outcome disjoint_trees() {
  bool ok = true;
  std::string detail;
  for (int k = kTreesMinK; k <= kTreesMaxK; ++k) {
    const auto start = Clock::now();
    GraphInstance g;
    g.num_vertices = 2 * k;
    g.edges = testkit::complete_graph(2 * k);
    const int m = static_cast<int>(g.edges.size());
    g.color.assign(m, std::nullopt);
    g.weight.assign(m, std::nullopt);
    g.release.assign(m, std::nullopt);
    g.deadline.assign(m, std::nullopt);
    const auto rep = solve_kdst(g, k);
    // Independent check: k classes, disjoint, each a spanning tree.
    std::vector<char> used(m, 0);
    bool this_ok = rep.feasible.value_or(false) && static_cast<int>(rep.partition.size()) == k;
    for (const auto& t : rep.partition) {
      this_ok = this_ok && is_spanning_tree(2 * k, g.edges, t);
      for (Element e : t) {
        this_ok = this_ok && !used[e];
        used[e] = 1;
      }
    }
    const double secs = seconds_since(start);
    this_ok = this_ok && secs < kTreesSeconds;
    ok = ok && this_ok;
    detail += "K" + std::to_string(2 * k) + fmt(":%.2fs", secs) + (this_ok ? "" : "(bad)") + " ";
  }
  return {ok, detail};
}

int nash_williams(int nv, const std::vector<Edge>& edges) {
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < 2) continue;
    int inside = 0;
    for (const Edge& e : edges) inside += (mask >> e.u & 1u) && (mask >> e.v & 1u);
    best = std::max(best, (inside + size - 2) / (size - 1));
  }
  return best;
}

Outcome arboricity() {
  const auto start = Clock::now();
  int graphs = 0, bad = 0;
  auto check = [&](int nv, const std::vector<Edge>& edges) {
    ++graphs;
    const int got = covering(Matroid::graphic(nv, edges)).value;
    bad += got != nash_williams(nv, edges);
  };
  for (int nv = 1; nv <= kArbExhaustiveVertices; ++nv) {
    const auto pairs = testkit::complete_graph(nv);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) edges.push_back(pairs[i]);
      check(nv, edges);
    }
  }
  for (int nv = kArbExhaustiveVertices + 1; nv <= kArbCompleteMax; ++nv) check(nv, testkit::complete_graph(nv));
  const double secs = seconds_since(start);
  return {bad == 0 && secs < kArbSeconds,
          std::to_string(graphs - bad) + "/" + std::to_string(graphs) + " graphs match, " + fmt("%.1fs", secs)};
}

// Greedy basis of the alive elements in index order, by plain union-find or counting.
std::vector<Element> reference_greedy(const Matroid& m, const std::vector<char>& alive) {
  std::vector<Element> order;
  for (Element e = 0; e < static_cast<Element>(alive.size()); ++e)
    if (alive[e]) order.push_back(e);
  return testkit::greedy_basis(m, order);
}

Outcome decremental_basis() {
  const auto start = Clock::now();
  Rng rng(7007);
  int mismatches = 0, over_budget = 0;
  double worst = 0;
  for (int inst = 0; inst < kBasisInstances; ++inst) {
    // Every tenth instance is large; the rest keep full greedy rechecks cheap.
    const bool large = inst % 10 == 0;
    const int n = large ? rng.uniform(kBasisMaxN / 2, kBasisMaxN) : rng.uniform(2, 200);
    Matroid m = [&] {
      switch (rng.uniform(0, large ? 1 : 3)) {
        case 0: return testkit::random_graphic(rng, n, rng.uniform(2, std::max(2, n / 8)));
        case 1: return testkit::random_partition(rng, n, rng.uniform(1, std::max(1, n / 16)), 4);
        case 2: return testkit::random_bicircular(rng, n, rng.uniform(1, std::max(1, n / 8)));
        default: return testkit::random_linear(rng, n, rng.uniform(1, 8), kDefaultPrime);
      }
    }();
    DynamicOracle oracle(m);
    std::vector<Element> all(n);
    std::iota(all.begin(), all.end(), 0);
    DynamicBasis basis(oracle, all);
    const int r = static_cast<int>(basis.basis().size());
    std::vector<char> alive(n, 1);
    std::vector<Element> order = all;
    rng.shuffle(order);
    const auto before = oracle.stats().total_ops();
    bool ok = true;
    for (size_t i = 0; i < order.size(); ++i) {
      alive[order[i]] = 0;
      basis.erase(order[i]);
      // Large instances are rechecked at 64 evenly spaced points plus the end.
      if (!large || i % std::max<size_t>(1, order.size() / 64) == 0 || i + 1 == order.size()) {
        auto got = basis.basis();
        std::sort(got.begin(), got.end());
        ok = ok && got == reference_greedy(m, alive);
      }
    }
    mismatches += !ok;
    const double per = static_cast<double>(oracle.stats().total_ops() - before) / n;
    const double bound = kBasisOpsFactor * std::sqrt(std::max(r, 1)) * std::log2(std::max(n, 2));
    worst = std::max(worst, per / bound);
    over_budget += per > bound;
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && over_budget == 0 && secs < kBasisSeconds,
          std::to_string(kBasisInstances - mismatches) + "/" + std::to_string(kBasisInstances) +
              " match greedy, worst mean ops per deletion / bound " + fmt("%.3f", worst) + ", " +
              fmt("%.1fs", secs)};
}

Outcome blocking_structure() {
  Rng rng(8008);
  int increasing_bad = 0, length_bad = 0, done = 0;
  double worst = 0;
  while (done < kPathInstances) {
    const int n = rng.uniform(20, 120);
    Matroid a = testkit::random_intersection_kind(rng, std::min(n, 12));
    Matroid b = a;
    switch (rng.uniform(0, 2)) {
      case 0:
        a = testkit::random_partition(rng, n, rng.uniform(2, 20), 3);
        b = testkit::random_graphic(rng, n, rng.uniform(3, 30));
        break;
      case 1:
        a = testkit::random_graphic(rng, n, rng.uniform(3, 30));
        b = testkit::random_scheduling(rng, n, rng.uniform(2, n));
        break;
      default:
        a = testkit::random_partition(rng, n, rng.uniform(2, 30), 1);
        b = testkit::random_partition(rng, n, rng.uniform(2, 30), 1);
        break;
    }
    const int r = std::min(a.full_rank(), b.full_rank());
    if (r < 2) continue;
    ++done;
    const auto res = intersect(a, b);
    for (size_t i = 1; i < res.phases.size(); ++i) increasing_bad += res.phases[i].d_t <= res.phases[i - 1].d_t;
    const auto base = intersect_baseline(a, b);
    const long long sum = std::accumulate(base.path_lengths.begin(), base.path_lengths.end(), 0LL);
    const double bound = kPathFactor * r * std::log(r);
    worst = std::max(worst, sum / bound);
    length_bad += sum > bound;
  }
  return {increasing_bad == 0 && length_bad == 0,
          "d_t violations " + std::to_string(increasing_bad) + ", path-sum violations " +
              std::to_string(length_bad) + ", worst sum/bound " + fmt("%.3f", worst)};
}

Outcome deadlines_example() {
  // a=0 b=1 c=2 d=3; two parallel a-b edges with deadlines 1 and 3.
  GraphInstance g;
  g.num_vertices = 4;
  g.edges = {{0, 1}, {0, 1}, {1, 2}, {2, 3}};
  g.color.assign(4, std::nullopt);
  g.weight.assign(4, std::nullopt);
  g.release.assign(4, std::nullopt);
  g.deadline = {1, 3, 2, 2};
  const auto rep = solve_forest_deadlines(g);
  const std::vector<Interval> windows = {{1, 1}, {1, 3}, {1, 2}, {1, 2}};
  const bool ok = rep.size == 3 && is_forest(4, g.edges, rep.solution) &&
                  rep.schedule.size() == 3 && is_valid_schedule(windows, rep.schedule);
  std::string detail = "size " + std::to_string(rep.size) + ", schedule";
  for (const auto& s : rep.schedule) detail += " day" + std::to_string(s.day) + ":e" + std::to_string(s.element + 1);
  return {ok, detail};
}

Outcome gammoid_suite() {
  Rng rng(10010);
  int edge_bad = 0, count_bad = 0;
  for (int t = 0; t < kGammoidInstances; ++t) {
    const auto c = testkit::random_gammoid_case(rng, rng.uniform(1, 4), rng.uniform(2, 7), 0.35,
                                                rng.uniform(1, 3), rng.uniform(1, 3));
    const GammoidPair p = gammoid_from_bipartite(c.graph, c.starts, c.ends);
    std::vector<testkit::ExchangeEdge> expect;
    for (const Edge& a : c.graph.arcs) expect.push_back({a.u, a.v});
    for (int a : c.starts) expect.push_back({kSource, a});
    for (int b : c.ends) expect.push_back({b, kSink});
    std::sort(expect.begin(), expect.end());
    edge_bad += testkit::exchange_graph_explicit(p.first, p.second, p.candidate, true) != expect;

    // Augment from the left side until no path remains.
    DynamicOracle o1(p.first), o2(p.second);
    std::vector<Element> s = p.candidate;
    int augmentations = 0;
    for (;;) {
      const LayeredGraph layers = build_layers(o1, o2, s);
      if (!layers.reachable()) break;
      int got = 0;
      s = blocking_flow_phase(o1, o2, s, layers, std::min(p.first.full_rank(), p.second.full_rank()), nullptr,
                              &got);
      augmentations += got;
    }
    count_bad += augmentations != testkit::vertex_disjoint_paths(c.graph, c.starts, c.ends);
  }
  return {edge_bad == 0 && count_bad == 0,
          "exchange-graph mismatches " + std::to_string(edge_bad) + ", augmentation-count mismatches " +
              std::to_string(count_bad) + " of " + std::to_string(kGammoidInstances)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"intersection exactness", intersection_exactness},
      {"union exactness", union_exactness},
      {"matching operation scaling", matching_scaling},
      {"union sparsification payoff", sparsification_payoff},
      {"k disjoint spanning trees", disjoint_trees},
      {"arboricity", arboricity},
      {"decremental basis", decremental_basis},
      {"blocking-flow structure", blocking_structure},
      {"deadlines example", deadlines_example},
      {"gammoid suite", gammoid_suite},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
