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

#ifndef DYNMAT_TESTKIT_HPP_
#define DYNMAT_TESTKIT_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dynmat/gammoid.hpp"
#include "dynmat/matroid.hpp"

namespace dynmat::testkit {

// Seeded source whose draws do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next() % i]);
  }

 private:
  std::mt19937_64 engine_;
};

// ------------------------------------------------------------ generators

Matroid random_partition(Rng& rng, int n, int colors, int max_capacity);
Matroid random_graphic(Rng& rng, int n, int vertices);
Matroid random_bicircular(Rng& rng, int n, int vertices);
Matroid random_scheduling(Rng& rng, int n, int max_deadline);
Matroid random_convex_transversal(Rng& rng, int n, int slots);
Matroid random_linear(Rng& rng, int n, int cols, std::uint64_t prime);
Matroid random_gammoid(Rng& rng, int n);
Matroid random_uniform(Rng& rng, int n);
// Enumerates the independent sets of another random matroid.
Matroid random_explicit(Rng& rng, int n);
// Any of the kinds above.
Matroid random_matroid(Rng& rng, int n);
// Partition / graphic / scheduling / explicit, the intersection test mix.
Matroid random_intersection_kind(Rng& rng, int n);

std::vector<Edge> random_edges(Rng& rng, int m, int vertices, bool allow_loops);
std::vector<Edge> complete_graph(int vertices);

// Random independent set grown greedily over a shuffled order.
std::vector<Element> random_independent(Rng& rng, const Matroid& m, double keep);
std::vector<Element> greedy_basis(const Matroid& m, std::span<const Element> order);

// ------------------------------------------------------------ brute force

struct BruteIntersection {
  int size = 0;
  std::vector<Element> witness;
};

struct BruteUnion {
  int size = 0;
  std::vector<std::vector<Element>> classes;
};

// Independence table of every subset (bit i = element i). n <= 20.
std::vector<char> independence_table(const Matroid& m);

BruteIntersection brute_intersection(const Matroid& m1, const Matroid& m2);
BruteUnion brute_union(const Matroid& m, int k);
BruteUnion brute_union_general(const std::vector<Matroid>& matroids);

// ------------------------------------------------------------ exchange graph

struct ExchangeEdge {
  Element from;
  Element to;
  friend bool operator==(const ExchangeEdge&, const ExchangeEdge&) = default;
  friend bool operator<(const ExchangeEdge& a, const ExchangeEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  }
};

// Every edge of the exchange graph of s, found by direct independence tests.
// With drop_implied, an exchange edge into y (from S) or out of y (into S) is
// omitted when s + y is already independent in the matroid defining it.
std::vector<ExchangeEdge> exchange_graph_explicit(const Matroid& m1, const Matroid& m2,
                                                  std::span<const Element> s,
                                                  bool drop_implied = false);

// BFS distance from kSource over an explicit edge list; index n holds the
// distance to kSink. -1 means unreachable.
std::vector<int> explicit_distances(const std::vector<ExchangeEdge>& edges, int n);

// True when some shortest-length (s,t) path passes through element x.
bool on_path_of_length(const std::vector<ExchangeEdge>& edges, int n, Element x, int length);

// ------------------------------------------------------------ gammoid suite

struct GammoidCase {
  BipartiteDigraph graph;
  std::vector<int> starts;
  std::vector<int> ends;
};

GammoidCase random_gammoid_case(Rng& rng, int left, int right, double density, int starts,
                                int ends);

// Maximum number of vertex-disjoint paths from starts to ends.
int vertex_disjoint_paths(const BipartiteDigraph& g, const std::vector<int>& starts,
                          const std::vector<int>& ends);

}  // namespace dynmat::testkit

#endif  // DYNMAT_TESTKIT_HPP_
