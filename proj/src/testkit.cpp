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

#include "dynmat/testkit.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>

#include "dynmat/error.hpp"

namespace dynmat::testkit {

namespace {

std::vector<Element> members(std::uint32_t mask) {
  std::vector<Element> out;
  for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

void require_small(int n, int limit) {
  if (n > limit) fail(ErrorCode::kGroundSetTooLarge, std::to_string(n));
}

}  // namespace

// ------------------------------------------------------------ generators

std::vector<Edge> random_edges(Rng& rng, int m, int vertices, bool allow_loops) {
  std::vector<Edge> edges;
  edges.reserve(m);
  while (static_cast<int>(edges.size()) < m) {
    const int u = rng.uniform(0, vertices - 1);
    const int v = rng.uniform(0, vertices - 1);
    if (u == v && (!allow_loops || vertices == 1)) {
      if (vertices == 1 && allow_loops) edges.push_back({u, v});
      if (vertices == 1 && !allow_loops) fail(ErrorCode::kInvalidArgument, "no loop-free edge");
      continue;
    }
    edges.push_back({u, v});
  }
  return edges;
}

std::vector<Edge> complete_graph(int vertices) {
  std::vector<Edge> edges;
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v) edges.push_back({u, v});
  return edges;
}

Matroid random_partition(Rng& rng, int n, int colors, int max_capacity) {
  std::vector<int> color(n);
  for (int& c : color) c = rng.uniform(0, colors - 1);
  std::vector<int> cap(colors);
  for (int& c : cap) c = rng.uniform(0, max_capacity);
  return Matroid::partition(std::move(color), std::move(cap));
}

Matroid random_graphic(Rng& rng, int n, int vertices) {
  return Matroid::graphic(vertices, random_edges(rng, n, vertices, false));
}

Matroid random_bicircular(Rng& rng, int n, int vertices) {
  return Matroid::bicircular(vertices, random_edges(rng, n, vertices, true));
}

Matroid random_scheduling(Rng& rng, int n, int max_deadline) {
  std::vector<int> dl(n);
  for (int& d : dl) d = rng.uniform(1, max_deadline);
  return Matroid::scheduling(std::move(dl));
}

Matroid random_convex_transversal(Rng& rng, int n, int slots) {
  std::vector<Interval> iv(n);
  for (Interval& x : iv) {
    x.first = rng.uniform(1, slots);
    x.last = rng.uniform(x.first, slots);
  }
  return Matroid::convex_transversal(std::move(iv), slots);
}

Matroid random_linear(Rng& rng, int n, int cols, std::uint64_t prime) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(cols));
  const int hi = prime == 0 || prime > 5 ? 2 : static_cast<int>(prime) - 1;
  for (auto& r : rows)
    for (auto& x : r) x = rng.uniform(prime == 0 || prime > 5 ? -hi : 0, hi);
  return Matroid::linear(std::move(rows), prime);
}

Matroid random_gammoid(Rng& rng, int n) {
  std::vector<Edge> arcs;
  for (int i = 0; i < 2 * n; ++i) {
    const int u = rng.uniform(0, n - 1), v = rng.uniform(0, n - 1);
    if (u != v) arcs.push_back({u, v});
  }
  std::vector<int> sources;
  for (int x = 0; x < n; ++x)
    if (rng.chance(0.3)) sources.push_back(x);
  return Matroid::gammoid(n, std::move(arcs), std::move(sources));
}

Matroid random_uniform(Rng& rng, int n) { return Matroid::uniform(n, rng.uniform(0, n)); }

Matroid random_explicit(Rng& rng, int n) {
  require_small(n, 16);
  Matroid base = [&] {
    switch (rng.uniform(0, 3)) {
      case 0: return random_graphic(rng, n, std::max(2, n / 2 + 1));
      case 1: return random_partition(rng, n, 3, 3);
      case 2: return random_scheduling(rng, n, std::max(1, n / 2));
      default: return random_linear(rng, n, 3, 3);
    }
  }();
  const auto table = independence_table(base);
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < table.size(); ++m)
    if (table[m]) masks.push_back(m);
  return Matroid::explicit_family(n, std::move(masks));
}

Matroid random_matroid(Rng& rng, int n) {
  switch (rng.uniform(0, 8)) {
    case 0: return random_partition(rng, n, rng.uniform(1, 4), 3);
    case 1: return random_graphic(rng, n, rng.uniform(2, std::max(2, n)));
    case 2: return random_bicircular(rng, n, rng.uniform(1, std::max(1, n)));
    case 3: return random_scheduling(rng, n, rng.uniform(1, std::max(1, n)));
    case 4: return random_convex_transversal(rng, n, rng.uniform(1, std::max(1, n)));
    case 5: return random_linear(rng, n, rng.uniform(1, 5), rng.chance(0.5) ? 2 : kDefaultPrime);
    case 6: return random_gammoid(rng, n);
    case 7: return random_uniform(rng, n);
    default: return n <= 16 ? random_explicit(rng, n) : random_uniform(rng, n);
  }
}

Matroid random_intersection_kind(Rng& rng, int n) {
  switch (rng.uniform(0, 3)) {
    case 0: return random_partition(rng, n, rng.uniform(1, 5), 3);
    case 1: return random_graphic(rng, n, rng.uniform(2, std::max(2, n)));
    case 2: return random_scheduling(rng, n, rng.uniform(1, std::max(1, n)));
    default: return random_explicit(rng, n);
  }
}

std::vector<Element> random_independent(Rng& rng, const Matroid& m, double keep) {
  std::vector<Element> order(m.ground_size());
  for (int i = 0; i < m.ground_size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Element> s;
  for (Element e : order) {
    if (!rng.chance(keep)) continue;
    s.push_back(e);
    if (!m.is_independent(s)) s.pop_back();
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Element> greedy_basis(const Matroid& m, std::span<const Element> order) {
  std::vector<Element> s;
  for (Element e : order) {
    s.push_back(e);
    if (!m.is_independent(s)) s.pop_back();
  }
  std::sort(s.begin(), s.end());
  return s;
}

// ------------------------------------------------------------ brute force

std::vector<char> independence_table(const Matroid& m) {
  const int n = m.ground_size();
  require_small(n, 20);
  const std::uint32_t full = 1u << n;
  std::vector<char> indep(full, 0);
  indep[0] = 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    // Skip supersets of dependent sets.
    if (!indep[mask & (mask - 1)]) continue;
    indep[mask] = m.is_independent(members(mask)) ? 1 : 0;
  }
  return indep;
}

BruteIntersection brute_intersection(const Matroid& m1, const Matroid& m2) {
  if (m1.ground_size() != m2.ground_size()) fail(ErrorCode::kGroundSetMismatch);
  const auto a = independence_table(m1);
  const auto b = independence_table(m2);
  BruteIntersection best;
  std::uint32_t arg = 0;
  for (std::uint32_t mask = 0; mask < a.size(); ++mask) {
    if (a[mask] && b[mask] && std::popcount(mask) > best.size) {
      best.size = std::popcount(mask);
      arg = mask;
    }
  }
  best.witness = members(arg);
  return best;
}

BruteUnion brute_union_general(const std::vector<Matroid>& matroids) {
  if (matroids.empty()) return {};
  const int n = matroids.front().ground_size();
  for (const Matroid& m : matroids)
    if (m.ground_size() != n) fail(ErrorCode::kGroundSetMismatch);
  require_small(n, 16);
  const std::uint32_t full = 1u << n;
  const size_t k = matroids.size();
  // cover[j][mask]: mask splits into independent sets of the first j matroids;
  // choice[j][mask] records the part taken by matroid j.
  std::vector<std::vector<char>> cover(k + 1, std::vector<char>(full, 0));
  std::vector<std::vector<std::uint32_t>> choice(k + 1, std::vector<std::uint32_t>(full, 0));
  cover[0][0] = 1;
  for (size_t j = 1; j <= k; ++j) {
    const auto indep = independence_table(matroids[j - 1]);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      for (std::uint32_t part = mask;; part = (part - 1) & mask) {
        if (indep[part] && cover[j - 1][mask & ~part]) {
          cover[j][mask] = 1;
          choice[j][mask] = part;
          break;
        }
        if (part == 0) break;
      }
    }
  }
  BruteUnion best;
  std::uint32_t arg = 0;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (cover[k][mask] && std::popcount(mask) > best.size) {
      best.size = std::popcount(mask);
      arg = mask;
    }
  }
  best.classes.resize(k);
  for (size_t j = k; j >= 1; --j) {
    best.classes[j - 1] = members(choice[j][arg]);
    arg &= ~choice[j][arg];
  }
  return best;
}

BruteUnion brute_union(const Matroid& m, int k) {
  return brute_union_general(std::vector<Matroid>(static_cast<size_t>(k), m));
}

// ------------------------------------------------------------ exchange graph

std::vector<ExchangeEdge> exchange_graph_explicit(const Matroid& m1, const Matroid& m2,
                                                  std::span<const Element> s, bool drop_implied) {
  const int n = m1.ground_size();
  if (m2.ground_size() != n) fail(ErrorCode::kGroundSetMismatch);
  require_small(n, 20);
  std::vector<char> in_s(n, 0);
  for (Element e : s) in_s[e] = 1;
  std::vector<Element> base(s.begin(), s.end());
  std::vector<ExchangeEdge> edges;
  auto plus = [&](const Matroid& m, Element y) {
    auto t = base;
    t.push_back(y);
    return m.is_independent(t);
  };
  auto swap = [&](const Matroid& m, Element x, Element y) {
    std::vector<Element> t;
    for (Element e : base)
      if (e != x) t.push_back(e);
    t.push_back(y);
    return m.is_independent(t);
  };
  for (Element y = 0; y < n; ++y) {
    if (in_s[y]) continue;
    const bool free1 = plus(m1, y);
    const bool free2 = plus(m2, y);
    if (free1) edges.push_back({kSource, y});
    if (free2) edges.push_back({y, kSink});
    for (Element x : base) {
      if (swap(m1, x, y) && !(drop_implied && free1)) edges.push_back({x, y});
      if (swap(m2, x, y) && !(drop_implied && free2)) edges.push_back({y, x});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

int node_index(Element e, int n) {
  if (e == kSource) return n + 1;
  if (e == kSink) return n;
  return e;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> q{start};
  dist[start] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<int> explicit_distances(const std::vector<ExchangeEdge>& edges, int n) {
  std::vector<std::vector<int>> adj(n + 2);
  for (const auto& e : edges) adj[node_index(e.from, n)].push_back(node_index(e.to, n));
  auto dist = bfs(adj, n + 1);
  dist.resize(n + 1);
  return dist;
}

bool on_path_of_length(const std::vector<ExchangeEdge>& edges, int n, Element x, int length) {
  std::vector<std::vector<int>> fwd(n + 2), rev(n + 2);
  for (const auto& e : edges) {
    fwd[node_index(e.from, n)].push_back(node_index(e.to, n));
    rev[node_index(e.to, n)].push_back(node_index(e.from, n));
  }
  const auto from_s = bfs(fwd, n + 1);
  const auto to_t = bfs(rev, n);
  return from_s[x] >= 0 && to_t[x] >= 0 && from_s[x] + to_t[x] == length;
}

// ------------------------------------------------------------ gammoid suite

GammoidCase random_gammoid_case(Rng& rng, int left, int right, double density, int starts,
                                int ends) {
  GammoidCase c;
  c.graph.left = left;
  c.graph.right = right;
  std::vector<int> rs;
  for (int v = left; v < left + right; ++v) rs.push_back(v);
  rng.shuffle(rs);
  starts = std::min(starts, right);
  ends = std::min(ends, right - starts);
  c.starts.assign(rs.begin(), rs.begin() + starts);
  c.ends.assign(rs.begin() + starts, rs.begin() + starts + ends);
  std::vector<char> is_start(left + right, 0), is_end(left + right, 0);
  for (int a : c.starts) is_start[a] = 1;
  for (int b : c.ends) is_end[b] = 1;
  for (int u = 0; u < left; ++u) {
    for (int v = left; v < left + right; ++v) {
      if (!is_start[v] && rng.chance(density)) c.graph.arcs.push_back({u, v});
      if (!is_end[v] && rng.chance(density)) c.graph.arcs.push_back({v, u});
    }
  }
  return c;
}

int vertex_disjoint_paths(const BipartiteDigraph& g, const std::vector<int>& starts,
                          const std::vector<int>& ends) {
  // Vertex v becomes in-node 2v and out-node 2v+1; DFS augmentation.
  const int nv = g.num_vertices();
  const int src = 2 * nv, dst = 2 * nv + 1;
  std::vector<std::vector<int>> cap(2 * nv + 2, std::vector<int>(2 * nv + 2, 0));
  for (int v = 0; v < nv; ++v) cap[2 * v][2 * v + 1] = 1;
  for (const Edge& a : g.arcs) cap[2 * a.u + 1][2 * a.v] = 1;
  for (int a : starts) cap[src][2 * a] = 1;
  for (int b : ends) cap[2 * b + 1][dst] = 1;
  const int nodes = 2 * nv + 2;
  int flow = 0;
  for (;;) {
    std::vector<char> seen(nodes, 0);
    std::function<bool(int)> dfs = [&](int u) {
      if (u == dst) return true;
      seen[u] = 1;
      for (int w = 0; w < nodes; ++w) {
        if (cap[u][w] > 0 && !seen[w] && dfs(w)) {
          cap[u][w]--;
          cap[w][u]++;
          return true;
        }
      }
      return false;
    };
    if (!dfs(src)) return flow;
    ++flow;
  }
}

}  // namespace dynmat::testkit
