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

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "dynmat/apps.hpp"
#include "dynmat/error.hpp"
#include "dynmat/union.hpp"

namespace dynmat {
namespace {

using Clock = std::chrono::steady_clock;

struct Dsu {
  std::vector<int> parent, edges, vertices;
  explicit Dsu(int n) : parent(n), edges(n, 0), vertices(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // False when u and v were already joined.
  bool join(int u, int v) {
    u = find(u);
    v = find(v);
    if (u == v) {
      ++edges[u];
      return false;
    }
    parent[v] = u;
    edges[u] += edges[v] + 1;
    vertices[u] += vertices[v];
    return true;
  }
};

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("verification failed: " + what);
}

bool disjoint(const std::vector<std::vector<Element>>& classes, int n) {
  std::vector<char> seen(n, 0);
  for (const auto& c : classes) {
    for (Element e : c) {
      if (e < 0 || e >= n || seen[e]) return false;
      seen[e] = 1;
    }
  }
  return true;
}

std::vector<Element> flatten(const std::vector<std::vector<Element>>& classes) {
  std::vector<Element> all;
  for (const auto& c : classes) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  return all;
}

int spanning_size(const GraphInstance& g) { return std::max(g.num_vertices - 1, 0); }

RunReport from_intersection(const std::string& problem, const IntersectResult& res, int n,
                            double epsilon) {
  RunReport rep;
  rep.problem = problem;
  rep.n = n;
  rep.r = res.rank_estimate;
  rep.size = static_cast<int>(res.set.size());
  rep.solution = res.set;
  rep.stats = res.total();
  rep.phases = res.phases;
  rep.stopped_early = res.stopped_early;
  rep.epsilon = epsilon;
  return rep;
}

RunReport from_union(const std::string& problem, const UnionResult& res, int n, int k) {
  RunReport rep;
  rep.problem = problem;
  rep.n = n;
  rep.r = res.rank_estimate;
  rep.k = k;
  rep.size = static_cast<int>(res.set.size());
  rep.solution = res.set;
  rep.partition = res.classes;
  rep.stats = res.stats;
  rep.phases = res.phases;
  return rep;
}

void finish(RunReport* rep, Clock::time_point start) {
  rep->verified = true;
  rep->wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

void check_intersection(const Matroid& a, const Matroid& b, const std::vector<Element>& set) {
  check(disjoint({set}, a.ground_size()), "repeated element");
  check(a.rank_of(set) == static_cast<int>(set.size()), "dependent in the first matroid");
  check(b.rank_of(set) == static_cast<int>(set.size()), "dependent in the second matroid");
}

void check_classes(const std::vector<Matroid>& ms, const std::vector<std::vector<Element>>& classes) {
  check(disjoint(classes, ms.front().ground_size()), "classes overlap");
  for (size_t i = 0; i < classes.size(); ++i) {
    const Matroid& m = ms[ms.size() == 1 ? 0 : i];
    check(m.rank_of(classes[i]) == static_cast<int>(classes[i].size()),
          "class " + std::to_string(i) + " is dependent");
  }
}

void check_forests(const GraphInstance& g, const std::vector<std::vector<Element>>& classes, bool pseudo) {
  check(disjoint(classes, g.num_edges()), "edge used twice");
  for (const auto& c : classes) {
    check(pseudo ? is_pseudoforest(g.num_vertices, g.edges, c) : is_forest(g.num_vertices, g.edges, c),
          pseudo ? "class is not a pseudoforest" : "class is not a forest");
  }
}

Matroid graphic_of(const GraphInstance& g) { return Matroid::graphic(g.num_vertices, g.edges); }
Matroid bicircular_of(const GraphInstance& g) { return Matroid::bicircular(g.num_vertices, g.edges); }

void require_k(int k) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "k must be at least 1");
}

RunReport kfold_forests(const std::string& problem, const GraphInstance& g, int k, bool pseudo) {
  require_k(k);
  const auto start = Clock::now();
  const Matroid m = pseudo ? bicircular_of(g) : graphic_of(g);
  RunReport rep = from_union(problem, kfold_union(m, k), g.num_edges(), k);
  check_classes({m}, rep.partition);
  check_forests(g, rep.partition, pseudo);
  finish(&rep, start);
  return rep;
}

RunReport cover(const std::string& problem, const GraphInstance& g, bool pseudo) {
  const auto start = Clock::now();
  const Matroid m = pseudo ? bicircular_of(g) : graphic_of(g);
  const PackingResult res = covering(m);
  RunReport rep;
  rep.problem = problem;
  rep.n = g.num_edges();
  rep.r = m.full_rank();
  rep.k = res.value;
  rep.partition = res.sets;
  rep.solution = flatten(res.sets);
  rep.size = static_cast<int>(rep.solution.size());
  rep.stats = res.stats;
  rep.verdict = std::to_string(res.value);
  check(static_cast<int>(res.sets.size()) == res.value, "class count");
  check(rep.size == g.num_edges(), "not every edge covered");
  check_forests(g, res.sets, pseudo);
  finish(&rep, start);
  return rep;
}

}  // namespace

bool is_forest(int num_vertices, const std::vector<Edge>& edges, const std::vector<Element>& chosen) {
  Dsu dsu(num_vertices);
  for (Element e : chosen) {
    if (!dsu.join(edges[e].u, edges[e].v)) return false;
  }
  return true;
}

bool is_pseudoforest(int num_vertices, const std::vector<Edge>& edges, const std::vector<Element>& chosen) {
  Dsu dsu(num_vertices);
  for (Element e : chosen) dsu.join(edges[e].u, edges[e].v);
  for (int v = 0; v < num_vertices; ++v) {
    if (dsu.find(v) == v && dsu.edges[v] > dsu.vertices[v]) return false;
  }
  return true;
}

bool is_spanning_tree(int num_vertices, const std::vector<Edge>& edges, const std::vector<Element>& chosen) {
  return static_cast<int>(chosen.size()) == std::max(num_vertices - 1, 0) &&
         is_forest(num_vertices, edges, chosen);
}

bool is_valid_schedule(const std::vector<Interval>& windows, const std::vector<ScheduledEdge>& schedule) {
  std::vector<int> days;
  std::vector<Element> tasks;
  for (const auto& s : schedule) {
    if (s.element < 0 || s.element >= static_cast<Element>(windows.size())) return false;
    const Interval& w = windows[s.element];
    if (s.day < w.first || s.day > w.last) return false;
    days.push_back(s.day);
    tasks.push_back(s.element);
  }
  std::sort(days.begin(), days.end());
  std::sort(tasks.begin(), tasks.end());
  return std::adjacent_find(days.begin(), days.end()) == days.end() &&
         std::adjacent_find(tasks.begin(), tasks.end()) == tasks.end();
}

std::optional<std::vector<ScheduledEdge>> earliest_deadline_schedule(const std::vector<Interval>& windows,
                                                                     const std::vector<Element>& chosen) {
  std::vector<Element> order = chosen;
  std::sort(order.begin(), order.end(),
            [&](Element a, Element b) { return windows[a].first < windows[b].first; });
  using Item = std::pair<int, Element>;  // (deadline, task)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  std::vector<ScheduledEdge> out;
  size_t next = 0;
  int day = 1;
  while (next < order.size() || !ready.empty()) {
    if (ready.empty()) day = std::max(day, windows[order[next]].first);
    while (next < order.size() && windows[order[next]].first <= day) {
      ready.push({windows[order[next]].last, order[next]});
      ++next;
    }
    const auto [deadline, task] = ready.top();
    ready.pop();
    if (deadline < day) return std::nullopt;
    out.push_back({task, day});
    ++day;
  }
  return out;
}

RunReport solve_intersect(const Matroid& first, const Matroid& second, double epsilon) {
  const auto start = Clock::now();
  RunReport rep = from_intersection("intersect", intersect(first, second, {epsilon, nullptr}),
                                    first.ground_size(), epsilon);
  check_intersection(first, second, rep.solution);
  finish(&rep, start);
  return rep;
}

RunReport solve_union(const std::vector<Matroid>& matroids) {
  if (matroids.empty()) fail(ErrorCode::kInvalidArgument, "union of no matroids");
  const auto start = Clock::now();
  RunReport rep = from_union("union", matroid_union(matroids), matroids.front().ground_size(),
                             static_cast<int>(matroids.size()));
  check_classes(matroids, rep.partition);
  finish(&rep, start);
  return rep;
}

RunReport solve_kfold(const Matroid& matroid, int k) {
  require_k(k);
  const auto start = Clock::now();
  RunReport rep = from_union("kfold", kfold_union(matroid, k), matroid.ground_size(), k);
  check_classes({matroid}, rep.partition);
  finish(&rep, start);
  return rep;
}

RunReport solve_kdst(const GraphInstance& g, int k) {
  require_k(k);
  const auto start = Clock::now();
  const Matroid m = graphic_of(g);
  RunReport rep = from_union("kdst", kfold_union(m, k), g.num_edges(), k);
  rep.feasible = rep.size == k * spanning_size(g);
  rep.verdict = *rep.feasible ? "feasible" : "infeasible";
  check_classes({m}, rep.partition);
  check_forests(g, rep.partition, false);
  if (*rep.feasible) {
    for (const auto& c : rep.partition) check(is_spanning_tree(g.num_vertices, g.edges, c), "tree not spanning");
  }
  finish(&rep, start);
  return rep;
}

RunReport solve_kforest(const GraphInstance& g, int k) { return kfold_forests("kforest", g, k, false); }

RunReport solve_kpseudoforest(const GraphInstance& g, int k) {
  return kfold_forests("kpseudoforest", g, k, true);
}

RunReport solve_mixed(const GraphInstance& g, int forests, int pseudoforests) {
  if (forests < 0 || pseudoforests < 0 || forests + pseudoforests < 1) {
    fail(ErrorCode::kInvalidArgument, "need at least one forest or pseudoforest");
  }
  const auto start = Clock::now();
  std::vector<Matroid> ms(forests, graphic_of(g));
  ms.insert(ms.end(), pseudoforests, bicircular_of(g));
  RunReport rep = from_union("mixed", matroid_union(ms), g.num_edges(), forests + pseudoforests);
  check_classes(ms, rep.partition);
  for (size_t i = 0; i < rep.partition.size(); ++i) {
    check_forests(g, {rep.partition[i]}, static_cast<int>(i) >= forests);
  }
  check(disjoint(rep.partition, g.num_edges()), "edge used twice");
  finish(&rep, start);
  return rep;
}

RunReport solve_arboricity(const GraphInstance& g) { return cover("arboricity", g, false); }

RunReport solve_pseudoarboricity(const GraphInstance& g) { return cover("pseudoarboricity", g, true); }

RunReport solve_tree_packing(const GraphInstance& g) {
  if (g.num_vertices < 2) fail(ErrorCode::kInvalidArgument, "tree packing needs at least two vertices");
  const auto start = Clock::now();
  const Matroid m = graphic_of(g);
  RunReport rep;
  rep.problem = "tree-packing";
  rep.n = g.num_edges();
  rep.r = m.full_rank();
  if (rep.r < spanning_size(g)) {
    rep.verdict = "0 (disconnected)";
    finish(&rep, start);
    return rep;
  }
  const PackingResult res = packing(m);
  rep.k = res.value;
  rep.partition = res.sets;
  rep.solution = flatten(res.sets);
  rep.size = static_cast<int>(rep.solution.size());
  rep.stats = res.stats;
  rep.verdict = std::to_string(res.value);
  check(static_cast<int>(res.sets.size()) == res.value, "class count");
  check(disjoint(res.sets, g.num_edges()), "edge used twice");
  for (const auto& c : res.sets) check(is_spanning_tree(g.num_vertices, g.edges, c), "tree not spanning");
  finish(&rep, start);
  return rep;
}

RunReport solve_shannon(const GraphInstance& g) {
  RunReport rep = solve_kdst(g, 2);
  rep.problem = "shannon";
  rep.verdict = *rep.feasible ? "Short wins" : "Cut wins";
  return rep;
}

RunReport solve_colorful_st(const GraphInstance& g, double epsilon) {
  const auto start = Clock::now();
  // Uncolored edges get a color of their own.
  std::map<std::pair<int, int>, int> ids;
  std::vector<int> color(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto key = g.color[e] ? std::pair{0, *g.color[e]} : std::pair{1, e};
    color[e] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
  }
  const int num_colors = static_cast<int>(ids.size());
  const Matroid forest = graphic_of(g);
  const Matroid colors = Matroid::partition(color, std::vector<int>(num_colors, 1));
  RunReport rep = from_intersection("colorful-st", intersect(forest, colors, {epsilon, nullptr}),
                                    g.num_edges(), epsilon);
  rep.feasible = rep.size == spanning_size(g);
  rep.verdict = *rep.feasible ? "feasible" : "infeasible";
  check_intersection(forest, colors, rep.solution);
  check(is_forest(g.num_vertices, g.edges, rep.solution), "not a forest");
  std::vector<int> used;
  for (Element e : rep.solution) used.push_back(color[e]);
  std::sort(used.begin(), used.end());
  check(std::adjacent_find(used.begin(), used.end()) == used.end(), "repeated color");
  finish(&rep, start);
  return rep;
}

RunReport solve_graphic_intersection(const GraphInstance& g1, const GraphInstance& g2, double epsilon) {
  const auto start = Clock::now();
  const Matroid a = graphic_of(g1), b = graphic_of(g2);
  RunReport rep = from_intersection("graphic-intersect", intersect(a, b, {epsilon, nullptr}),
                                    g1.num_edges(), epsilon);
  check_intersection(a, b, rep.solution);
  check(is_forest(g1.num_vertices, g1.edges, rep.solution), "not a forest in the first graph");
  check(is_forest(g2.num_vertices, g2.edges, rep.solution), "not a forest in the second graph");
  finish(&rep, start);
  return rep;
}

RunReport solve_bipartite_matching(const GraphInstance& g, double epsilon) {
  const auto start = Clock::now();
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> side(g.num_vertices, -1);
  for (int s = 0; s < g.num_vertices; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          fail(ErrorCode::kMalformedInstance, "graph is not bipartite");
        }
      }
    }
  }
  std::vector<int> left(g.num_edges()), right(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edges[e];
    left[e] = side[ed.u] == 0 ? ed.u : ed.v;
    right[e] = side[ed.u] == 0 ? ed.v : ed.u;
  }
  const std::vector<int> unit(g.num_vertices, 1);
  const Matroid ml = Matroid::partition(left, unit), mr = Matroid::partition(right, unit);
  RunReport rep = from_intersection("bipartite-matching", intersect(ml, mr, {epsilon, nullptr}),
                                    g.num_edges(), epsilon);
  check_intersection(ml, mr, rep.solution);
  std::vector<char> used(g.num_vertices, 0);
  for (Element e : rep.solution) {
    for (int v : {g.edges[e].u, g.edges[e].v}) {
      check(!used[v], "vertex matched twice");
      used[v] = 1;
    }
  }
  finish(&rep, start);
  return rep;
}

RunReport solve_scheduling_intersection(const std::vector<Job>& jobs, double epsilon) {
  const auto start = Clock::now();
  std::vector<Interval> w1, w2;
  for (const Job& j : jobs) {
    w1.push_back(j.first);
    w2.push_back(j.second);
  }
  // Windows that all open on day 1 use the simple scheduling matroid.
  auto machine = [](const std::vector<Interval>& w) {
    if (std::all_of(w.begin(), w.end(), [](const Interval& iv) { return iv.first == 1; })) {
      std::vector<int> deadlines;
      for (const Interval& iv : w) deadlines.push_back(iv.last);
      return Matroid::scheduling(std::move(deadlines));
    }
    return Matroid::convex_transversal(w);
  };
  const Matroid a = machine(w1), b = machine(w2);
  RunReport rep = from_intersection("scheduling-intersect", intersect(a, b, {epsilon, nullptr}),
                                    static_cast<int>(jobs.size()), epsilon);
  for (const Job& j : jobs) rep.labels.push_back(j.id);
  check_intersection(a, b, rep.solution);
  const auto s1 = earliest_deadline_schedule(w1, rep.solution);
  const auto s2 = earliest_deadline_schedule(w2, rep.solution);
  check(s1 && is_valid_schedule(w1, *s1), "no schedule on the first machine");
  check(s2 && is_valid_schedule(w2, *s2), "no schedule on the second machine");
  rep.schedule = *s1;
  finish(&rep, start);
  return rep;
}

RunReport solve_linear_intersection(const MatrixInstance& a, const MatrixInstance& b, double epsilon) {
  if (a.rows.size() != b.rows.size()) {
    fail(ErrorCode::kGroundSetMismatch, "matrices have different row counts");
  }
  const auto start = Clock::now();
  const Matroid ma = Matroid::linear(a.rows, a.prime), mb = Matroid::linear(b.rows, b.prime);
  RunReport rep = from_intersection("linear-intersect", intersect(ma, mb, {epsilon, nullptr}),
                                    static_cast<int>(a.rows.size()), epsilon);
  check_intersection(ma, mb, rep.solution);
  finish(&rep, start);
  return rep;
}

RunReport solve_forest_deadlines(const GraphInstance& g, double epsilon) {
  const auto start = Clock::now();
  std::vector<Interval> windows;
  for (int e = 0; e < g.num_edges(); ++e) {
    const int rel = g.release[e].value_or(1);
    const int dl = g.deadline[e].value_or(std::max(g.num_edges(), rel));
    if (dl < rel) fail(ErrorCode::kMalformedInstance, "edge " + std::to_string(e) + " has dl < rel");
    windows.push_back({rel, dl});
  }
  const Matroid forest = graphic_of(g);
  const Matroid days = Matroid::convex_transversal(windows);
  RunReport rep = from_intersection("forest-deadlines", intersect(forest, days, {epsilon, nullptr}),
                                    g.num_edges(), epsilon);
  check_intersection(forest, days, rep.solution);
  check(is_forest(g.num_vertices, g.edges, rep.solution), "not a forest");
  const auto sched = earliest_deadline_schedule(windows, rep.solution);
  check(sched && is_valid_schedule(windows, *sched), "no schedule for the chosen edges");
  rep.schedule = *sched;
  finish(&rep, start);
  return rep;
}

}  // namespace dynmat
