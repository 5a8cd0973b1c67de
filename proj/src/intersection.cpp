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

#include "dynmat/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>

#include "dynmat/error.hpp"
#include "dynmat/exchange_bst.hpp"
#include "chain.hpp"

namespace dynmat {

namespace {

using detail::ceil_sqrt;
using detail::ChainVersion;

std::vector<Element> complement_of(int n, const std::vector<char>& in_s) {
  std::vector<Element> out;
  for (Element e = 0; e < n; ++e)
    if (!in_s[e]) out.push_back(e);
  return out;
}

std::vector<Element> sorted(std::span<const Element> s) {
  std::vector<Element> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<Element> LayeredGraph::shortest_path() const {
  std::vector<Element> path;
  if (!reachable()) return path;
  for (Element e = sink_pred; e != kSource; e = pred[e]) path.push_back(e);
  std::reverse(path.begin(), path.end());
  return path;
}

LayeredGraph build_layers(DynamicOracle& first, DynamicOracle& second, std::span<const Element> s_in) {
  const int n = first.ground_size();
  if (second.ground_size() != n) fail(ErrorCode::kGroundSetMismatch);
  const std::vector<Element> s = sorted(s_in);
  std::vector<char> in_s(n, 0);
  for (Element e : s) in_s[e] = 1;

  ChainVersion q1(first, s), q2(second, s);
  const int size = static_cast<int>(s.size());
  if (first.query(q1.get()) != size || second.query(q2.get()) != size) {
    fail(ErrorCode::kNotCommonIndependent);
  }

  // Out-edges of x in S: y outside S with S - x + y independent in the first
  // matroid. Out-edges of y outside S: x in S with S - x + y independent in
  // the second. t is entered from y when S + y is independent in the second.
  const std::vector<Element> outside = complement_of(n, in_s);
  ExchangeBst from_inside(first, BstVariant::kCoCircuit, s, q1.get(), outside, 1);
  ExchangeBst from_outside(second, BstVariant::kCircuit, s, q2.get(), s, 1);
  ExchangeBst to_sink(second, BstVariant::kSink, s, q2.get(), {}, 1);

  LayeredGraph g;
  g.dist.assign(n, -1);
  g.pred.assign(n, -1);
  std::deque<Element> queue;
  while (auto y = from_inside.find(kSource)) {
    g.dist[*y] = 1;
    g.pred[*y] = kSource;
    from_inside.erase(*y);
    queue.push_back(*y);
  }
  while (!queue.empty()) {
    const Element u = queue.front();
    queue.pop_front();
    if (in_s[u]) {
      while (auto y = from_inside.find(u)) {
        g.dist[*y] = g.dist[u] + 1;
        g.pred[*y] = u;
        from_inside.erase(*y);
        queue.push_back(*y);
      }
      continue;
    }
    if (to_sink.find(u)) {
      g.d_t = g.dist[u] + 1;
      g.sink_pred = u;
      break;
    }
    while (auto x = from_outside.find(u)) {
      g.dist[*x] = g.dist[u] + 1;
      g.pred[*x] = u;
      from_outside.erase(*x);
      queue.push_back(*x);
    }
  }

  if (g.reachable()) {
    g.layers.assign(g.d_t, {});
    for (Element e = 0; e < n; ++e) {
      if (g.dist[e] >= g.d_t) g.dist[e] = -1;
      if (g.dist[e] > 0) g.layers[g.dist[e]].push_back(e);
    }
  }
  return g;
}

std::vector<Element> blocking_flow_phase(DynamicOracle& first, DynamicOracle& second,
                                         std::span<const Element> s_in, const LayeredGraph& layers,
                                         int rank_estimate, const PhaseHooks* hooks,
                                         int* augmentations) {
  const int n = first.ground_size();
  std::vector<Element> s = sorted(s_in);
  if (augmentations) *augmentations = 0;
  if (!layers.reachable()) return s;
  const int d = layers.d_t;
  const int beta = std::max(1, (ceil_sqrt(std::max(rank_estimate, 1)) + d - 1) / d);

  ChainVersion q1(first, s), q2(second, s);
  // trees[l] serves the step from layer l-1 into layer l.
  std::vector<std::unique_ptr<ExchangeBst>> trees(d + 1);
  for (int l = 1; l < d; ++l) {
    if (l % 2 == 1) {
      trees[l] = std::make_unique<ExchangeBst>(first, BstVariant::kCoCircuit, s, q1.get(),
                                               layers.layers[l], beta);
    } else {
      trees[l] = std::make_unique<ExchangeBst>(second, BstVariant::kCircuit, s, q2.get(),
                                               layers.layers[l], beta);
    }
  }
  trees[d] = std::make_unique<ExchangeBst>(second, BstVariant::kSink, s, q2.get(),
                                           std::span<const Element>{}, beta);
  if (hooks && hooks->audit_trees) {
    for (int l = 1; l <= d; ++l) trees[l]->set_audit(true);
  }

  std::vector<char> toggled(n, 0);
  std::vector<std::vector<Element>> committed(d);
  std::vector<Element> path(d + 1, kSource);
  auto current_set = [&] {
    std::vector<Element> cur;
    for (Element e = 0; e < n; ++e) {
      const bool in = std::binary_search(s.begin(), s.end(), e);
      if (in != static_cast<bool>(toggled[e])) cur.push_back(e);
    }
    return cur;
  };

  int level = 0;
  while (level >= 0) {
    if (level == d) {
      for (int i = 1; i <= d; ++i) {
        if (i < d) {
          committed[i].push_back(path[i]);
          toggled[path[i]] = 1;
          trees[i]->erase(path[i]);
        }
        const Element pair[2] = {path[i - 1], path[i]};
        trees[i]->update(pair);
      }
      if (augmentations) ++*augmentations;
      if (hooks && hooks->on_commit) hooks->on_commit(s, committed);
      level = 0;
      continue;
    }
    const auto next = trees[level + 1]->find(path[level]);
    if (next) {
      path[++level] = *next;
      continue;
    }
    if (level > 0) {
      trees[level]->erase(path[level]);
      if (hooks && hooks->on_dead_end) hooks->on_dead_end(path[level], level, current_set());
    }
    --level;
  }
  return current_set();
}

std::optional<std::vector<Element>> augment_one(DynamicOracle& first, DynamicOracle& second,
                                                std::span<const Element> s, int* path_length) {
  const LayeredGraph g = build_layers(first, second, s);
  if (!g.reachable()) return std::nullopt;
  if (path_length) *path_length = g.d_t;
  std::vector<char> toggled(first.ground_size(), 0);
  for (Element e : s) toggled[e] ^= 1;
  for (Element e : g.shortest_path()) toggled[e] ^= 1;
  std::vector<Element> out;
  for (Element e = 0; e < first.ground_size(); ++e)
    if (toggled[e]) out.push_back(e);
  return out;
}

namespace {

int full_rank_by_chain(DynamicOracle& o) {
  std::vector<Element> all(o.ground_size());
  for (int i = 0; i < o.ground_size(); ++i) all[i] = i;
  ChainVersion v(o, all);
  return o.query(v.get());
}

}  // namespace

IntersectResult intersect(DynamicOracle& first, DynamicOracle& second,
                          const IntersectOptions& options) {
  if (first.ground_size() != second.ground_size()) fail(ErrorCode::kGroundSetMismatch);
  IntersectResult result;
  const OracleStats start1 = first.stats(), start2 = second.stats();
  auto finish = [&] {
    result.first_stats = first.stats() - start1;
    result.second_stats = second.stats() - start2;
    return result;
  };
  if (first.ground_size() == 0) return finish();
  result.rank_estimate = std::min(full_rank_by_chain(first), full_rank_by_chain(second));
  if (result.rank_estimate == 0) return finish();
  const int cutoff = ceil_sqrt(result.rank_estimate);

  std::vector<Element> s;
  for (;;) {
    const LayeredGraph g = build_layers(first, second, s);
    if (!g.reachable()) break;
    if (options.epsilon > 0 && g.d_t > 1.0 / options.epsilon) {
      result.stopped_early = true;
      break;
    }
    PhaseRecord rec;
    rec.d_t = g.d_t;
    if (g.d_t <= cutoff) {
      rec.blocking = true;
      s = blocking_flow_phase(first, second, s, g, result.rank_estimate, options.hooks,
                              &rec.augmentations);
    } else {
      std::vector<char> toggled(first.ground_size(), 0);
      for (Element e : s) toggled[e] = 1;
      for (Element e : g.shortest_path()) toggled[e] ^= 1;
      s.clear();
      for (Element e = 0; e < first.ground_size(); ++e)
        if (toggled[e]) s.push_back(e);
      rec.augmentations = 1;
      result.path_lengths.push_back(g.d_t);
    }
    result.phases.push_back(rec);
  }
  result.set = s;
  return finish();
}

IntersectResult intersect(const Matroid& first, const Matroid& second,
                          const IntersectOptions& options) {
  if (first.ground_size() != second.ground_size()) fail(ErrorCode::kGroundSetMismatch);
  DynamicOracle a(first), b(second);
  return intersect(a, b, options);
}

IntersectResult intersect_baseline(const Matroid& first, const Matroid& second) {
  if (first.ground_size() != second.ground_size()) fail(ErrorCode::kGroundSetMismatch);
  DynamicOracle a(first), b(second);
  IntersectResult result;
  result.rank_estimate = std::min(first.full_rank(), second.full_rank());
  std::vector<Element> s;
  int length = 0;
  while (auto next = augment_one(a, b, s, &length)) {
    s = std::move(*next);
    result.path_lengths.push_back(length);
    result.phases.push_back(PhaseRecord{length, 1, false});
  }
  result.set = s;
  result.first_stats = a.stats();
  result.second_stats = b.stats();
  return result;
}

}  // namespace dynmat
