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

#include "dynmat/union.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "chain.hpp"
#include "dynmat/error.hpp"
#include "dynmat/exchange_bst.hpp"

namespace dynmat {

using detail::ceil_sqrt;
using detail::ChainVersion;

std::vector<Element> UnionLayers::shortest_path() const {
  std::vector<Element> path;
  if (!reachable()) return path;
  for (Element e = sink_pred; e != kSource; e = pred[e]) path.push_back(e);
  std::reverse(path.begin(), path.end());
  return path;
}

UnionEngine::UnionEngine(const std::vector<Matroid>& matroids) {
  if (matroids.empty()) fail(ErrorCode::kInvalidArgument, "at least one matroid");
  k_ = static_cast<int>(matroids.size());
  n_ = matroids[0].ground_size();
  for (const Matroid& m : matroids) {
    if (m.ground_size() != n_) fail(ErrorCode::kGroundSetMismatch);
    oracles_.push_back(std::make_unique<DynamicOracle>(m));
  }
  init();
}

UnionEngine::UnionEngine(const Matroid& matroid, int k) : kfold_(true), k_(k) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "k must be positive");
  n_ = matroid.ground_size();
  oracles_.push_back(std::make_unique<DynamicOracle>(matroid));
  init();
}

void UnionEngine::init() {
  class_of_.assign(n_, -1);
  std::vector<Element> all(n_);
  std::iota(all.begin(), all.end(), 0);
  const auto before = stats().total_ops();
  int rank_sum = 0;
  for (size_t i = 0; i < oracles_.size(); ++i) {
    bases_.push_back(std::make_unique<DynamicBasis>(*oracles_[i], all));
    rank_sum += static_cast<int>(bases_.back()->basis().size());
  }
  init_ops_ = stats().total_ops() - before;
  rank_estimate_ = kfold_ ? std::min<long long>(n_, 1LL * k_ * rank_sum) : std::min(n_, rank_sum);
}

OracleStats UnionEngine::stats() const {
  OracleStats total;
  for (const auto& o : oracles_) total += o->stats();
  return total;
}

std::vector<std::vector<Element>> UnionEngine::classes() const {
  std::vector<std::vector<Element>> out(k_);
  for (Element e = 0; e < n_; ++e)
    if (class_of_[e] >= 0) out[class_of_[e]].push_back(e);
  return out;
}

std::vector<Element> UnionEngine::set() const {
  std::vector<Element> out;
  for (Element e = 0; e < n_; ++e)
    if (class_of_[e] >= 0) out.push_back(e);
  return out;
}

std::vector<Element> UnionEngine::outside_basis(int i) const {
  auto b = bases_[kfold_ ? 0 : i]->basis();
  std::sort(b.begin(), b.end());
  return b;
}

UnionLayers UnionEngine::bfs(UnionBfsMode mode) {
  if (mode == UnionBfsMode::kSkipSpanned && !kfold_) {
    fail(ErrorCode::kInvalidArgument, "skip rule needs identical matroids");
  }
  const auto cls = classes();
  std::vector<std::unique_ptr<ChainVersion>> qs;
  std::vector<std::unique_ptr<ExchangeBst>> trees;
  for (int i = 0; i < k_; ++i) {
    qs.push_back(std::make_unique<ChainVersion>(oracle(i), cls[i]));
    trees.push_back(std::make_unique<ExchangeBst>(oracle(i), BstVariant::kCircuit, cls[i],
                                                  qs[i]->get(), cls[i], 1));
  }

  UnionLayers g;
  g.dist.assign(n_, -1);
  g.pred.assign(n_, -1);
  if (mode == UnionBfsMode::kAllOutside) {
    for (Element e = 0; e < n_; ++e)
      if (class_of_[e] < 0) g.first_layer.push_back(e);
  } else {
    for (size_t i = 0; i < bases_.size(); ++i) {
      const auto b = outside_basis(static_cast<int>(i));
      g.first_layer.insert(g.first_layer.end(), b.begin(), b.end());
    }
    std::sort(g.first_layer.begin(), g.first_layer.end());
    g.first_layer.erase(std::unique(g.first_layer.begin(), g.first_layer.end()),
                        g.first_layer.end());
  }
  std::deque<Element> queue;
  for (Element e : g.first_layer) {
    g.dist[e] = 1;
    g.pred[e] = kSource;
    queue.push_back(e);
  }

  // Independent prefix of explored elements (skip rule).
  VersionId explored = DynamicOracle::empty();
  int explored_rank = 0;
  auto keep = [&](VersionId v) {
    if (!(explored == DynamicOracle::empty())) oracle(0).release(explored);
    explored = v;
  };

  while (!queue.empty()) {
    const Element u = queue.front();
    queue.pop_front();
    if (mode == UnionBfsMode::kSkipSpanned) {
      const VersionId next = oracle(0).insert(explored, u);
      if (oracle(0).query(next) == explored_rank) {
        oracle(0).release(next);
        continue;
      }
      keep(next);
      ++explored_rank;
    }
    bool sink = false;
    for (int i = 0; i < k_ && !sink; ++i) {
      if (class_of_[u] == i) continue;
      DynamicOracle& o = oracle(i);
      const VersionId probe = o.insert(qs[i]->get(), u);
      if (o.query(probe) == static_cast<int>(cls[i].size()) + 1) {
        g.d_t = g.dist[u] + 1;
        g.sink_pred = u;
        g.sink_class = i;
        sink = true;
      }
      o.release(probe);
    }
    if (sink) break;
    for (int i = 0; i < k_; ++i) {
      if (class_of_[u] == i) continue;
      while (auto v = trees[i]->find(u)) {
        g.dist[*v] = g.dist[u] + 1;
        g.pred[*v] = u;
        trees[i]->erase(*v);
        queue.push_back(*v);
      }
    }
  }
  keep(DynamicOracle::empty());

  if (g.reachable()) {
    g.layers.assign(g.d_t, {});
    for (Element e = 0; e < n_; ++e) {
      if (g.dist[e] >= g.d_t) g.dist[e] = -1;
      if (g.dist[e] >= 2) g.layers[g.dist[e]].push_back(e);
    }
  }
  return g;
}

void UnionEngine::erase_from_bases(Element x, std::vector<Element>* replacements) {
  for (auto& d : bases_) {
    const auto rep = d->erase(x);
    if (rep && replacements) replacements->push_back(*rep);
  }
}

void UnionEngine::commit(const std::vector<Element>& path, int sink_class) {
  // a_j takes the class a_{j+1} had; the last element joins the sink class.
  const int len = static_cast<int>(path.size());
  std::vector<int> target(len);
  for (int j = 0; j + 1 < len; ++j) target[j] = class_of_[path[j + 1]];
  target[len - 1] = sink_class;
  for (int j = 0; j < len; ++j) class_of_[path[j]] = target[j];
}

void UnionEngine::augment(const UnionLayers& layers) {
  if (!layers.reachable()) return;
  const auto path = layers.shortest_path();
  commit(path, layers.sink_class);
  erase_from_bases(path.front(), nullptr);
}

int UnionEngine::blocking_flow(const UnionLayers& layers, bool audit) {
  if (!layers.reachable()) return 0;
  const int d = layers.d_t;
  const int beta = std::max(1, (ceil_sqrt(std::max(rank_estimate_, 1)) + d - 1) / d);
  const auto cls = classes();
  std::vector<std::unique_ptr<ChainVersion>> qs;
  for (int i = 0; i < k_; ++i) qs.push_back(std::make_unique<ChainVersion>(oracle(i), cls[i]));

  // trees[l][i] covers A_l within class i, for 2 <= l < d.
  std::vector<std::vector<std::unique_ptr<ExchangeBst>>> trees(d);
  for (int l = 2; l < d; ++l) {
    std::vector<std::vector<Element>> by_class(k_);
    for (Element e : layers.layers[l]) by_class[class_of_[e]].push_back(e);
    for (int i = 0; i < k_; ++i) {
      trees[l].push_back(std::make_unique<ExchangeBst>(oracle(i), BstVariant::kCircuit, cls[i],
                                                       qs[i]->get(), by_class[i], beta));
    }
  }
  std::vector<std::unique_ptr<ExchangeBst>> sinks;
  for (int i = 0; i < k_; ++i) {
    sinks.push_back(std::make_unique<ExchangeBst>(oracle(i), BstVariant::kSink, cls[i],
                                                  qs[i]->get(), std::span<const Element>{}, beta));
  }
  if (audit) {
    for (auto& row : trees)
      for (auto& t : row) t->set_audit(true);
    for (auto& t : sinks) t->set_audit(true);
  }

  // Span test state: prefix L_1 + ... + L_{l-1} + R_l for each layer l >= 2.
  std::vector<VersionId> spanned(d, DynamicOracle::empty());
  std::vector<int> spanned_rank(d, 0);
  if (kfold_) {
    DynamicOracle& o = oracle(0);
    VersionId cur = DynamicOracle::empty();
    for (int l = 2; l < d; ++l) {
      // BFS layers below d_t are never empty, so each prefix is a new version.
      const auto& prev = l == 2 ? layers.first_layer : layers.layers[l - 1];
      for (Element e : prev) {
        const VersionId next = o.insert(cur, e);
        if (!(cur == DynamicOracle::empty()) && !(cur == spanned[l - 1])) o.release(cur);
        cur = next;
      }
      spanned[l] = cur;
      spanned_rank[l] = o.query(cur);
    }
  }

  std::vector<char> in_first(n_, 0);
  std::vector<Element> first = layers.first_layer;
  std::reverse(first.begin(), first.end());  // popped from the back in element order
  for (Element e : first) in_first[e] = 1;
  std::vector<Element> path(d + 1, kSource);
  int sink_class = -1;
  int augmentations = 0;
  int level = 0;
  while (level >= 0) {
    if (level == d) {
      std::vector<Element> aug(path.begin() + 1, path.begin() + d);
      first.pop_back();
      in_first[aug[0]] = 0;
      for (int l = 2; l < d; ++l) {
        const int j = class_of_[path[l]];
        trees[l][j]->erase(path[l]);
        const Element pair[2] = {path[l - 1], path[l]};
        trees[l][j]->update(pair);
      }
      const Element last[1] = {path[d - 1]};
      sinks[sink_class]->update(last);
      commit(aug, sink_class);
      std::vector<Element> replacements;
      erase_from_bases(aug[0], &replacements);
      for (Element x : replacements) {
        if (!in_first[x] && class_of_[x] < 0) {
          in_first[x] = 1;
          first.push_back(x);
        }
      }
      ++augmentations;
      level = 0;
      continue;
    }
    if (level == 0) {
      if (first.empty()) break;
      path[1] = first.back();
      level = 1;
      continue;
    }
    const Element u = path[level];
    const int cu = class_of_[u];
    Element next = -1;
    for (int i = 0; i < k_ && next == -1; ++i) {
      if (i == cu) continue;
      if (level + 1 == d) {
        if (sinks[i]->find(u)) {
          next = kSink;
          sink_class = i;
        }
      } else if (auto v = trees[level + 1][i]->find(u)) {
        next = *v;
      }
    }
    if (next != -1) {
      path[++level] = next;
      if (kfold_ && level >= 2 && level < d) {
        DynamicOracle& o = oracle(0);
        const VersionId probe = o.insert(spanned[level], next);
        const bool is_spanned = o.query(probe) == spanned_rank[level];
        o.release(probe);
        if (is_spanned) {
          trees[level][class_of_[next]]->erase(next);
          --level;
        }
      }
      continue;
    }
    if (level == 1) {
      first.pop_back();
      in_first[u] = 0;
    } else {
      trees[level][cu]->erase(u);
      if (kfold_) {
        const VersionId grown = oracle(0).insert(spanned[level], u);
        oracle(0).release(spanned[level]);
        spanned[level] = grown;
        ++spanned_rank[level];
      }
    }
    --level;
  }
  for (int l = 2; l < d; ++l) {
    if (kfold_ && oracle(0).is_live(spanned[l]) && !(spanned[l] == DynamicOracle::empty())) {
      oracle(0).release(spanned[l]);
    }
  }
  return augmentations;
}

UnionResult UnionEngine::run(const std::function<void(const UnionEngine&)>& after_phase) {
  UnionResult result;
  result.rank_estimate = rank_estimate_;
  result.init_ops = init_ops_;
  if (rank_estimate_ > 0) {
    const int cutoff = ceil_sqrt(rank_estimate_);
    for (;;) {
      const UnionLayers g = bfs();
      if (!g.reachable()) break;
      PhaseRecord rec;
      rec.d_t = g.d_t;
      if (g.d_t <= cutoff) {
        rec.blocking = true;
        rec.augmentations = blocking_flow(g);
      } else {
        augment(g);
        rec.augmentations = 1;
        result.path_lengths.push_back(g.d_t);
      }
      result.phases.push_back(rec);
      if (after_phase) after_phase(*this);
    }
  }
  result.set = set();
  result.classes = classes();
  result.stats = stats();
  return result;
}

UnionResult matroid_union(const std::vector<Matroid>& matroids) {
  UnionEngine engine(matroids);
  return engine.run();
}

UnionResult kfold_union(const Matroid& matroid, int k) {
  UnionEngine engine(matroid, k);
  return engine.run();
}

PackingResult packing(const Matroid& matroid) {
  const int r = matroid.full_rank();
  if (r == 0) fail(ErrorCode::kZeroRankMatroid);
  PackingResult best;
  int lo = 0, hi = matroid.ground_size() / r;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    UnionEngine engine(matroid, mid);
    const UnionResult res = engine.run();
    best.stats += res.stats;
    if (static_cast<int>(res.set.size()) == mid * r) {
      lo = mid;
      best.sets = res.classes;
    } else {
      hi = mid - 1;
    }
  }
  best.value = lo;
  if (best.sets.size() != static_cast<size_t>(lo)) best.sets.assign(lo, {});
  return best;
}

PackingResult covering(const Matroid& matroid) {
  const int n = matroid.ground_size();
  for (Element e = 0; e < n; ++e) {
    const Element one[1] = {e};
    if (!matroid.is_independent(one)) fail(ErrorCode::kLoopElement, "element " + std::to_string(e));
  }
  PackingResult best;
  if (n == 0) return best;
  auto feasible = [&](int k) {
    UnionEngine engine(matroid, k);
    const UnionResult res = engine.run();
    best.stats += res.stats;
    if (static_cast<int>(res.set.size()) == n) {
      best.sets = res.classes;
      return true;
    }
    return false;
  };
  int hi = 1;
  while (!feasible(hi)) hi *= 2;
  std::vector<std::vector<Element>> sets = best.sets;
  int lo = hi / 2 + 1;
  if (hi == 1) lo = 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (feasible(mid)) {
      hi = mid;
      sets = best.sets;
    } else {
      lo = mid + 1;
    }
  }
  best.value = hi;
  best.sets = sets;
  return best;
}

}  // namespace dynmat
