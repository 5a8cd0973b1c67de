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

#ifndef DYNMAT_INTERSECTION_HPP_
#define DYNMAT_INTERSECTION_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dynmat/matroid.hpp"
#include "dynmat/oracle.hpp"

namespace dynmat {

// BFS layers of the exchange graph of S. layers[l] (1 <= l < d_t) holds the
// elements at distance l; layers[0] is empty and stands for the source.
struct LayeredGraph {
  int d_t = kInfiniteDistance;
  std::vector<int> dist;       // per element; -1 if not reached before t
  std::vector<Element> pred;   // BFS discoverer, kSource for layer 1
  std::vector<std::vector<Element>> layers;
  Element sink_pred = -1;      // last element of one shortest path

  bool reachable() const { return d_t != kInfiniteDistance; }
  // One shortest path a_1..a_{d_t-1}, following BFS predecessors.
  std::vector<Element> shortest_path() const;
};

struct PhaseRecord {
  int d_t = 0;
  int augmentations = 0;
  bool blocking = false;  // false: a single shortest-path augmentation
};

// Observers for tests. All callbacks are optional.
struct PhaseHooks {
  bool audit_trees = false;
  // After each committed path: the set S at phase start and the committed
  // layer sets D_1..D_{d_t-1} (index 0 unused).
  std::function<void(std::span<const Element> s, const std::vector<std::vector<Element>>& committed)>
      on_commit;
  // After an element is dropped from layer l without being committed; s_now
  // is S with every committed path applied.
  std::function<void(Element x, int layer, std::span<const Element> s_now)> on_dead_end;
};

LayeredGraph build_layers(DynamicOracle& first, DynamicOracle& second, std::span<const Element> s);

// One blocking-flow phase on the given layers of S. Returns the new S.
std::vector<Element> blocking_flow_phase(DynamicOracle& first, DynamicOracle& second,
                                         std::span<const Element> s, const LayeredGraph& layers,
                                         int rank_estimate, const PhaseHooks* hooks = nullptr,
                                         int* augmentations = nullptr);

// S plus one shortest augmenting path, or nullopt when S is maximum.
std::optional<std::vector<Element>> augment_one(DynamicOracle& first, DynamicOracle& second,
                                                std::span<const Element> s,
                                                int* path_length = nullptr);

struct IntersectOptions {
  double epsilon = 0.0;  // > 0: stop once d_t > 1 / epsilon
  const PhaseHooks* hooks = nullptr;
};

struct IntersectResult {
  std::vector<Element> set;
  int rank_estimate = 0;
  std::vector<PhaseRecord> phases;
  std::vector<int> path_lengths;  // one-at-a-time augmentations only
  bool stopped_early = false;
  OracleStats first_stats;
  OracleStats second_stats;
  OracleStats total() const {
    OracleStats t = first_stats;
    t += second_stats;
    return t;
  }
};

IntersectResult intersect(DynamicOracle& first, DynamicOracle& second,
                          const IntersectOptions& options = {});
IntersectResult intersect(const Matroid& first, const Matroid& second,
                          const IntersectOptions& options = {});

// Repeated shortest-path augmentation from the empty set.
IntersectResult intersect_baseline(const Matroid& first, const Matroid& second);

}  // namespace dynmat

#endif  // DYNMAT_INTERSECTION_HPP_
