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

#ifndef DYNMAT_UNION_HPP_
#define DYNMAT_UNION_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "dynmat/dynamic_basis.hpp"
#include "dynmat/intersection.hpp"
#include "dynmat/matroid.hpp"
#include "dynmat/oracle.hpp"

namespace dynmat {

// Distance layers of the union exchange graph. Layer 1 is the sparsified
// first layer (union of the maintained bases of the elements outside S);
// layers 2..d_t-1 hold elements of S.
struct UnionLayers {
  int d_t = kInfiniteDistance;
  std::vector<Element> first_layer;
  std::vector<int> dist;  // per element, -1 when unreached or at distance >= d_t
  std::vector<Element> pred;
  std::vector<std::vector<Element>> layers;
  Element sink_pred = -1;
  int sink_class = -1;

  bool reachable() const { return d_t != kInfiniteDistance; }
  std::vector<Element> shortest_path() const;
};

enum class UnionBfsMode {
  kBasisStart,    // BFS seeded by the maintained bases
  kSkipSpanned,   // as above, exploring only elements that extend an independent prefix
  kAllOutside,    // seeded by every element outside S; reference only
};

struct UnionResult {
  std::vector<Element> set;                  // sorted
  std::vector<std::vector<Element>> classes;  // one independent set per matroid
  int rank_estimate = 0;
  std::vector<PhaseRecord> phases;
  std::vector<int> path_lengths;
  OracleStats stats;         // every oracle of the solve
  long long init_ops = 0;    // spent building the basis structures
};

// State of one union solve. With kfold set, every class uses the same
// matroid and a single basis structure serves all of them.
class UnionEngine {
 public:
  UnionEngine(const std::vector<Matroid>& matroids);
  UnionEngine(const Matroid& matroid, int k);
  UnionEngine(const UnionEngine&) = delete;
  UnionEngine& operator=(const UnionEngine&) = delete;

  bool kfold() const { return kfold_; }
  int k() const { return k_; }
  int ground_size() const { return n_; }
  int rank_estimate() const { return rank_estimate_; }
  long long init_ops() const { return init_ops_; }

  UnionLayers bfs() { return bfs(kfold_ ? UnionBfsMode::kSkipSpanned : UnionBfsMode::kBasisStart); }
  UnionLayers bfs(UnionBfsMode mode);
  // One blocking-flow phase on freshly built layers; returns augmentations.
  int blocking_flow(const UnionLayers& layers, bool audit = false);
  // Single augmentation along the recorded shortest path.
  void augment(const UnionLayers& layers);
  UnionResult run(const std::function<void(const UnionEngine&)>& after_phase = nullptr);

  int class_of(Element e) const { return class_of_[e]; }
  std::vector<std::vector<Element>> classes() const;
  std::vector<Element> set() const;
  // Maintained basis of the elements outside S, for matroid i.
  std::vector<Element> outside_basis(int i) const;
  OracleStats stats() const;

 private:
  DynamicOracle& oracle(int i) { return *oracles_[kfold_ ? 0 : i]; }
  void commit(const std::vector<Element>& path, int sink_class);
  void erase_from_bases(Element x, std::vector<Element>* replacements);
  void init();

  bool kfold_ = false;
  int k_ = 0;
  int n_ = 0;
  std::vector<std::unique_ptr<DynamicOracle>> oracles_;
  std::vector<std::unique_ptr<DynamicBasis>> bases_;
  std::vector<int> class_of_;
  int rank_estimate_ = 0;
  long long init_ops_ = 0;
};

UnionResult matroid_union(const std::vector<Matroid>& matroids);
UnionResult kfold_union(const Matroid& matroid, int k);

struct PackingResult {
  int value = 0;
  std::vector<std::vector<Element>> sets;
  OracleStats stats;
};

// Largest number of disjoint bases.
PackingResult packing(const Matroid& matroid);
// Fewest independent sets covering the ground set.
PackingResult covering(const Matroid& matroid);

}  // namespace dynmat

#endif  // DYNMAT_UNION_HPP_
