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

#ifndef DYNMAT_DYNAMIC_BASIS_HPP_
#define DYNMAT_DYNAMIC_BASIS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "dynmat/oracle.hpp"

namespace dynmat {

using Weights = std::shared_ptr<const std::vector<std::int64_t>>;

// Weight w(e) = e for every element of the ground set.
Weights index_weights(int ground_size);

struct EraseOutcome {
  bool was_basis = false;
  std::optional<Element> replacement;
};

// Min-weight basis of a small set kept in weight-ordered blocks of about
// sqrt(k) elements, each with a cached prefix version and rank.
class BlockStructure {
 public:
  BlockStructure(DynamicOracle& oracle, std::span<const Element> elements, Weights weights,
                 int k = 0);
  ~BlockStructure();
  BlockStructure(const BlockStructure&) = delete;
  BlockStructure& operator=(const BlockStructure&) = delete;

  EraseOutcome erase(Element x);
  // The caller guarantees x stays outside the min-weight basis.
  void insert(Element x);

  bool contains(Element x) const { return members_.count(x) != 0; }
  bool in_basis(Element x) const { return basis_.count(x) != 0; }
  std::vector<Element> basis() const;  // weight order
  int basis_size() const { return static_cast<int>(basis_.size()); }
  int size() const { return static_cast<int>(members_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_size() const { return block_; }
  const std::vector<std::vector<Element>>& blocks() const { return blocks_; }
  // Recompute from scratch after every change; throws std::logic_error on drift.
  void set_verify(bool on) { verify_ = on; }

 private:
  bool lighter(Element a, Element b) const;
  int block_of(Element x) const;
  VersionId prefix_before(int block) const;
  int rank_before(int block) const;
  void set_prefix(int block, VersionId v);
  void split(int block);
  void rebalance(int block);
  void check() const;

  DynamicOracle& oracle_;
  Weights weights_;
  int block_ = 1;
  std::vector<std::vector<Element>> blocks_;
  std::vector<VersionId> prefix_;
  std::vector<int> rank_;
  std::unordered_set<Element> members_;
  std::unordered_set<Element> basis_;
  bool verify_ = false;
};

// Decremental min-weight basis: a balanced tree whose leaves hold at most
// about 2r elements and whose inner nodes hold the union of their children's
// bases.
class DynamicBasis {
 public:
  // weights is indexed by element over the whole ground set; null means index order.
  DynamicBasis(DynamicOracle& oracle, std::span<const Element> elements, Weights weights = nullptr);
  DynamicBasis(const DynamicBasis&) = delete;
  DynamicBasis& operator=(const DynamicBasis&) = delete;

  // Removes x; returns the element that replaces it in the basis, if any.
  std::optional<Element> erase(Element x);

  std::vector<Element> basis() const { return nodes_[root_].store->basis(); }
  bool in_basis(Element x) const { return nodes_[root_].store->in_basis(x); }
  bool contains(Element x) const;
  int size() const { return live_; }
  int height() const { return height_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int leaf_capacity() const { return leaf_capacity_; }
  int last_nodes_touched() const { return last_touched_; }
  void set_verify(bool on);

 private:
  struct Node {
    int parent = -1;
    std::unique_ptr<BlockStructure> store;
  };
  int build(std::vector<Element> elements, int parent, int depth);

  DynamicOracle& oracle_;
  Weights weights_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_of_;  // per ground element, -1 when absent
  int root_ = 0;
  int live_ = 0;
  int height_ = 0;
  int leaf_capacity_ = 2;
  int last_touched_ = 0;
};

}  // namespace dynmat

#endif  // DYNMAT_DYNAMIC_BASIS_HPP_
