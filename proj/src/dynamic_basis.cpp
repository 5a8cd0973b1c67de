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

#include "dynmat/dynamic_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dynmat/error.hpp"

namespace dynmat {

Weights index_weights(int ground_size) {
  auto w = std::make_shared<std::vector<std::int64_t>>(ground_size);
  std::iota(w->begin(), w->end(), 0);
  return w;
}

namespace {

int ceil_sqrt(int k) {
  int c = static_cast<int>(std::sqrt(static_cast<double>(k)));
  while (c * c < k) ++c;
  return std::max(c, 1);
}

}  // namespace

BlockStructure::BlockStructure(DynamicOracle& oracle, std::span<const Element> elements,
                               Weights weights, int k)
    : oracle_(oracle), weights_(weights ? std::move(weights) : index_weights(oracle.ground_size())) {
  std::vector<Element> order(elements.begin(), elements.end());
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return lighter(a, b); });
  for (size_t i = 0; i < order.size(); ++i) {
    if (!members_.insert(order[i]).second) fail(ErrorCode::kElementAlreadyPresent);
    if (i > 0 && (*weights_)[order[i]] == (*weights_)[order[i - 1]]) {
      fail(ErrorCode::kDuplicateWeights);
    }
  }
  block_ = ceil_sqrt(std::max<int>(k > 0 ? k : static_cast<int>(order.size()), 1));

  VersionId cur = DynamicOracle::empty();
  int rank = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i % block_ == 0) blocks_.emplace_back();
    blocks_.back().push_back(order[i]);
    const VersionId next = oracle_.insert(cur, order[i]);
    const int r = oracle_.query(next);
    if (r > rank) basis_.insert(order[i]);
    rank = r;
    if (!(cur == DynamicOracle::empty()) && (prefix_.empty() || !(prefix_.back() == cur))) {
      oracle_.release(cur);
    }
    cur = next;
    if (i + 1 == order.size() || (i + 1) % block_ == 0) {
      prefix_.push_back(cur);
      rank_.push_back(rank);
    }
  }
  if (verify_) check();
}

BlockStructure::~BlockStructure() {
  for (VersionId v : prefix_)
    if (oracle_.is_live(v)) oracle_.release(v);
}

bool BlockStructure::lighter(Element a, Element b) const {
  const auto wa = (*weights_)[a], wb = (*weights_)[b];
  return wa != wb ? wa < wb : a < b;
}

int BlockStructure::block_of(Element x) const {
  int lo = 0, hi = static_cast<int>(blocks_.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (lighter(blocks_[mid].back(), x)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

VersionId BlockStructure::prefix_before(int block) const {
  return block > 0 ? prefix_[block - 1] : DynamicOracle::empty();
}

int BlockStructure::rank_before(int block) const { return block > 0 ? rank_[block - 1] : 0; }

void BlockStructure::set_prefix(int block, VersionId v) {
  oracle_.release(prefix_[block]);
  prefix_[block] = v;
}

std::vector<Element> BlockStructure::basis() const {
  std::vector<Element> out;
  for (const auto& b : blocks_)
    for (Element e : b)
      if (basis_.count(e)) out.push_back(e);
  return out;
}

EraseOutcome BlockStructure::erase(Element x) {
  if (!members_.count(x)) fail(ErrorCode::kElementAbsent, "element " + std::to_string(x));
  const int i = block_of(x);
  EraseOutcome out;
  out.was_basis = basis_.erase(x) != 0;
  members_.erase(x);
  auto& blk = blocks_[i];
  blk.erase(std::find(blk.begin(), blk.end(), x));
  const int count = static_cast<int>(blocks_.size());
  for (int j = i; j < count; ++j) set_prefix(j, oracle_.erase(prefix_[j], x));

  if (out.was_basis) {
    // Prefix ranks drop by one until the first block holding the replacement.
    int hit = -1;
    for (int j = i; j < count; ++j) {
      const int r = oracle_.query(prefix_[j]);
      if (r == rank_[j]) {
        hit = j;
        break;
      }
      rank_[j] = r;
    }
    if (hit >= 0) {
      VersionId cur = prefix_before(hit);
      int rank = rank_before(hit);
      for (Element z : blocks_[hit]) {
        const VersionId next = oracle_.insert(cur, z);
        const int r = oracle_.query(next);
        if (!(cur == prefix_before(hit))) oracle_.release(cur);
        cur = next;
        if (r > rank && !basis_.count(z)) {
          basis_.insert(z);
          out.replacement = z;
          break;
        }
        rank = r;
      }
      if (!(cur == prefix_before(hit))) oracle_.release(cur);
    }
  }
  rebalance(i);
  if (verify_) check();
  return out;
}

void BlockStructure::insert(Element x) {
  if (members_.count(x)) fail(ErrorCode::kElementPresent, "element " + std::to_string(x));
  for (Element m : members_) {
    if ((*weights_)[m] == (*weights_)[x]) fail(ErrorCode::kDuplicateWeights);
  }
  members_.insert(x);
  if (blocks_.empty()) {
    blocks_.push_back({x});
    prefix_.push_back(oracle_.insert(DynamicOracle::empty(), x));
    rank_.push_back(oracle_.query(prefix_.back()));
    if (rank_.back() > 0) basis_.insert(x);
    if (verify_) check();
    return;
  }
  const int i = block_of(x);
  auto& blk = blocks_[i];
  blk.insert(std::lower_bound(blk.begin(), blk.end(), x,
                              [&](Element a, Element b) { return lighter(a, b); }),
             x);
  for (int j = i; j < static_cast<int>(blocks_.size()); ++j) {
    set_prefix(j, oracle_.insert(prefix_[j], x));
  }
  if (static_cast<int>(blocks_[i].size()) > 2 * block_) split(i);
  if (verify_) check();
}

void BlockStructure::split(int block) {
  std::vector<Element> tail(blocks_[block].begin() + blocks_[block].size() / 2,
                            blocks_[block].end());
  blocks_[block].resize(blocks_[block].size() / 2);
  VersionId cur = prefix_before(block);
  for (Element e : blocks_[block]) {
    const VersionId next = oracle_.insert(cur, e);
    if (!(cur == prefix_before(block))) oracle_.release(cur);
    cur = next;
  }
  const int r = oracle_.query(cur);
  blocks_.insert(blocks_.begin() + block + 1, std::move(tail));
  prefix_.insert(prefix_.begin() + block, cur);
  rank_.insert(rank_.begin() + block, r);
}

void BlockStructure::rebalance(int block) {
  const int floor = (block_ + 1) / 2;
  if (blocks_[block].empty()) {
    oracle_.release(prefix_[block]);
    blocks_.erase(blocks_.begin() + block);
    prefix_.erase(prefix_.begin() + block);
    rank_.erase(rank_.begin() + block);
    return;
  }
  if (static_cast<int>(blocks_[block].size()) >= floor || blocks_.size() < 2) return;
  // Merge with the next block, or the previous one at the end. The earlier
  // prefix of the pair disappears.
  const int first = block + 1 < static_cast<int>(blocks_.size()) ? block : block - 1;
  auto& a = blocks_[first];
  a.insert(a.end(), blocks_[first + 1].begin(), blocks_[first + 1].end());
  blocks_.erase(blocks_.begin() + first + 1);
  oracle_.release(prefix_[first]);
  prefix_.erase(prefix_.begin() + first);
  rank_.erase(rank_.begin() + first);
  if (static_cast<int>(blocks_[first].size()) > 2 * block_) split(first);
}

void BlockStructure::check() const {
  const Matroid& m = oracle_.matroid();
  std::vector<Element> prefix;
  int rank = 0;
  for (size_t j = 0; j < blocks_.size(); ++j) {
    if (blocks_[j].empty()) throw std::logic_error("empty block");
    for (Element e : blocks_[j]) {
      if (!prefix.empty() && !lighter(prefix.back(), e)) throw std::logic_error("block order");
      prefix.push_back(e);
      const int r = m.rank_of(prefix);
      if ((r > rank) != (basis_.count(e) != 0)) throw std::logic_error("basis drift");
      rank = r;
    }
    if (rank_[j] != rank) throw std::logic_error("prefix rank drift");
    if (oracle_.size(prefix_[j]) != static_cast<int>(prefix.size())) {
      throw std::logic_error("prefix version drift");
    }
  }
}

// ------------------------------------------------------------ sparsifier

DynamicBasis::DynamicBasis(DynamicOracle& oracle, std::span<const Element> elements,
                           Weights weights)
    : oracle_(oracle),
      weights_(weights ? std::move(weights) : index_weights(oracle.ground_size())),
      leaf_of_(oracle.ground_size(), -1) {
  std::vector<Element> xs(elements.begin(), elements.end());
  std::sort(xs.begin(), xs.end());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0 || xs[i] >= oracle.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
    if (i > 0 && xs[i] == xs[i - 1]) fail(ErrorCode::kElementAlreadyPresent);
  }
  {
    std::vector<std::int64_t> w;
    for (Element e : xs) w.push_back((*weights_)[e]);
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) fail(ErrorCode::kDuplicateWeights);
  }
  // Rank of the whole set, one pass.
  int rank = 0;
  {
    VersionId cur = DynamicOracle::empty();
    for (Element e : xs) {
      const VersionId next = oracle_.insert(cur, e);
      if (!(cur == DynamicOracle::empty())) oracle_.release(cur);
      cur = next;
    }
    rank = oracle_.query(cur);
    if (!(cur == DynamicOracle::empty())) oracle_.release(cur);
  }
  leaf_capacity_ = std::max(2 * rank, 2);
  live_ = static_cast<int>(xs.size());
  root_ = build(std::move(xs), -1, 1);
}

int DynamicBasis::build(std::vector<Element> elements, int parent, int depth) {
  height_ = std::max(height_, depth);
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{parent, nullptr});
  if (static_cast<int>(elements.size()) <= leaf_capacity_) {
    for (Element e : elements) leaf_of_[e] = id;
    nodes_[id].store = std::make_unique<BlockStructure>(oracle_, elements, weights_);
    return id;
  }
  const size_t half = elements.size() / 2;
  std::vector<Element> right(elements.begin() + half, elements.end());
  elements.resize(half);
  const int l = build(std::move(elements), id, depth + 1);
  const int r = build(std::move(right), id, depth + 1);
  std::vector<Element> merged = nodes_[l].store->basis();
  const std::vector<Element> rb = nodes_[r].store->basis();
  merged.insert(merged.end(), rb.begin(), rb.end());
  // Children must be built before the parent's store; k covers both bases.
  nodes_[id].store = std::make_unique<BlockStructure>(oracle_, merged, weights_,
                                                      std::max(leaf_capacity_, 1));
  return id;
}

bool DynamicBasis::contains(Element x) const {
  return x >= 0 && x < static_cast<int>(leaf_of_.size()) && leaf_of_[x] >= 0;
}

std::optional<Element> DynamicBasis::erase(Element x) {
  if (!contains(x)) fail(ErrorCode::kElementAbsent, "element " + std::to_string(x));
  int node = leaf_of_[x];
  leaf_of_[x] = -1;
  --live_;
  EraseOutcome out = nodes_[node].store->erase(x);
  last_touched_ = 1;
  while (out.was_basis && nodes_[node].parent >= 0) {
    node = nodes_[node].parent;
    if (out.replacement) nodes_[node].store->insert(*out.replacement);
    out = nodes_[node].store->erase(x);
    ++last_touched_;
  }
  if (node == root_ && out.was_basis) return out.replacement;
  return std::nullopt;
}

void DynamicBasis::set_verify(bool on) {
  for (Node& n : nodes_) n.store->set_verify(on);
}

}  // namespace dynmat
