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

#include "dynmat/exchange_bst.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynmat/error.hpp"

namespace dynmat {

ExchangeBst::ExchangeBst(DynamicOracle& oracle, BstVariant variant, std::span<const Element> s,
                         VersionId q_s, std::span<const Element> x, int beta)
    : oracle_(oracle),
      variant_(variant),
      beta_(std::max(1, beta)),
      q_external_(q_s),
      q_cur_(q_s),
      root_cur_(q_s),
      s_cur_(static_cast<size_t>(oracle.ground_size()), 0),
      in_delta_(static_cast<size_t>(oracle.ground_size()), 0) {
  for (Element e : s) {
    if (e < 0 || e >= oracle.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
    s_cur_[e] = 1;
  }
  s_size_ = static_cast<int>(s.size());
  if (oracle_.size(q_s) != s_size_) fail(ErrorCode::kInvalidArgument, "query-set does not match S");
  if (variant_ != BstVariant::kSink) {
    for (Element e : x) {
      if (e < 0 || e >= oracle.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
      const bool inside = s_cur_[e] != 0;
      if (inside != (variant_ == BstVariant::kCircuit)) {
        fail(ErrorCode::kVariantSetMismatch, std::to_string(e));
      }
      if (leaf_of_.count(e)) fail(ErrorCode::kInvalidArgument, "duplicate element in X");
      leaf_of_[e] = static_cast<int>(leaves_.size());
      leaves_.push_back(e);
      alive_.push_back(1);
    }
  }
  build();
}

ExchangeBst::~ExchangeBst() {
  release_tree();
  drop(q_cur_);
}

void ExchangeBst::drop(VersionId v) {
  if (v == q_external_ || !oracle_.is_live(v)) return;
  oracle_.release(v);
}

VersionId ExchangeBst::with_x(VersionId v, Element x) {
  return variant_ == BstVariant::kCoCircuit ? oracle_.insert(v, x) : oracle_.erase(v, x);
}

VersionId ExchangeBst::without_x(VersionId v, Element x) {
  return variant_ == BstVariant::kCoCircuit ? oracle_.erase(v, x) : oracle_.insert(v, x);
}

void ExchangeBst::release_tree() {
  // Node 0 never owns a version: root_cur_ stands in for it.
  for (size_t i = 1; i < nodes_.size(); ++i) drop(nodes_[i].version);
  if (!(root_cur_ == q_cur_)) drop(root_cur_);
  nodes_.clear();
  root_cur_ = q_cur_;
}

void ExchangeBst::build() {
  nodes_.clear();
  root_cur_ = q_cur_;
  if (variant_ == BstVariant::kSink || leaves_.empty()) return;
  VersionId root = q_cur_;
  for (Element x : leaves_) {
    const VersionId next = with_x(root, x);
    if (!(root == q_cur_)) drop(root);
    root = next;
  }
  nodes_.reserve(2 * leaves_.size());
  build_node(0, static_cast<int>(leaves_.size()), root);
  root_cur_ = root;
}

int ExchangeBst::build_node(int lo, int hi, VersionId version) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{lo, hi, -1, -1, hi - lo, version});
  if (hi - lo == 1) return id;
  const int mid = lo + (hi - lo) / 2;
  VersionId left = version;
  for (int i = mid; i < hi; ++i) {
    const VersionId next = without_x(left, leaves_[i]);
    if (!(left == version)) drop(left);
    left = next;
  }
  VersionId right = version;
  for (int i = lo; i < mid; ++i) {
    const VersionId next = without_x(right, leaves_[i]);
    if (!(right == version)) drop(right);
    right = next;
  }
  const int l = build_node(lo, mid, left);
  const int r = build_node(mid, hi, right);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

int ExchangeBst::live_size() const {
  if (variant_ == BstVariant::kSink) return 1;
  return nodes_.empty() ? 0 : nodes_[0].live;
}

bool ExchangeBst::contains(Element x) const {
  auto it = leaf_of_.find(x);
  return it != leaf_of_.end() && alive_[it->second];
}

int ExchangeBst::depth() const {
  int d = 0;
  for (size_t m = leaves_.size(); m > 1; m = (m + 1) / 2) ++d;
  return d;
}

// Probe one node: its set adjusted by the pending updates and by y.
bool ExchangeBst::test(VersionId base, int node_live, Element y) {
  if (node_live == 0) return false;
  std::vector<VersionId> temps;
  VersionId cur = base;
  for (Element e : delta_) {
    cur = s_cur_[e] ? oracle_.insert(cur, e) : oracle_.erase(cur, e);
    temps.push_back(cur);
  }
  if (y != kSource) {
    cur = variant_ == BstVariant::kCoCircuit ? oracle_.erase(cur, y) : oracle_.insert(cur, y);
    temps.push_back(cur);
  }
  const int r = oracle_.query(cur);
  const int size = oracle_.size(cur);
  for (VersionId t : temps) oracle_.release(t);
  switch (variant_) {
    case BstVariant::kCoCircuit:
      return y == kSource ? r > s_size_ : r >= s_size_;
    case BstVariant::kCircuit:
    case BstVariant::kSink:
      return r == size;
  }
  return false;
}

// Same predicate against the always-current root set: no pending updates.
bool ExchangeBst::root_test(Element y) {
  if (variant_ == BstVariant::kCoCircuit && y == kSource) return oracle_.query(root_cur_) > s_size_;
  const VersionId probe = variant_ == BstVariant::kCoCircuit ? oracle_.erase(root_cur_, y)
                                                             : oracle_.insert(root_cur_, y);
  const int r = oracle_.query(probe);
  const int size = oracle_.size(probe);
  oracle_.release(probe);
  return variant_ == BstVariant::kCoCircuit ? r >= s_size_ : r == size;
}

std::optional<Element> ExchangeBst::find(Element y) {
  if (y == kSource) {
    if (variant_ != BstVariant::kCoCircuit) fail(ErrorCode::kWrongSideElement, "source");
  } else {
    if (y < 0 || y >= oracle_.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
    const bool inside = s_cur_[y] != 0;
    if (inside != (variant_ == BstVariant::kCoCircuit)) {
      fail(ErrorCode::kWrongSideElement, std::to_string(y));
    }
  }
  if (live_size() == 0) return std::nullopt;
  if (!root_test(y)) return std::nullopt;
  if (variant_ == BstVariant::kSink) return kSink;

  int v = 0;
  while (nodes_[v].left >= 0) {
    const Node& left = nodes_[nodes_[v].left];
    if (test(left.version, left.live, y)) {
      v = nodes_[v].left;
      continue;
    }
    const int r = nodes_[v].right;
    if (audit_ && !test(nodes_[r].version, nodes_[r].live, y)) {
      throw std::logic_error("exchange tree descended into a branch without a valid exchange");
    }
    v = r;
  }
  return leaves_[nodes_[v].lo];
}

std::vector<int> ExchangeBst::path_to(int leaf) const {
  std::vector<int> path;
  int v = 0;
  while (true) {
    path.push_back(v);
    if (nodes_[v].left < 0) break;
    v = leaf < nodes_[nodes_[v].left].hi ? nodes_[v].left : nodes_[v].right;
  }
  return path;
}

void ExchangeBst::erase(Element x) {
  if (x == kSink || variant_ == BstVariant::kSink) return;
  auto it = leaf_of_.find(x);
  if (it == leaf_of_.end() || !alive_[it->second]) fail(ErrorCode::kElementNotInX, std::to_string(x));
  const int leaf = it->second;
  alive_[leaf] = 0;
  for (int v : path_to(leaf)) {
    Node& node = nodes_[v];
    node.live--;
    if (v == 0) continue;  // root set is tracked by root_cur_
    const VersionId next = without_x(node.version, x);
    drop(node.version);
    node.version = next;
  }
  const VersionId next_cur = without_x(root_cur_, x);
  drop(root_cur_);
  root_cur_ = next_cur;
}

void ExchangeBst::replace(Element x, Element y) {
  if (variant_ == BstVariant::kSink) fail(ErrorCode::kInvalidArgument, "sink tree has no leaves");
  auto it = leaf_of_.find(x);
  if (it == leaf_of_.end() || !alive_[it->second]) fail(ErrorCode::kElementNotInX, std::to_string(x));
  if (contains(y)) fail(ErrorCode::kElementAlreadyInX, std::to_string(y));
  if (y < 0 || y >= oracle_.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
  if ((s_cur_[y] != 0) != (variant_ == BstVariant::kCircuit)) {
    fail(ErrorCode::kWrongSideElement, std::to_string(y));
  }
  const int leaf = it->second;
  leaf_of_.erase(it);
  leaf_of_[y] = leaf;
  leaves_[leaf] = y;
  if (in_delta_[y]) {
    // y's membership in S changed since the last build; node sets would
    // disagree with it, so start over from the current S.
    rebuild();
    return;
  }
  auto swap_in = [&](VersionId v) {
    const VersionId mid = without_x(v, x);
    const VersionId out = with_x(mid, y);
    drop(v);
    oracle_.release(mid);
    return out;
  };
  for (int v : path_to(leaf)) {
    if (v != 0) nodes_[v].version = swap_in(nodes_[v].version);
  }
  root_cur_ = swap_in(root_cur_);
}

void ExchangeBst::update(std::span<const Element> delta) {
  bool changed = false;
  for (Element e : delta) {
    if (e == kSource || e == kSink) continue;
    if (e < 0 || e >= oracle_.ground_size()) fail(ErrorCode::kElementOutOfGroundSet);
    if (contains(e)) fail(ErrorCode::kVariantSetMismatch, "update touches a tree element");
    changed = true;
    const bool adding = s_cur_[e] == 0;
    s_cur_[e] = adding ? 1 : 0;
    s_size_ += adding ? 1 : -1;
    const VersionId q = adding ? oracle_.insert(q_cur_, e) : oracle_.erase(q_cur_, e);
    if (variant_ != BstVariant::kSink) {
      const VersionId r = adding ? oracle_.insert(root_cur_, e) : oracle_.erase(root_cur_, e);
      drop(root_cur_);
      root_cur_ = r;
    }
    drop(q_cur_);
    q_cur_ = q;
    if (variant_ == BstVariant::kSink) root_cur_ = q_cur_;
    if (in_delta_[e]) {
      in_delta_[e] = 0;
      delta_.erase(std::find(delta_.begin(), delta_.end(), e));
    } else {
      in_delta_[e] = 1;
      delta_.push_back(e);
    }
  }
  if (!changed) return;
  if (oracle_.query(q_cur_) != s_size_) fail(ErrorCode::kResultingSetDependent);
  if (static_cast<int>(delta_.size()) > beta_) rebuild();
}

void ExchangeBst::rebuild() {
  release_tree();
  std::vector<Element> kept;
  for (size_t i = 0; i < leaves_.size(); ++i) {
    if (alive_[i]) kept.push_back(leaves_[i]);
  }
  leaves_ = std::move(kept);
  alive_.assign(leaves_.size(), 1);
  leaf_of_.clear();
  for (size_t i = 0; i < leaves_.size(); ++i) leaf_of_[leaves_[i]] = static_cast<int>(i);
  for (Element e : delta_) in_delta_[e] = 0;
  delta_.clear();
  build();
  ++rebuilds_;
}

}  // namespace dynmat
