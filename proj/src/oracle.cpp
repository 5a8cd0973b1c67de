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

#include "dynmat/oracle.hpp"

#include <algorithm>
#include <string>

#include "dynmat/error.hpp"

namespace dynmat {

OracleStats& OracleStats::operator+=(const OracleStats& o) {
  inserts += o.inserts;
  deletes += o.deletes;
  rank_queries += o.rank_queries;
  live_versions += o.live_versions;
  max_set_size = std::max(max_set_size, o.max_set_size);
  return *this;
}

OracleStats operator-(const OracleStats& a, const OracleStats& b) {
  OracleStats d;
  d.inserts = a.inserts - b.inserts;
  d.deletes = a.deletes - b.deletes;
  d.rank_queries = a.rank_queries - b.rank_queries;
  d.live_versions = a.live_versions;
  d.max_set_size = a.max_set_size;
  return d;
}

DynamicOracle::DynamicOracle(Matroid matroid)
    : matroid_(std::move(matroid)),
      n_(matroid_.ground_size()),
      backend_(matroid_.make_backend()),
      member_(static_cast<size_t>(n_), 0) {
  Node root;
  root.rank = 0;
  nodes_.push_back(root);
}

DynamicOracle::~DynamicOracle() = default;

std::uint32_t DynamicOracle::check(VersionId v) const {
  if (v.slot >= nodes_.size()) fail(ErrorCode::kUnknownVersion);
  const Node& node = nodes_[v.slot];
  if (node.free || node.generation != v.generation || node.released) {
    fail(ErrorCode::kUnknownVersion, "slot " + std::to_string(v.slot));
  }
  return v.slot;
}

VersionId DynamicOracle::create(VersionId v, Element x, bool is_insert) {
  const std::uint32_t parent = check(v);
  if (x < 0 || x >= n_) fail(ErrorCode::kElementOutOfGroundSet, std::to_string(x));
  move_cursor(parent);
  if (is_insert && member_[x]) fail(ErrorCode::kElementAlreadyPresent, std::to_string(x));
  if (!is_insert && !member_[x]) fail(ErrorCode::kElementAbsent, std::to_string(x));

  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& node = nodes_[slot];
  const Node& par = nodes_[parent];
  node.parent = parent;
  node.element = x;
  node.is_insert = is_insert;
  node.size = is_insert ? par.size + 1 : par.size - 1;
  node.depth = par.depth + 1;
  node.children = 0;
  node.rank = -1;
  node.released = false;
  node.free = false;
  nodes_[parent].children++;

  if (is_insert) {
    stats_.inserts++;
  } else {
    stats_.deletes++;
  }
  stats_.live_versions++;
  stats_.max_set_size = std::max<std::uint64_t>(stats_.max_set_size, node.size);
  return VersionId{slot, node.generation};
}

VersionId DynamicOracle::insert(VersionId v, Element x) { return create(v, x, true); }

VersionId DynamicOracle::erase(VersionId v, Element x) { return create(v, x, false); }

int DynamicOracle::query(VersionId v) {
  const std::uint32_t slot = check(v);
  stats_.rank_queries++;
  if (nodes_[slot].rank < 0) {
    move_cursor(slot);
    nodes_[slot].rank = backend_->rank();
  }
  return nodes_[slot].rank;
}

int DynamicOracle::size(VersionId v) const { return static_cast<int>(nodes_[check(v)].size); }

bool DynamicOracle::contains(VersionId v, Element x) {
  const std::uint32_t slot = check(v);
  if (x < 0 || x >= n_) return false;
  move_cursor(slot);
  return member_[x] != 0;
}

std::vector<Element> DynamicOracle::materialize(VersionId v) const {
  std::uint32_t slot = check(v);
  std::vector<char> decided(static_cast<size_t>(n_), 0);
  std::vector<Element> out;
  // The delta nearest to v decides each element.
  while (slot != 0) {
    const Node& node = nodes_[slot];
    if (!decided[node.element]) {
      decided[node.element] = 1;
      if (node.is_insert) out.push_back(node.element);
    }
    slot = node.parent;
  }
  std::sort(out.begin(), out.end());
  return out;
}

void DynamicOracle::release(VersionId v) {
  const std::uint32_t slot = check(v);
  if (slot == 0) return;
  nodes_[slot].released = true;
  stats_.live_versions--;
  reclaim(slot);
}

bool DynamicOracle::is_live(VersionId v) const {
  if (v.slot >= nodes_.size()) return false;
  const Node& node = nodes_[v.slot];
  return !node.free && !node.released && node.generation == v.generation;
}

void DynamicOracle::reclaim(std::uint32_t slot) {
  while (slot != 0 && nodes_[slot].released && nodes_[slot].children == 0) {
    Node& node = nodes_[slot];
    if (cursor_ == slot) {
      undo(slot);
      cursor_ = node.parent;
    }
    const std::uint32_t parent = node.parent;
    node.free = true;
    node.generation++;
    free_slots_.push_back(slot);
    nodes_[parent].children--;
    slot = parent;
  }
}

OracleStats DynamicOracle::stats() const { return stats_; }

void DynamicOracle::apply(std::uint32_t slot) {
  const Node& node = nodes_[slot];
  if (node.is_insert) {
    backend_->insert(node.element);
    member_[node.element] = 1;
  } else {
    backend_->erase(node.element);
    member_[node.element] = 0;
  }
  cursor_steps_++;
}

void DynamicOracle::undo(std::uint32_t slot) {
  const Node& node = nodes_[slot];
  if (node.is_insert) {
    backend_->erase(node.element);
    member_[node.element] = 0;
  } else {
    backend_->insert(node.element);
    member_[node.element] = 1;
  }
  cursor_steps_++;
}

void DynamicOracle::move_cursor(std::uint32_t target) {
  if (cursor_ == target) return;
  std::uint32_t a = cursor_;
  std::uint32_t b = target;
  scratch_.clear();
  while (nodes_[a].depth > nodes_[b].depth) {
    undo(a);
    a = nodes_[a].parent;
  }
  while (nodes_[b].depth > nodes_[a].depth) {
    scratch_.push_back(b);
    b = nodes_[b].parent;
  }
  while (a != b) {
    undo(a);
    a = nodes_[a].parent;
    scratch_.push_back(b);
    b = nodes_[b].parent;
  }
  for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) apply(*it);
  cursor_ = target;
}

}  // namespace dynmat
