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

#ifndef DYNMAT_ORACLE_HPP_
#define DYNMAT_ORACLE_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "dynmat/matroid.hpp"
#include "dynmat/types.hpp"

namespace dynmat {

// Handle to a query-set. The generation tag detects use after release.
struct VersionId {
  std::uint32_t slot = 0;
  std::uint32_t generation = 0;
  friend bool operator==(VersionId a, VersionId b) = default;
};

struct OracleStats {
  std::uint64_t inserts = 0;
  std::uint64_t deletes = 0;
  std::uint64_t rank_queries = 0;
  std::uint64_t live_versions = 0;
  std::uint64_t max_set_size = 0;

  std::uint64_t total_ops() const { return inserts + deletes + rank_queries; }
  OracleStats& operator+=(const OracleStats& o);
};

OracleStats operator-(const OracleStats& a, const OracleStats& b);

// Versioned query-sets: every set is one insertion or deletion away from an
// earlier one. Counts Insert, Delete and Query calls.
class DynamicOracle {
 public:
  explicit DynamicOracle(Matroid matroid);
  ~DynamicOracle();
  DynamicOracle(const DynamicOracle&) = delete;
  DynamicOracle& operator=(const DynamicOracle&) = delete;

  const Matroid& matroid() const { return matroid_; }
  int ground_size() const { return n_; }

  static VersionId empty() { return VersionId{0, 0}; }

  VersionId insert(VersionId v, Element x);
  VersionId erase(VersionId v, Element x);
  int query(VersionId v);

  // Bookkeeping, not counted as oracle operations.
  int size(VersionId v) const;
  bool contains(VersionId v, Element x);
  std::vector<Element> materialize(VersionId v) const;
  void release(VersionId v);
  bool is_live(VersionId v) const;

  OracleStats stats() const;

  // Number of single-element state toggles spent moving the cursor.
  std::uint64_t cursor_steps() const { return cursor_steps_; }

 private:
  struct Node {
    std::uint32_t parent = 0;
    Element element = -1;
    std::uint32_t size = 0;
    std::uint32_t depth = 0;
    std::uint32_t children = 0;
    std::uint32_t generation = 0;
    std::int32_t rank = -1;  // -1 until first query
    bool is_insert = false;
    bool released = false;
    bool free = false;
  };

  std::uint32_t check(VersionId v) const;
  VersionId create(VersionId v, Element x, bool is_insert);
  void move_cursor(std::uint32_t target);
  void apply(std::uint32_t slot);
  void undo(std::uint32_t slot);
  void reclaim(std::uint32_t slot);

  Matroid matroid_;
  int n_;
  std::unique_ptr<RankBackend> backend_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<char> member_;
  std::uint32_t cursor_ = 0;
  std::vector<std::uint32_t> scratch_;
  OracleStats stats_;
  std::uint64_t cursor_steps_ = 0;
};

}  // namespace dynmat

#endif  // DYNMAT_ORACLE_HPP_
