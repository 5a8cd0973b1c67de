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

#ifndef DYNMAT_EXCHANGE_BST_HPP_
#define DYNMAT_EXCHANGE_BST_HPP_

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dynmat/oracle.hpp"

namespace dynmat {

enum class BstVariant {
  kCoCircuit,  // tree elements lie outside S
  kCircuit,    // tree elements lie inside S
  kSink,       // single target t
};

// Balanced tree over candidate elements X whose nodes hold query-sets for S
// extended (or reduced) by the node's part of X. find() locates a valid
// exchange partner with O(log |X|) rank probes per pending update.
class ExchangeBst {
 public:
  // q_s must materialize s; the caller keeps ownership of q_s.
  ExchangeBst(DynamicOracle& oracle, BstVariant variant, std::span<const Element> s,
              VersionId q_s, std::span<const Element> x, int beta);
  ~ExchangeBst();
  ExchangeBst(const ExchangeBst&) = delete;
  ExchangeBst& operator=(const ExchangeBst&) = delete;

  // Co-circuit: y in S (or kSource for a free element). Circuit and sink:
  // y outside S. Returns the partner, kSink for a sink hit, or nullopt.
  std::optional<Element> find(Element y);

  void erase(Element x);               // x = kSink is a no-op
  void replace(Element x, Element y);  // y takes x's leaf
  void update(std::span<const Element> delta);

  BstVariant variant() const { return variant_; }
  int live_size() const;
  bool contains(Element x) const;
  bool in_current_set(Element e) const { return s_cur_[e] != 0; }
  int current_size() const { return s_size_; }
  int pending_updates() const { return static_cast<int>(delta_.size()); }
  int rebuilds() const { return rebuilds_; }
  int beta() const { return beta_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int depth() const;

  // Audit mode re-tests every branch taken without a probe and throws
  // std::logic_error if it holds no valid exchange.
  void set_audit(bool on) { audit_ = on; }

 private:
  struct Node {
    int lo = 0;
    int hi = 0;
    int left = -1;
    int right = -1;
    int live = 0;
    VersionId version;
  };

  void build();
  int build_node(int lo, int hi, VersionId version);
  void release_tree();
  void drop(VersionId v);
  bool test(VersionId base, int node_live, Element y);
  bool root_test(Element y);
  void rebuild();
  std::vector<int> path_to(int leaf) const;
  // Versions after adding x to / removing x from the X part of a node's set.
  VersionId with_x(VersionId v, Element x);
  VersionId without_x(VersionId v, Element x);

  DynamicOracle& oracle_;
  BstVariant variant_;
  int beta_;
  VersionId q_external_;
  VersionId q_cur_;   // S_current
  VersionId root_cur_;  // S_current + X (co-circuit) or S_current - X (circuit)
  std::vector<char> s_cur_;
  int s_size_ = 0;
  std::vector<Element> leaves_;
  std::vector<char> alive_;
  std::unordered_map<Element, int> leaf_of_;
  std::vector<Node> nodes_;
  std::vector<Element> delta_;
  std::vector<char> in_delta_;
  int rebuilds_ = 0;
  bool audit_ = false;
};

}  // namespace dynmat

#endif  // DYNMAT_EXCHANGE_BST_HPP_
