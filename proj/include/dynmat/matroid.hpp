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

#ifndef DYNMAT_MATROID_HPP_
#define DYNMAT_MATROID_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynmat/types.hpp"

namespace dynmat {

enum class MatroidKind {
  kPartition,
  kGraphic,
  kBicircular,
  kConvexTransversal,
  kSimpleScheduling,
  kLinear,
  kGammoid,
  kExplicit,
  kUniform,
};

const char* matroid_kind_name(MatroidKind kind);

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

// Mutable rank state over a set that changes one element at a time.
class RankBackend {
 public:
  virtual ~RankBackend() = default;
  virtual void insert(Element e) = 0;
  virtual void erase(Element e) = 0;
  virtual int rank() = 0;
};

namespace detail {
class MatroidImpl;
}

// Immutable matroid description. Cheap to copy; copies share state.
class Matroid {
 public:
  static Matroid partition(std::vector<int> color, std::vector<int> capacity);
  static Matroid graphic(int num_vertices, std::vector<Edge> edges);
  static Matroid bicircular(int num_vertices, std::vector<Edge> edges);
  // Slots run from 1 to num_slots; num_slots = 0 means the largest interval end.
  static Matroid convex_transversal(std::vector<Interval> intervals,
                                    int num_slots = 0);
  static Matroid scheduling(std::vector<int> deadlines);
  // Rows are elements. prime = 0 selects exact rational arithmetic.
  static Matroid linear(std::vector<std::vector<std::int64_t>> rows,
                        std::uint64_t prime = kDefaultPrime);
  // Strict gammoid: ground set is the vertex set of the digraph.
  static Matroid gammoid(int num_vertices, std::vector<Edge> arcs,
                         std::vector<int> sources);
  // independent_masks must be closed under taking subsets; n <= 16.
  static Matroid explicit_family(int n, std::vector<std::uint32_t> independent_masks);
  static Matroid uniform(int n, int rank);

  MatroidKind kind() const;
  int ground_size() const;
  std::string describe() const;

  int rank_of(std::span<const Element> set) const;
  bool is_independent(std::span<const Element> set) const;
  int full_rank() const;

  std::unique_ptr<RankBackend> make_backend() const;

  const detail::MatroidImpl& impl() const { return *impl_; }

 private:
  explicit Matroid(std::shared_ptr<const detail::MatroidImpl> impl);
  std::shared_ptr<const detail::MatroidImpl> impl_;
};

// Parameters exposed for reporting and for building problem reductions.
struct GraphData {
  int num_vertices = 0;
  std::vector<Edge> edges;
};
const GraphData* graph_data(const Matroid& m);  // graphic or bicircular, else null

}  // namespace dynmat

#endif  // DYNMAT_MATROID_HPP_
