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

#include "dynmat/matroid.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

#include "dynmat/error.hpp"
#include "matroid_impl.hpp"

namespace dynmat {
namespace detail {

std::unique_ptr<RankBackend> MatroidImpl::make_backend() const {
  return std::make_unique<RecomputeBackend>(*this);
}

std::string MatroidImpl::describe() const {
  std::ostringstream out;
  out << matroid_kind_name(kind_) << "(n=" << n_ << ")";
  return out.str();
}

namespace {

// ---------------------------------------------------------------- partition

class PartitionMatroid : public MatroidImpl {
 public:
  PartitionMatroid(std::vector<int> color, std::vector<int> capacity)
      : MatroidImpl(MatroidKind::kPartition, static_cast<int>(color.size())),
        color_(std::move(color)),
        capacity_(std::move(capacity)) {
    for (int c : color_) {
      if (c < 0 || c >= static_cast<int>(capacity_.size())) {
        fail(ErrorCode::kMalformedInstance, "color out of range");
      }
    }
    for (int cap : capacity_) {
      if (cap < 0) fail(ErrorCode::kMalformedInstance, "negative capacity");
    }
  }

  int rank(std::span<const Element> set) const override {
    std::vector<int> count(capacity_.size(), 0);
    int r = 0;
    for (Element e : set) {
      if (count[color_[e]]++ < capacity_[color_[e]]) ++r;
    }
    return r;
  }

  std::unique_ptr<RankBackend> make_backend() const override;

  std::vector<int> color_;
  std::vector<int> capacity_;
};

class PartitionBackend : public RankBackend {
 public:
  explicit PartitionBackend(const PartitionMatroid& m)
      : m_(m), count_(m.capacity_.size(), 0) {}
  void insert(Element e) override {
    const int c = m_.color_[e];
    if (count_[c]++ < m_.capacity_[c]) ++rank_;
  }
  void erase(Element e) override {
    const int c = m_.color_[e];
    if (--count_[c] < m_.capacity_[c]) --rank_;
  }
  int rank() override { return rank_; }

 private:
  const PartitionMatroid& m_;
  std::vector<int> count_;
  int rank_ = 0;
};

std::unique_ptr<RankBackend> PartitionMatroid::make_backend() const {
  return std::make_unique<PartitionBackend>(*this);
}

// ---------------------------------------------------------------- uniform

class UniformMatroid : public MatroidImpl {
 public:
  UniformMatroid(int n, int r) : MatroidImpl(MatroidKind::kUniform, n), r_(r) {
    if (r < 0) fail(ErrorCode::kMalformedInstance, "negative rank");
  }
  int rank(std::span<const Element> set) const override {
    return std::min(static_cast<int>(set.size()), r_);
  }
  std::unique_ptr<RankBackend> make_backend() const override;
  int r_;
};

class UniformBackend : public RankBackend {
 public:
  explicit UniformBackend(int r) : r_(r) {}
  void insert(Element) override { ++size_; }
  void erase(Element) override { --size_; }
  int rank() override { return std::min(size_, r_); }

 private:
  int r_;
  int size_ = 0;
};

std::unique_ptr<RankBackend> UniformMatroid::make_backend() const {
  return std::make_unique<UniformBackend>(r_);
}

// ---------------------------------------------------------------- explicit

class ExplicitMatroid : public MatroidImpl {
 public:
  ExplicitMatroid(int n, const std::vector<std::uint32_t>& masks)
      : MatroidImpl(MatroidKind::kExplicit, n) {
    if (n < 0 || n > 16) fail(ErrorCode::kGroundSetTooLarge, "explicit family needs n <= 16");
    const std::uint32_t full = 1u << n;
    std::vector<char> indep(full, 0);
    indep[0] = 1;
    for (std::uint32_t m : masks) {
      if (m >= full) fail(ErrorCode::kElementOutOfGroundSet, "mask outside ground set");
      indep[m] = 1;
    }
    for (std::uint32_t m = 1; m < full; ++m) {
      if (!indep[m]) continue;
      for (std::uint32_t rest = m; rest; rest &= rest - 1) {
        if (!indep[m & ~(rest & -rest)]) {
          fail(ErrorCode::kMalformedInstance, "family is not closed under subsets");
        }
      }
    }
    rank_.assign(full, 0);
    for (std::uint32_t m = 1; m < full; ++m) {
      if (indep[m]) {
        rank_[m] = static_cast<std::uint8_t>(std::popcount(m));
        continue;
      }
      std::uint8_t best = 0;
      for (std::uint32_t rest = m; rest; rest &= rest - 1) {
        best = std::max(best, rank_[m & ~(rest & -rest)]);
      }
      rank_[m] = best;
    }
  }

  int rank(std::span<const Element> set) const override {
    std::uint32_t m = 0;
    for (Element e : set) m |= 1u << e;
    return rank_[m];
  }
  std::unique_ptr<RankBackend> make_backend() const override;

  std::vector<std::uint8_t> rank_;
};

class ExplicitBackend : public RankBackend {
 public:
  explicit ExplicitBackend(const ExplicitMatroid& m) : m_(m) {}
  void insert(Element e) override { mask_ |= 1u << e; }
  void erase(Element e) override { mask_ &= ~(1u << e); }
  int rank() override { return m_.rank_[mask_]; }

 private:
  const ExplicitMatroid& m_;
  std::uint32_t mask_ = 0;
};

std::unique_ptr<RankBackend> ExplicitMatroid::make_backend() const {
  return std::make_unique<ExplicitBackend>(*this);
}

// ---------------------------------------------------------------- graphs

// Union-find over vertices with O(touched) reset. Tracks edge and vertex
// counts per component for the bicircular rank.
class ComponentForest {
 public:
  explicit ComponentForest(int num_vertices)
      : parent_(num_vertices), edges_(num_vertices), verts_(num_vertices),
        stamp_(num_vertices, 0) {}

  void reset() { ++epoch_; }

  int find(int v) {
    touch(v);
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Returns the change in graphic rank (0 or 1) and updates the bicircular sum.
  int add_edge(int u, int v, int& bicircular) {
    int a = find(u);
    int b = find(v);
    if (a == b) {
      bicircular -= std::min(edges_[a], verts_[a]);
      edges_[a]++;
      bicircular += std::min(edges_[a], verts_[a]);
      return 0;
    }
    bicircular -= std::min(edges_[a], verts_[a]) + std::min(edges_[b], verts_[b]);
    if (verts_[a] < verts_[b]) std::swap(a, b);
    parent_[b] = a;
    verts_[a] += verts_[b];
    edges_[a] += edges_[b] + 1;
    bicircular += std::min(edges_[a], verts_[a]);
    return 1;
  }

 private:
  void touch(int v) {
    if (stamp_[v] != epoch_) {
      stamp_[v] = epoch_;
      parent_[v] = v;
      edges_[v] = 0;
      verts_[v] = 1;
    }
  }

  std::vector<int> parent_;
  std::vector<int> edges_;
  std::vector<int> verts_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 1;
};

class GraphMatroid : public MatroidImpl {
 public:
  GraphMatroid(MatroidKind kind, int num_vertices, std::vector<Edge> edges)
      : MatroidImpl(kind, static_cast<int>(edges.size())) {
    if (num_vertices < 0) fail(ErrorCode::kMalformedInstance, "negative vertex count");
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
        fail(ErrorCode::kMalformedInstance, "edge endpoint out of range");
      }
    }
    data_.num_vertices = num_vertices;
    data_.edges = std::move(edges);
  }

  bool bicircular() const { return kind() == MatroidKind::kBicircular; }

  int rank(std::span<const Element> set) const override {
    ComponentForest forest(data_.num_vertices);
    int graphic = 0;
    int bic = 0;
    for (Element e : set) graphic += forest.add_edge(data_.edges[e].u, data_.edges[e].v, bic);
    return bicircular() ? bic : graphic;
  }

  std::unique_ptr<RankBackend> make_backend() const override;

  GraphData data_;
};

class GraphBackend : public RecomputeBackend {
 public:
  explicit GraphBackend(const GraphMatroid& m)
      : RecomputeBackend(m), m_(m), forest_(m.data_.num_vertices) {}

 protected:
  void on_insert(Element e) override {
    if (dirty_) return;
    const Edge& edge = m_.data_.edges[e];
    graphic_ += forest_.add_edge(edge.u, edge.v, bic_);
    cached_ = m_.bicircular() ? bic_ : graphic_;
  }
  void on_erase(Element) override { dirty_ = true; }
  int recompute() override {
    forest_.reset();
    graphic_ = 0;
    bic_ = 0;
    for (Element e : members_) {
      const Edge& edge = m_.data_.edges[e];
      graphic_ += forest_.add_edge(edge.u, edge.v, bic_);
    }
    return m_.bicircular() ? bic_ : graphic_;
  }

 private:
  const GraphMatroid& m_;
  ComponentForest forest_;
  int graphic_ = 0;
  int bic_ = 0;
};

std::unique_ptr<RankBackend> GraphMatroid::make_backend() const {
  return std::make_unique<GraphBackend>(*this);
}

// ---------------------------------------------------------------- transversal

class ConvexTransversalMatroid : public MatroidImpl {
 public:
  ConvexTransversalMatroid(MatroidKind kind, std::vector<Interval> intervals, int num_slots)
      : MatroidImpl(kind, static_cast<int>(intervals.size())),
        intervals_(std::move(intervals)),
        num_slots_(num_slots) {
    int max_last = 0;
    for (const Interval& iv : intervals_) {
      if (iv.first < 1 || iv.first > iv.last) {
        fail(ErrorCode::kMalformedInstance, "interval with s > t or s < 1");
      }
      max_last = std::max(max_last, iv.last);
    }
    if (num_slots_ <= 0) num_slots_ = max_last;
  }

  // Earliest-ending available interval takes each slot, left to right.
  int rank(std::span<const Element> set) const override {
    std::vector<Element> order(set.begin(), set.end());
    std::sort(order.begin(), order.end(), [&](Element a, Element b) {
      return intervals_[a].first < intervals_[b].first;
    });
    std::priority_queue<int, std::vector<int>, std::greater<>> ends;
    size_t next = 0;
    int slot = 1;
    int matched = 0;
    while (slot <= num_slots_) {
      if (ends.empty()) {
        if (next == order.size()) break;
        slot = std::max(slot, intervals_[order[next]].first);
        if (slot > num_slots_) break;
      }
      while (next < order.size() && intervals_[order[next]].first <= slot) {
        ends.push(intervals_[order[next]].last);
        ++next;
      }
      while (!ends.empty() && ends.top() < slot) ends.pop();
      if (ends.empty()) continue;
      ends.pop();
      ++matched;
      ++slot;
    }
    return matched;
  }

  std::vector<Interval> intervals_;
  int num_slots_;
};

}  // namespace
}  // namespace detail

// Defined in linear.cpp and gammoid.cpp.
namespace detail {
std::shared_ptr<const MatroidImpl> make_linear(std::vector<std::vector<std::int64_t>> rows,
                                               std::uint64_t prime);
std::shared_ptr<const MatroidImpl> make_gammoid(int num_vertices, std::vector<Edge> arcs,
                                                std::vector<int> sources);
}  // namespace detail

const char* matroid_kind_name(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kPartition: return "partition";
    case MatroidKind::kGraphic: return "graphic";
    case MatroidKind::kBicircular: return "bicircular";
    case MatroidKind::kConvexTransversal: return "convex_transversal";
    case MatroidKind::kSimpleScheduling: return "scheduling";
    case MatroidKind::kLinear: return "linear";
    case MatroidKind::kGammoid: return "gammoid";
    case MatroidKind::kExplicit: return "explicit";
    case MatroidKind::kUniform: return "uniform";
  }
  return "unknown";
}

Matroid::Matroid(std::shared_ptr<const detail::MatroidImpl> impl) : impl_(std::move(impl)) {}

Matroid Matroid::partition(std::vector<int> color, std::vector<int> capacity) {
  return Matroid(std::make_shared<detail::PartitionMatroid>(std::move(color), std::move(capacity)));
}

Matroid Matroid::graphic(int num_vertices, std::vector<Edge> edges) {
  return Matroid(std::make_shared<detail::GraphMatroid>(MatroidKind::kGraphic, num_vertices,
                                                        std::move(edges)));
}

Matroid Matroid::bicircular(int num_vertices, std::vector<Edge> edges) {
  return Matroid(std::make_shared<detail::GraphMatroid>(MatroidKind::kBicircular, num_vertices,
                                                        std::move(edges)));
}

Matroid Matroid::convex_transversal(std::vector<Interval> intervals, int num_slots) {
  return Matroid(std::make_shared<detail::ConvexTransversalMatroid>(
      MatroidKind::kConvexTransversal, std::move(intervals), num_slots));
}

Matroid Matroid::scheduling(std::vector<int> deadlines) {
  std::vector<Interval> intervals;
  intervals.reserve(deadlines.size());
  for (int d : deadlines) intervals.push_back({1, d});
  return Matroid(std::make_shared<detail::ConvexTransversalMatroid>(
      MatroidKind::kSimpleScheduling, std::move(intervals), 0));
}

Matroid Matroid::linear(std::vector<std::vector<std::int64_t>> rows, std::uint64_t prime) {
  return Matroid(detail::make_linear(std::move(rows), prime));
}

Matroid Matroid::gammoid(int num_vertices, std::vector<Edge> arcs, std::vector<int> sources) {
  return Matroid(detail::make_gammoid(num_vertices, std::move(arcs), std::move(sources)));
}

Matroid Matroid::explicit_family(int n, std::vector<std::uint32_t> independent_masks) {
  return Matroid(std::make_shared<detail::ExplicitMatroid>(n, independent_masks));
}

Matroid Matroid::uniform(int n, int rank) {
  return Matroid(std::make_shared<detail::UniformMatroid>(n, rank));
}

MatroidKind Matroid::kind() const { return impl_->kind(); }
int Matroid::ground_size() const { return impl_->ground_size(); }
std::string Matroid::describe() const { return impl_->describe(); }

int Matroid::rank_of(std::span<const Element> set) const {
  const int n = ground_size();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<Element> distinct;
  distinct.reserve(set.size());
  for (Element e : set) {
    if (e < 0 || e >= n) fail(ErrorCode::kElementOutOfGroundSet, std::to_string(e));
    if (!seen[e]) {
      seen[e] = 1;
      distinct.push_back(e);
    }
  }
  return impl_->rank(distinct);
}

bool Matroid::is_independent(std::span<const Element> set) const {
  return rank_of(set) == static_cast<int>(set.size());
}

int Matroid::full_rank() const {
  std::vector<Element> all(static_cast<size_t>(ground_size()));
  for (int i = 0; i < ground_size(); ++i) all[i] = i;
  return impl_->rank(all);
}

std::unique_ptr<RankBackend> Matroid::make_backend() const { return impl_->make_backend(); }

const GraphData* graph_data(const Matroid& m) {
  if (m.kind() != MatroidKind::kGraphic && m.kind() != MatroidKind::kBicircular) return nullptr;
  return &static_cast<const detail::GraphMatroid&>(m.impl()).data_;
}

}  // namespace dynmat
