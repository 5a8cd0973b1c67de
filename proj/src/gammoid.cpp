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

#include <queue>

#include "dynmat/error.hpp"
#include "matroid_impl.hpp"

namespace dynmat::detail {
namespace {

// Strict gammoid rank: vertex-disjoint paths from the sources ending in the
// query set, as unit-capacity max-flow on the vertex-split digraph.
class GammoidMatroid : public MatroidImpl {
 public:
  GammoidMatroid(int num_vertices, std::vector<Edge> arcs, std::vector<int> sources)
      : MatroidImpl(MatroidKind::kGammoid, num_vertices),
        arcs_(std::move(arcs)),
        is_source_(static_cast<size_t>(num_vertices), 0) {
    for (const Edge& a : arcs_) {
      if (a.u < 0 || a.v < 0 || a.u >= num_vertices || a.v >= num_vertices) {
        fail(ErrorCode::kMalformedInstance, "arc endpoint out of range");
      }
    }
    for (int s : sources) {
      if (s < 0 || s >= num_vertices) fail(ErrorCode::kMalformedInstance, "source out of range");
      is_source_[s] = 1;
    }
  }

  int rank(std::span<const Element> set) const override {
    const int v = ground_size();
    const int source = 2 * v;
    const int sink = 2 * v + 1;
    Network net(2 * v + 2);
    for (int x = 0; x < v; ++x) {
      if (is_source_[x]) net.add(source, 2 * x);
      net.add(2 * x, 2 * x + 1);
    }
    for (const Edge& a : arcs_) net.add(2 * a.u + 1, 2 * a.v);
    for (Element y : set) net.add(2 * y + 1, sink);
    return net.max_flow(source, sink);
  }

 private:
  struct Network {
    explicit Network(int nodes) : head(nodes, -1) {}
    void add(int a, int b) {
      to.push_back(b); cap.push_back(1); next.push_back(head[a]); head[a] = static_cast<int>(to.size()) - 1;
      to.push_back(a); cap.push_back(0); next.push_back(head[b]); head[b] = static_cast<int>(to.size()) - 1;
    }
    int max_flow(int s, int t) {
      int flow = 0;
      std::vector<int> via(head.size());
      for (;;) {
        std::fill(via.begin(), via.end(), -1);
        std::queue<int> q;
        q.push(s);
        via[s] = -2;
        while (!q.empty() && via[t] == -1) {
          const int x = q.front();
          q.pop();
          for (int e = head[x]; e >= 0; e = next[e]) {
            if (cap[e] > 0 && via[to[e]] == -1) {
              via[to[e]] = e;
              q.push(to[e]);
            }
          }
        }
        if (via[t] == -1) return flow;
        for (int x = t; x != s; x = to[via[x] ^ 1]) {
          cap[via[x]]--;
          cap[via[x] ^ 1]++;
        }
        ++flow;
      }
    }
    std::vector<int> head, to, cap, next;
  };

  std::vector<Edge> arcs_;
  std::vector<char> is_source_;
};

}  // namespace

std::shared_ptr<const MatroidImpl> make_gammoid(int num_vertices, std::vector<Edge> arcs,
                                                std::vector<int> sources) {
  return std::make_shared<GammoidMatroid>(num_vertices, std::move(arcs), std::move(sources));
}

}  // namespace dynmat::detail

#include "dynmat/gammoid.hpp"

namespace dynmat {

GammoidPair gammoid_from_bipartite(const BipartiteDigraph& g, const std::vector<int>& starts,
                                   const std::vector<int>& ends) {
  const int nv = g.num_vertices();
  auto on_left = [&](int v) { return v < g.left; };
  std::vector<int> in_degree(nv, 0), out_degree(nv, 0);
  std::vector<Edge> forward, backward;  // left->right kept, right->left reversed
  for (const Edge& a : g.arcs) {
    if (a.u < 0 || a.v < 0 || a.u >= nv || a.v >= nv || on_left(a.u) == on_left(a.v)) {
      fail(ErrorCode::kMalformedInstance, "arc must join the two sides");
    }
    out_degree[a.u]++;
    in_degree[a.v]++;
    if (on_left(a.u)) {
      forward.push_back(a);
    } else {
      backward.push_back({a.v, a.u});
    }
  }
  std::vector<char> marked(nv, 0);
  for (int a : starts) {
    if (a < g.left || a >= nv) fail(ErrorCode::kInvalidArgument, "start must be a right vertex");
    if (in_degree[a] != 0) fail(ErrorCode::kDegreePreconditionViolated, "start has in-degree");
    marked[a] = 1;
  }
  for (int b : ends) {
    if (b < g.left || b >= nv) fail(ErrorCode::kInvalidArgument, "end must be a right vertex");
    if (out_degree[b] != 0) fail(ErrorCode::kDegreePreconditionViolated, "end has out-degree");
    if (marked[b]) fail(ErrorCode::kInvalidArgument, "start and end coincide");
  }
  std::vector<int> sources_first, sources_second;
  std::vector<Element> candidate;
  for (int x = 0; x < g.left; ++x) {
    sources_first.push_back(x);
    sources_second.push_back(x);
    candidate.push_back(x);
  }
  sources_first.insert(sources_first.end(), starts.begin(), starts.end());
  sources_second.insert(sources_second.end(), ends.begin(), ends.end());
  return GammoidPair{Matroid::gammoid(nv, std::move(forward), std::move(sources_first)),
                     Matroid::gammoid(nv, std::move(backward), std::move(sources_second)),
                     std::move(candidate)};
}

GammoidPair gammoid_from_bipartite(const BipartiteDigraph& g, int start, int end) {
  return gammoid_from_bipartite(g, std::vector<int>{start}, std::vector<int>{end});
}

}  // namespace dynmat
