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

#ifndef DYNMAT_GAMMOID_HPP_
#define DYNMAT_GAMMOID_HPP_

#include <vector>

#include "dynmat/matroid.hpp"

namespace dynmat {

// Directed bipartite graph. Vertices [0, left) form the left side and
// [left, left + right) the right side; every arc crosses sides.
struct BipartiteDigraph {
  int left = 0;
  int right = 0;
  std::vector<Edge> arcs;
  int num_vertices() const { return left + right; }
};

struct GammoidPair {
  Matroid first;
  Matroid second;
  std::vector<Element> candidate;  // the left side, independent in both
};

// Two strict gammoids over the vertices of g whose exchange graph around the
// left side reproduces g, entered from s at each of starts and left towards t
// from each of ends. starts need zero in-degree, ends zero out-degree.
GammoidPair gammoid_from_bipartite(const BipartiteDigraph& g, const std::vector<int>& starts,
                                   const std::vector<int>& ends);
GammoidPair gammoid_from_bipartite(const BipartiteDigraph& g, int start, int end);

}  // namespace dynmat

#endif  // DYNMAT_GAMMOID_HPP_
