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

#ifndef DYNMAT_TYPES_HPP_
#define DYNMAT_TYPES_HPP_

#include <cstdint>
#include <vector>

namespace dynmat {

// Dense ground-set index in [0, n).
using Element = std::int32_t;

// Sentinels for the two extra vertices of an exchange graph.
inline constexpr Element kSource = -1;
inline constexpr Element kSink = -2;

inline constexpr int kInfiniteDistance = -1;

struct Edge {
  int u = 0;
  int v = 0;
};

// Closed slot range [first, last], slots numbered from 1.
struct Interval {
  int first = 1;
  int last = 1;
};

using ElementSet = std::vector<Element>;

}  // namespace dynmat

#endif  // DYNMAT_TYPES_HPP_
