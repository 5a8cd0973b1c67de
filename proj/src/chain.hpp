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

#ifndef DYNMAT_SRC_CHAIN_HPP_
#define DYNMAT_SRC_CHAIN_HPP_

#include <cmath>
#include <span>

#include "dynmat/oracle.hpp"

namespace dynmat::detail {

// Query-set for a whole set, built by single insertions and released on exit.
class ChainVersion {
 public:
  ChainVersion(DynamicOracle& o, std::span<const Element> s) : o_(o) {
    v_ = DynamicOracle::empty();
    for (Element e : s) {
      const VersionId next = o_.insert(v_, e);
      if (!(v_ == DynamicOracle::empty())) o_.release(v_);
      v_ = next;
    }
  }
  ~ChainVersion() {
    if (o_.is_live(v_) && !(v_ == DynamicOracle::empty())) o_.release(v_);
  }
  ChainVersion(const ChainVersion&) = delete;
  ChainVersion& operator=(const ChainVersion&) = delete;
  VersionId get() const { return v_; }

 private:
  DynamicOracle& o_;
  VersionId v_;
};

inline int ceil_sqrt(int r) {
  int c = static_cast<int>(std::sqrt(static_cast<double>(r)));
  while (c * c < r) ++c;
  while (c > 0 && (c - 1) * (c - 1) >= r) --c;
  return c;
}

}  // namespace dynmat::detail

#endif  // DYNMAT_SRC_CHAIN_HPP_
