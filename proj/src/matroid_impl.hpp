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

#ifndef DYNMAT_SRC_MATROID_IMPL_HPP_
#define DYNMAT_SRC_MATROID_IMPL_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynmat/matroid.hpp"

namespace dynmat::detail {

class MatroidImpl {
 public:
  MatroidImpl(MatroidKind kind, int n) : kind_(kind), n_(n) {}
  virtual ~MatroidImpl() = default;

  MatroidKind kind() const { return kind_; }
  int ground_size() const { return n_; }

  // Elements are distinct and in range.
  virtual int rank(std::span<const Element> set) const = 0;
  virtual std::unique_ptr<RankBackend> make_backend() const;
  virtual std::string describe() const;

 private:
  MatroidKind kind_;
  int n_;
};

// Keeps the member list and recomputes rank from scratch when dirty.
class RecomputeBackend : public RankBackend {
 public:
  explicit RecomputeBackend(const MatroidImpl& impl)
      : impl_(impl), pos_(static_cast<size_t>(impl.ground_size()), -1) {}

  void insert(Element e) override {
    pos_[e] = static_cast<int>(members_.size());
    members_.push_back(e);
    on_insert(e);
  }
  void erase(Element e) override {
    const int p = pos_[e];
    const Element last = members_.back();
    members_[p] = last;
    pos_[last] = p;
    members_.pop_back();
    pos_[e] = -1;
    on_erase(e);
  }
  int rank() override {
    if (dirty_) {
      cached_ = recompute();
      dirty_ = false;
    }
    return cached_;
  }

 protected:
  virtual void on_insert(Element) { dirty_ = true; }
  virtual void on_erase(Element) { dirty_ = true; }
  virtual int recompute() { return impl_.rank(members_); }

  const MatroidImpl& impl_;
  std::vector<Element> members_;
  std::vector<int> pos_;
  bool dirty_ = false;
  int cached_ = 0;
};

}  // namespace dynmat::detail

#endif  // DYNMAT_SRC_MATROID_IMPL_HPP_
