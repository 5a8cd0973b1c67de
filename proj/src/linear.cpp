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

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "dynmat/error.hpp"
#include "matroid_impl.hpp"

namespace dynmat::detail {
namespace {

using Rational = boost::multiprecision::cpp_rational;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Row-echelon basis over GF(p) that accepts one row at a time.
class EchelonBasis {
 public:
  EchelonBasis(std::uint64_t p, size_t cols) : p_(p), cols_(cols) {}

  void clear() {
    rows_.clear();
    pivots_.clear();
  }
  int size() const { return static_cast<int>(rows_.size()); }

  bool add(const std::vector<std::uint64_t>& row) {
    work_ = row;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const std::uint64_t f = work_[pivots_[i]];
      if (f == 0) continue;
      const auto& b = rows_[i];
      for (size_t c = pivots_[i]; c < cols_; ++c) {
        work_[c] = (work_[c] + p_ - mul_mod(f, b[c], p_)) % p_;
      }
    }
    size_t pivot = 0;
    while (pivot < cols_ && work_[pivot] == 0) ++pivot;
    if (pivot == cols_) return false;
    const std::uint64_t inv = pow_mod(work_[pivot], p_ - 2, p_);
    for (size_t c = pivot; c < cols_; ++c) work_[c] = mul_mod(work_[c], inv, p_);
    rows_.push_back(work_);
    pivots_.push_back(pivot);
    return true;
  }

 private:
  std::uint64_t p_;
  size_t cols_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<size_t> pivots_;
  std::vector<std::uint64_t> work_;
};

class LinearMatroid : public MatroidImpl {
 public:
  LinearMatroid(std::vector<std::vector<std::int64_t>> rows, std::uint64_t prime)
      : MatroidImpl(MatroidKind::kLinear, static_cast<int>(rows.size())), prime_(prime) {
    if (prime != 0 && (prime < 2 || prime > (1ULL << 32))) {
      fail(ErrorCode::kMalformedInstance, "field modulus must be a prime below 2^32");
    }
    cols_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::kMalformedInstance, "matrix row length mismatch");
    }
    if (prime_ == 0) {
      exact_ = std::move(rows);
    } else {
      reduced_.reserve(rows.size());
      for (const auto& r : rows) {
        std::vector<std::uint64_t> red(cols_);
        const auto p = static_cast<std::int64_t>(prime_);
        for (size_t c = 0; c < cols_; ++c) red[c] = static_cast<std::uint64_t>(((r[c] % p) + p) % p);
        reduced_.push_back(std::move(red));
      }
    }
  }

  int rank(std::span<const Element> set) const override {
    if (prime_ != 0) {
      EchelonBasis basis(prime_, cols_);
      for (Element e : set) basis.add(reduced_[e]);
      return basis.size();
    }
    std::vector<std::vector<Rational>> m;
    m.reserve(set.size());
    for (Element e : set) m.emplace_back(exact_[e].begin(), exact_[e].end());
    int rank = 0;
    for (size_t c = 0; c < cols_ && rank < static_cast<int>(m.size()); ++c) {
      int pivot = -1;
      for (int i = rank; i < static_cast<int>(m.size()); ++i) {
        if (m[i][c] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) continue;
      std::swap(m[rank], m[pivot]);
      for (int i = rank + 1; i < static_cast<int>(m.size()); ++i) {
        if (m[i][c] == 0) continue;
        const Rational f = m[i][c] / m[rank][c];
        for (size_t k = c; k < cols_; ++k) m[i][k] -= f * m[rank][k];
      }
      ++rank;
    }
    return rank;
  }

  std::unique_ptr<RankBackend> make_backend() const override;

  std::string describe() const override {
    std::ostringstream out;
    out << "linear(n=" << ground_size() << ", cols=" << cols_ << ", field="
        << (prime_ == 0 ? std::string("Q") : std::to_string(prime_)) << ")";
    return out.str();
  }

  std::uint64_t prime_;
  size_t cols_ = 0;
  std::vector<std::vector<std::uint64_t>> reduced_;
  std::vector<std::vector<std::int64_t>> exact_;
};

// Insertions extend the echelon basis; deletions force a rebuild.
class LinearBackend : public RecomputeBackend {
 public:
  explicit LinearBackend(const LinearMatroid& m)
      : RecomputeBackend(m), m_(m), basis_(m.prime_, m.cols_) {}

 protected:
  void on_insert(Element e) override {
    if (dirty_) return;
    basis_.add(m_.reduced_[e]);
    cached_ = basis_.size();
  }
  int recompute() override {
    basis_.clear();
    for (Element e : members_) basis_.add(m_.reduced_[e]);
    return basis_.size();
  }

 private:
  const LinearMatroid& m_;
  EchelonBasis basis_;
};

std::unique_ptr<RankBackend> LinearMatroid::make_backend() const {
  if (prime_ == 0) return std::make_unique<RecomputeBackend>(*this);
  return std::make_unique<LinearBackend>(*this);
}

}  // namespace

std::shared_ptr<const MatroidImpl> make_linear(std::vector<std::vector<std::int64_t>> rows,
                                               std::uint64_t prime) {
  return std::make_shared<LinearMatroid>(std::move(rows), prime);
}

}  // namespace dynmat::detail
