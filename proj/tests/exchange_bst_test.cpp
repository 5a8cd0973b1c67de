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

#include "dynmat/exchange_bst.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dynmat/error.hpp"
#include "dynmat/testkit.hpp"

namespace dynmat {
namespace {

using testkit::Rng;

VersionId build_version(DynamicOracle& o, const std::vector<Element>& s) {
  VersionId v = DynamicOracle::empty();
  for (Element e : s) v = o.insert(v, e);
  return v;
}

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected " << error_code_name(code);
  } catch (const MatroidError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Direct test of the exchange predicate for a candidate x.
bool valid_exchange(const Matroid& m, BstVariant variant, const std::vector<Element>& s,
                    Element y, Element x) {
  std::vector<Element> t;
  if (variant == BstVariant::kCoCircuit) {
    for (Element e : s)
      if (e != y) t.push_back(e);
    t.push_back(x);
  } else if (variant == BstVariant::kCircuit) {
    for (Element e : s)
      if (e != x) t.push_back(e);
    t.push_back(y);
  } else {
    t = s;
    t.push_back(y);
  }
  return m.is_independent(t);
}

Matroid triangle() { return Matroid::graphic(3, {{0, 1}, {1, 2}, {2, 0}}); }

TEST(ExchangeBst, EmptyTreeFindsNothing) {
  DynamicOracle o(triangle());
  std::vector<Element> s{0};
  const VersionId q = build_version(o, s);
  ExchangeBst co(o, BstVariant::kCoCircuit, s, q, {}, 1);
  EXPECT_EQ(co.find(kSource), std::nullopt);
  EXPECT_EQ(co.find(0), std::nullopt);
  ExchangeBst ci(o, BstVariant::kCircuit, s, q, {}, 1);
  EXPECT_EQ(ci.find(1), std::nullopt);
}

TEST(ExchangeBst, TriangleCoCircuit) {
  DynamicOracle o(triangle());
  std::vector<Element> s{0, 1};  // ab, bc
  const VersionId q = build_version(o, s);
  std::vector<Element> x{2};  // ca
  ExchangeBst t(o, BstVariant::kCoCircuit, s, q, x, 1);
  EXPECT_EQ(t.node_count(), 1);
  ASSERT_TRUE(valid_exchange(o.matroid(), BstVariant::kCoCircuit, s, 0, 2));
  EXPECT_EQ(t.find(0), std::optional<Element>(2));
  // S spans already: no free element.
  EXPECT_FALSE(o.matroid().is_independent(std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(t.find(kSource), std::nullopt);
}

TEST(ExchangeBst, EightLeavesShape) {
  DynamicOracle o(Matroid::uniform(8, 8));
  std::vector<Element> x{0, 1, 2, 3, 4, 5, 6, 7};
  ExchangeBst t(o, BstVariant::kCoCircuit, {}, DynamicOracle::empty(), x, 1);
  EXPECT_EQ(t.node_count(), 15);
  EXPECT_EQ(t.depth(), 3);
  EXPECT_EQ(t.live_size(), 8);
}

TEST(ExchangeBst, PartitionFreeElement) {
  // a red, b red, c blue; caps 1 and 1
  Matroid m = Matroid::partition({0, 0, 1}, {1, 1});
  DynamicOracle o(m);
  std::vector<Element> s{0};
  ExchangeBst t(o, BstVariant::kCoCircuit, s, build_version(o, s), std::vector<Element>{1, 2}, 1);
  EXPECT_TRUE(valid_exchange(m, BstVariant::kSink, s, 2, 2));
  EXPECT_FALSE(valid_exchange(m, BstVariant::kSink, s, 1, 1));
  EXPECT_EQ(t.find(kSource), std::optional<Element>(2));
}

TEST(ExchangeBst, SetMismatchAndWrongSide) {
  DynamicOracle o(triangle());
  std::vector<Element> s{0, 1};
  const VersionId q = build_version(o, s);
  expect_code(ErrorCode::kVariantSetMismatch,
              [&] { ExchangeBst t(o, BstVariant::kCoCircuit, s, q, std::vector<Element>{0}, 1); });
  expect_code(ErrorCode::kVariantSetMismatch,
              [&] { ExchangeBst t(o, BstVariant::kCircuit, s, q, std::vector<Element>{2}, 1); });
  ExchangeBst co(o, BstVariant::kCoCircuit, s, q, std::vector<Element>{2}, 1);
  expect_code(ErrorCode::kWrongSideElement, [&] { co.find(2); });
  ExchangeBst ci(o, BstVariant::kCircuit, s, q, std::vector<Element>{0, 1}, 1);
  expect_code(ErrorCode::kWrongSideElement, [&] { ci.find(0); });
  expect_code(ErrorCode::kWrongSideElement, [&] { ci.find(kSource); });
  ExchangeBst sink(o, BstVariant::kSink, s, q, {}, 1);
  expect_code(ErrorCode::kWrongSideElement, [&] { sink.find(1); });
}

TEST(ExchangeBst, SinkAnswersFreeness) {
  DynamicOracle o(Matroid::partition({0, 0, 1}, {1, 1}));
  std::vector<Element> s{0};
  ExchangeBst t(o, BstVariant::kSink, s, build_version(o, s), {}, 1);
  EXPECT_EQ(t.find(2), std::optional<Element>(kSink));
  EXPECT_EQ(t.find(1), std::nullopt);
  t.erase(kSink);  // no-op
  EXPECT_EQ(t.find(2), std::optional<Element>(kSink));
}

TEST(ExchangeBst, DeleteRemovesCandidates) {
  DynamicOracle o(Matroid::uniform(6, 6));
  std::vector<Element> x{0, 1, 2, 3, 4, 5};
  ExchangeBst t(o, BstVariant::kCoCircuit, {}, DynamicOracle::empty(), x, 1);
  t.set_audit(true);
  std::vector<Element> removed;
  for (int i = 0; i < 6; ++i) {
    auto got = t.find(kSource);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(std::count(removed.begin(), removed.end(), *got), 0);
    t.erase(*got);
    removed.push_back(*got);
  }
  EXPECT_EQ(t.find(kSource), std::nullopt);
  expect_code(ErrorCode::kElementNotInX, [&] { t.erase(0); });
}

TEST(ExchangeBst, ReplaceAgreesWithBruteForce) {
  Matroid m = Matroid::partition({0, 0, 1, 1, 2}, {1, 1, 1});
  DynamicOracle o(m);
  std::vector<Element> s{0};
  ExchangeBst t(o, BstVariant::kCoCircuit, s, build_version(o, s), std::vector<Element>{1, 2}, 2);
  expect_code(ErrorCode::kElementAlreadyInX, [&] { t.replace(1, 2); });
  expect_code(ErrorCode::kElementNotInX, [&] { t.replace(3, 4); });
  t.replace(2, 4);  // blue candidate swapped for green
  EXPECT_FALSE(t.contains(2));
  EXPECT_TRUE(t.contains(4));
  auto got = t.find(kSource);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, 4);
  EXPECT_EQ(t.find(0), std::optional<Element>(1));
}

TEST(ExchangeBst, RebuildThreshold) {
  DynamicOracle o(Matroid::uniform(10, 10));
  std::vector<Element> x{0, 1, 2};
  ExchangeBst t(o, BstVariant::kCoCircuit, {}, DynamicOracle::empty(), x, 2);
  for (Element e : {5, 6, 7}) {
    std::vector<Element> d{e};
    t.update(d);
  }
  EXPECT_EQ(t.rebuilds(), 1);
  EXPECT_EQ(t.pending_updates(), 0);
  t.update({});
  EXPECT_EQ(t.rebuilds(), 1);
  EXPECT_EQ(t.current_size(), 3);
}

TEST(ExchangeBst, UpdateRejectsDependentResult) {
  DynamicOracle o(Matroid::uniform(4, 1));
  std::vector<Element> s{0};
  ExchangeBst t(o, BstVariant::kSink, s, build_version(o, s), {}, 4);
  std::vector<Element> d{1};
  expect_code(ErrorCode::kResultingSetDependent, [&] { t.update(d); });
}

// Random tuples: any answer satisfies the exchange predicate and nullopt is
// returned exactly when no candidate does. Trees see interleaved updates,
// deletions and replacements; audit mode checks each unprobed branch.
TEST(ExchangeBstProperty, BruteForceEquivalence) {
  Rng rng(31337);
  int finds = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = rng.uniform(2, 12);
    const Matroid m = testkit::random_matroid(rng, n);
    DynamicOracle o(m);
    auto s = testkit::random_independent(rng, m, 0.6);
    const BstVariant variant = static_cast<BstVariant>(rng.uniform(0, 2));
    std::vector<char> in_s(n, 0);
    for (Element e : s) in_s[e] = 1;
    std::vector<Element> x;
    if (variant != BstVariant::kSink) {
      for (Element e = 0; e < n; ++e) {
        const bool side = variant == BstVariant::kCircuit ? in_s[e] : !in_s[e];
        if (side && rng.chance(0.7)) x.push_back(e);
      }
    }
    const VersionId q = build_version(o, s);
    ExchangeBst t(o, variant, s, q, x, rng.uniform(1, 3));
    t.set_audit(true);
    std::vector<char> in_x(n, 0);
    for (Element e : x) in_x[e] = 1;
    for (int step = 0; step < 8; ++step) {
      // a query from every valid y
      std::vector<Element> ys;
      if (variant == BstVariant::kCoCircuit) ys.push_back(kSource);
      for (Element y = 0; y < n; ++y) {
        const bool inside = in_s[y] != 0;
        if (inside == (variant == BstVariant::kCoCircuit)) ys.push_back(y);
      }
      std::vector<Element> cur_s;
      for (Element e = 0; e < n; ++e)
        if (in_s[e]) cur_s.push_back(e);
      for (Element y : ys) {
        const auto before = o.stats().total_ops();
        const auto got = t.find(y);
        const auto cost = o.stats().total_ops() - before;
        ++finds;
        bool exists = false;
        if (variant == BstVariant::kSink) {
          exists = valid_exchange(m, variant, cur_s, y, kSink);
        } else {
          for (Element c = 0; c < n; ++c) {
            if (!in_x[c]) continue;
            const bool ok = y == kSource ? valid_exchange(m, BstVariant::kSink, cur_s, c, c)
                                         : valid_exchange(m, variant, cur_s, y, c);
            exists = exists || ok;
          }
        }
        ASSERT_EQ(got.has_value(), exists) << m.describe() << " trial " << trial;
        if (got && variant != BstVariant::kSink) {
          ASSERT_TRUE(in_x[*got]);
          const bool ok = y == kSource ? valid_exchange(m, BstVariant::kSink, cur_s, *got, *got)
                                       : valid_exchange(m, variant, cur_s, y, *got);
          ASSERT_TRUE(ok);
        }
        if (!got) ASSERT_LE(cost, 3u);
      }
      // mutate
      const int action = rng.uniform(0, 2);
      if (action == 0 && variant != BstVariant::kSink) {
        std::vector<Element> live;
        for (Element e = 0; e < n; ++e)
          if (in_x[e]) live.push_back(e);
        if (!live.empty()) {
          const Element e = live[rng.next() % live.size()];
          t.erase(e);
          in_x[e] = 0;
        }
      } else if (action == 1 && variant != BstVariant::kSink) {
        std::vector<Element> live, spare;
        for (Element e = 0; e < n; ++e) {
          if (in_x[e]) live.push_back(e);
          const bool side = variant == BstVariant::kCircuit ? in_s[e] : !in_s[e];
          if (side && !in_x[e]) spare.push_back(e);
        }
        if (!live.empty() && !spare.empty()) {
          const Element a = live[rng.next() % live.size()];
          const Element b = spare[rng.next() % spare.size()];
          t.replace(a, b);
          in_x[a] = 0;
          in_x[b] = 1;
        }
      } else {
        std::vector<Element> options;
        for (Element e = 0; e < n; ++e) {
          if (in_x[e]) continue;
          if (in_s[e]) {
            options.push_back(e);
          } else {
            auto t2 = cur_s;
            t2.push_back(e);
            if (m.is_independent(t2)) options.push_back(e);
          }
        }
        if (!options.empty()) {
          const Element e = options[rng.next() % options.size()];
          std::vector<Element> d{e};
          t.update(d);
          in_s[e] ^= 1;
        }
      }
    }
  }
  EXPECT_GT(finds, 1000);
}

// Successful finds stay within a constant times (pending + 1) * depth probes.
TEST(ExchangeBstProperty, CostAccounting) {
  Rng rng(4);
  const int n = 256;
  Matroid m = testkit::random_partition(rng, n, 40, 3);
  DynamicOracle o(m);
  std::vector<Element> s = testkit::random_independent(rng, m, 0.5);
  std::vector<char> in_s(n, 0);
  for (Element e : s) in_s[e] = 1;
  std::vector<Element> x;
  for (Element e = 0; e < n; ++e)
    if (!in_s[e]) x.push_back(e);
  ExchangeBst t(o, BstVariant::kCoCircuit, s, build_version(o, s), x, 4);
  const double log_n = std::log2(static_cast<double>(n));
  for (Element y : s) {
    const auto before = o.stats().total_ops();
    const auto got = t.find(y);
    const auto cost = o.stats().total_ops() - before;
    if (got) {
      EXPECT_LE(cost, 3 + 2.0 * (t.pending_updates() + 1) * (log_n + 1));
    } else {
      EXPECT_LE(cost, 3u);
    }
  }
}

}  // namespace
}  // namespace dynmat
