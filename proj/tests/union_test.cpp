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

#include "dynmat/union.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <numeric>

#include "dynmat/error.hpp"
#include "dynmat/testkit.hpp"

namespace dynmat {
namespace {

using testkit::Rng;

Matroid complete(int v) { return Matroid::graphic(v, testkit::complete_graph(v)); }

std::vector<Element> outside(const UnionEngine& e) {
  std::vector<Element> out;
  for (Element x = 0; x < e.ground_size(); ++x)
    if (e.class_of(x) < 0) out.push_back(x);
  return out;
}

// Checks every class is independent and every maintained basis is the
// index-order greedy basis of the elements outside S.
void check_state(const UnionEngine& e, const std::vector<Matroid>& ms) {
  const auto cls = e.classes();
  for (int i = 0; i < e.k(); ++i) {
    const Matroid& m = ms[e.kfold() ? 0 : i];
    ASSERT_TRUE(m.is_independent(cls[i])) << "class " << i;
  }
  const auto rest = outside(e);
  const int bases = e.kfold() ? 1 : e.k();
  for (int i = 0; i < bases; ++i) {
    auto expect = testkit::greedy_basis(ms[i], rest);
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(e.outside_basis(i), expect) << "basis " << i;
  }
}

// Distances in the union exchange graph from explicit independence tests.
// Returns per-element distances with index n holding t.
std::vector<int> explicit_union_distances(const UnionEngine& e, const std::vector<Matroid>& ms) {
  const int n = e.ground_size();
  const auto cls = e.classes();
  auto mat = [&](int i) -> const Matroid& { return ms[e.kfold() ? 0 : i]; };
  std::vector<int> dist(n + 1, -1);
  std::deque<Element> q;
  for (Element x = 0; x < n; ++x) {
    if (e.class_of(x) < 0) {
      dist[x] = 1;
      q.push_back(x);
    }
  }
  while (!q.empty()) {
    const Element u = q.front();
    q.pop_front();
    for (int i = 0; i < e.k(); ++i) {
      if (e.class_of(u) == i) continue;
      auto plus = cls[i];
      plus.push_back(u);
      if (mat(i).is_independent(plus) && dist[n] < 0) dist[n] = dist[u] + 1;
      for (Element v : cls[i]) {
        if (dist[v] >= 0) continue;
        std::vector<Element> swapped;
        for (Element w : cls[i])
          if (w != v) swapped.push_back(w);
        swapped.push_back(u);
        if (mat(i).is_independent(swapped)) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return dist;
}

void expect_same_layers(const UnionLayers& a, const UnionLayers& b, const UnionEngine& e) {
  ASSERT_EQ(a.d_t, b.d_t);
  for (Element x = 0; x < e.ground_size(); ++x) {
    if (e.class_of(x) >= 0) ASSERT_EQ(a.dist[x], b.dist[x]) << "element " << x;
  }
}

int deep_blocking_phases = 0;

// Runs phases by hand with tree audits and a state check after each one.
template <typename Each>
UnionResult stepped(UnionEngine& e, const std::vector<Matroid>& ms, Each each,
                    bool always_blocking = false) {
  const int cutoff = always_blocking
                         ? e.ground_size() + 2
                         : static_cast<int>(std::ceil(std::sqrt(std::max(e.rank_estimate(), 1))));
  UnionResult res;
  int last = 0;
  bool last_blocking = false;
  for (;;) {
    const UnionLayers g = e.bfs();
    each(g);
    if (!g.reachable()) break;
    if (last_blocking) {
      EXPECT_GT(g.d_t, last);
    } else {
      EXPECT_GE(g.d_t, last);
    }
    last = g.d_t;
    last_blocking = g.d_t <= cutoff;
    if (last_blocking) {
      if (g.d_t >= 3) ++deep_blocking_phases;
      const int before = static_cast<int>(e.set().size());
      const int aug = e.blocking_flow(g, true);
      EXPECT_EQ(static_cast<int>(e.set().size()), before + aug);
      EXPECT_GT(aug, 0);
    } else {
      e.augment(g);
    }
    check_state(e, ms);
  }
  res.set = e.set();
  res.classes = e.classes();
  return res;
}

TEST(UnionBfs, CompleteGraphEmptySet) {
  const Matroid k4 = complete(4);
  UnionEngine e(k4, 2);
  const UnionLayers all = e.bfs(UnionBfsMode::kAllOutside);
  EXPECT_EQ(all.first_layer.size(), 6u);
  EXPECT_EQ(all.d_t, 2);
  const UnionLayers sparse = e.bfs();
  EXPECT_EQ(sparse.first_layer.size(), 3u);
  EXPECT_EQ(sparse.d_t, 2);
}

TEST(UnionBfs, SecondTreeReachableAfterFirst) {
  const Matroid k4 = complete(4);
  UnionEngine e(k4, 2);
  // Fill the first class with a spanning tree by single augmentations.
  for (int i = 0; i < 3; ++i) e.augment(e.bfs());
  const UnionLayers g = e.bfs();
  EXPECT_TRUE(g.reachable());
  EXPECT_EQ(testkit::brute_union(k4, 2).size, 6);
}

TEST(UnionBfs, TriangleSaturates) {
  const Matroid k3 = complete(3);
  UnionEngine e(k3, 2);
  const UnionResult res = e.run();
  EXPECT_EQ(res.set.size(), 3u);
  EXPECT_FALSE(e.bfs().reachable());
  EXPECT_EQ(testkit::brute_union(k3, 2).size, 3);
}

TEST(UnionBfs, MatchesExplicitGraph) {
  Rng rng(21);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = rng.uniform(1, 9);
    const int k = rng.uniform(1, 3);
    std::vector<Matroid> ms;
    for (int i = 0; i < k; ++i) ms.push_back(testkit::random_intersection_kind(rng, n));
    UnionEngine e(ms);
    const int steps = rng.uniform(0, 5);
    for (int s = 0; s < steps; ++s) {
      const UnionLayers g = e.bfs();
      if (!g.reachable()) break;
      e.augment(g);
    }
    const auto dist = explicit_union_distances(e, ms);
    for (UnionBfsMode mode : {UnionBfsMode::kBasisStart, UnionBfsMode::kAllOutside}) {
      const UnionLayers g = e.bfs(mode);
      ASSERT_EQ(g.d_t, dist[n]) << "trial " << trial;
      for (Element x = 0; x < n; ++x) {
        if (e.class_of(x) < 0) continue;
        const int expect = dist[x] >= 0 && (dist[n] < 0 || dist[x] < dist[n]) ? dist[x] : -1;
        ASSERT_EQ(g.dist[x], expect) << "trial " << trial << " element " << x;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(UnionBfs, SparseFirstLayerAgrees) {
  Rng rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform(2, 12);
    const int k = rng.uniform(1, 3);
    std::vector<Matroid> ms;
    for (int i = 0; i < k; ++i) ms.push_back(testkit::random_intersection_kind(rng, n));
    UnionEngine e(ms);
    stepped(e, ms, [&](const UnionLayers& g) {
      expect_same_layers(g, e.bfs(UnionBfsMode::kAllOutside), e);
    });
  }
}

TEST(UnionBfs, SkipRuleAgrees) {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform(2, 14);
    const int k = rng.uniform(1, 4);
    const Matroid m = testkit::random_intersection_kind(rng, n);
    UnionEngine e(m, k);
    stepped(e, {m}, [&](const UnionLayers& g) {
      expect_same_layers(g, e.bfs(UnionBfsMode::kBasisStart), e);
      expect_same_layers(g, e.bfs(UnionBfsMode::kAllOutside), e);
    });
  }
}

TEST(UnionBfs, SkipRuleNeedsIdenticalMatroids) {
  UnionEngine e(std::vector<Matroid>{Matroid::uniform(3, 1), Matroid::uniform(3, 2)});
  EXPECT_THROW(e.bfs(UnionBfsMode::kSkipSpanned), MatroidError);
}

TEST(Union, CompleteGraphFourTwoTrees) {
  const Matroid k4 = complete(4);
  EXPECT_EQ(kfold_union(k4, 2).set.size(), 6u);
  EXPECT_EQ(matroid_union({k4, k4}).set.size(), 6u);
  EXPECT_EQ(testkit::brute_union(k4, 2).size, 6);
}

TEST(Union, CompleteGraphSixTwoTrees) {
  const Matroid k6 = complete(6);
  const UnionResult a = kfold_union(k6, 2);
  const UnionResult b = matroid_union({k6, k6});
  EXPECT_EQ(a.set.size(), 10u);
  EXPECT_EQ(b.set.size(), 10u);
  for (const auto& c : a.classes) EXPECT_TRUE(k6.is_independent(c));
  EXPECT_EQ(testkit::brute_union(k6, 2).size, 10);
}

TEST(Union, SingleMatroidIsBasis) {
  const Matroid m = complete(5);
  UnionEngine e(m, 1);
  const UnionResult res = e.run();
  EXPECT_EQ(static_cast<int>(res.set.size()), m.full_rank());
  ASSERT_EQ(res.phases.size(), 1u);
  EXPECT_EQ(res.phases[0].d_t, 2);
  EXPECT_EQ(matroid_union({m}).set.size(), res.set.size());
}

TEST(Union, ForestPlusPseudoforestOnCycle) {
  const std::vector<Edge> c4 = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const std::vector<Matroid> ms = {Matroid::graphic(4, c4), Matroid::bicircular(4, c4)};
  const UnionResult res = matroid_union(ms);
  EXPECT_EQ(static_cast<int>(res.set.size()), testkit::brute_union_general(ms).size);
  EXPECT_EQ(res.set.size(), 4u);
}

TEST(Union, ZeroRank) {
  const Matroid z = Matroid::uniform(4, 0);
  EXPECT_TRUE(kfold_union(z, 3).set.empty());
  EXPECT_TRUE(matroid_union({z, z}).set.empty());
}

TEST(Union, Errors) {
  EXPECT_THROW(kfold_union(Matroid::uniform(3, 1), 0), MatroidError);
  try {
    matroid_union({Matroid::uniform(3, 1), Matroid::uniform(4, 1)});
    FAIL();
  } catch (const MatroidError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGroundSetMismatch);
  }
}

TEST(Union, LargeMultiplicityTakesEverything) {
  const Matroid m = Matroid::uniform(5, 1);
  EXPECT_EQ(kfold_union(m, 5).set.size(), 5u);
  EXPECT_EQ(kfold_union(m, 7).set.size(), 5u);
}

TEST(Union, GeneralMatchesBruteForce) {
  Rng rng(31);
  deep_blocking_phases = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = rng.uniform(0, 10);
    const int k = rng.uniform(1, 3);
    std::vector<Matroid> ms;
    for (int i = 0; i < k; ++i) ms.push_back(testkit::random_matroid(rng, n));
    UnionEngine e(ms);
    const UnionResult res = stepped(e, ms, [](const UnionLayers&) {});
    ASSERT_EQ(static_cast<int>(res.set.size()), testkit::brute_union_general(ms).size)
        << "trial " << trial;
    ASSERT_EQ(matroid_union(ms).set.size(), res.set.size());
  }
}

TEST(Union, KFoldMatchesBruteForce) {
  Rng rng(32);
  deep_blocking_phases = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = rng.uniform(0, 10);
    const int k = rng.uniform(1, 3);
    const Matroid m = testkit::random_matroid(rng, n);
    UnionEngine e(m, k);
    const UnionResult res = stepped(e, {m}, [](const UnionLayers&) {});
    ASSERT_EQ(static_cast<int>(res.set.size()), testkit::brute_union(m, k).size)
        << "trial " << trial;
  }
}

TEST(Union, BlockingFlowAtEveryDepth) {
  Rng rng(36);
  deep_blocking_phases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform(4, 14);
    const int k = rng.uniform(2, 3);
    const bool same = rng.chance(0.5);
    std::vector<Matroid> ms;
    for (int i = 0; i < (same ? 1 : k); ++i) {
      ms.push_back(rng.chance(0.5) ? testkit::random_graphic(rng, n, rng.uniform(3, 6))
                                   : testkit::random_intersection_kind(rng, n));
    }
    std::unique_ptr<UnionEngine> e = same ? std::make_unique<UnionEngine>(ms[0], k)
                                          : std::make_unique<UnionEngine>(ms);
    const UnionResult res = stepped(*e, ms, [](const UnionLayers&) {}, true);
    const int expect = same ? testkit::brute_union(ms[0], k).size
                            : testkit::brute_union_general(ms).size;
    ASSERT_EQ(static_cast<int>(res.set.size()), expect) << "trial " << trial;
  }
  EXPECT_GT(deep_blocking_phases, 30);
}

TEST(Union, ForcedBlockingFlowOnMediumGraphs) {
  Rng rng(37);
  deep_blocking_phases = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int v = rng.uniform(6, 12);
    const int k = rng.uniform(2, 4);
    const Matroid g = testkit::random_graphic(rng, rng.uniform(2 * v, 5 * v), v);
    UnionEngine forced(g, k);
    const UnionResult a = stepped(forced, {g}, [](const UnionLayers&) {}, true);
    ASSERT_EQ(a.set.size(), kfold_union(g, k).set.size()) << "trial " << trial;
    UnionEngine general(std::vector<Matroid>(k, g));
    const UnionResult b = stepped(general, std::vector<Matroid>(k, g), [](const UnionLayers&) {}, true);
    ASSERT_EQ(a.set.size(), b.set.size()) << "trial " << trial;
  }
  EXPECT_GT(deep_blocking_phases, 40);
}

TEST(Union, KFoldAgreesWithGeneralOnGraphs) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int v = rng.uniform(2, 9);
    const int m = rng.uniform(1, 30);
    const int k = rng.uniform(1, 4);
    const Matroid g = testkit::random_graphic(rng, m, v);
    const UnionResult a = kfold_union(g, k);
    const UnionResult b = matroid_union(std::vector<Matroid>(k, g));
    ASSERT_EQ(a.set.size(), b.set.size()) << "trial " << trial;
    for (const auto& c : a.classes) ASSERT_TRUE(g.is_independent(c));
    for (const auto& c : b.classes) ASSERT_TRUE(g.is_independent(c));
  }
}

TEST(Union, RunPhasesIncrease) {
  Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const Matroid g = testkit::random_graphic(rng, rng.uniform(20, 120), rng.uniform(6, 20));
    const UnionResult res = kfold_union(g, rng.uniform(2, 4));
    for (size_t i = 1; i < res.phases.size(); ++i) {
      if (res.phases[i - 1].blocking) {
        ASSERT_GT(res.phases[i].d_t, res.phases[i - 1].d_t);
      } else {
        ASSERT_GE(res.phases[i].d_t, res.phases[i - 1].d_t);
      }
    }
  }
}

TEST(Packing, Examples) {
  EXPECT_EQ(packing(complete(4)).value, 2);
  EXPECT_EQ(packing(Matroid::graphic(4, {{0, 1}, {1, 2}, {1, 3}})).value, 1);
  const PackingResult u = packing(Matroid::uniform(6, 2));
  EXPECT_EQ(u.value, 3);
  ASSERT_EQ(u.sets.size(), 3u);
  for (const auto& s : u.sets) EXPECT_EQ(s.size(), 2u);
  try {
    packing(Matroid::uniform(3, 0));
    FAIL();
  } catch (const MatroidError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroRankMatroid);
  }
}

TEST(Covering, Examples) {
  EXPECT_EQ(covering(complete(4)).value, 2);
  EXPECT_EQ(covering(Matroid::uniform(5, 5)).value, 1);
  const Matroid k5 = complete(5);
  const PackingResult c = covering(k5);
  EXPECT_EQ(c.value, 3);
  std::vector<Element> all;
  for (const auto& s : c.sets) {
    EXPECT_TRUE(k5.is_independent(s));
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<Element> expect(10);
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(all, expect);
  try {
    covering(Matroid::graphic(2, {{0, 1}, {1, 1}}));
    FAIL();
  } catch (const MatroidError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLoopElement);
  }
}

TEST(Packing, MatchesBruteForce) {
  Rng rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform(1, 9);
    const Matroid m = testkit::random_graphic(rng, n, rng.uniform(2, 5));
    const int r = m.full_rank();
    if (r == 0) continue;
    int expect_pack = 0;
    while (expect_pack + 1 <= n / r && testkit::brute_union(m, expect_pack + 1).size == (expect_pack + 1) * r)
      ++expect_pack;
    ASSERT_EQ(packing(m).value, expect_pack) << "trial " << trial;
    int expect_cover = 1;
    while (testkit::brute_union(m, expect_cover).size < n) ++expect_cover;
    ASSERT_EQ(covering(m).value, expect_cover) << "trial " << trial;
  }
}

}  // namespace
}  // namespace dynmat
