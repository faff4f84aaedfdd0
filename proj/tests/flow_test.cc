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
#include "santa/flow.h"

#include "gtest/gtest.h"
#include "santa/errors.h"
#include "santa/rng.h"

namespace santa {
namespace {

std::vector<char> all_of(int n) { return std::vector<char>(n, 1); }

TEST(MaxFlow, OneConfigTwoResources) {
  auto net = build_network({{0, 1}}, all_of(2), {2}, 1);
  EXPECT_EQ(max_flow(net).value, 2);
}

TEST(MaxFlow, SharedSingleResource) {
  auto net = build_network({{0}, {0}}, all_of(1), {1, 1}, 1);
  EXPECT_EQ(max_flow(net).value, 1);
}

// Min cut by enumerating every source side on a general network.
int64_t brute_min_cut(int nodes, const std::vector<std::array<int64_t, 3>>& edges) {
  int64_t best = -1;
  for (uint32_t mask = 0; mask < (1u << nodes); ++mask) {
    if (!(mask & 1) || (mask & 2)) continue;  // s = 0 inside, t = 1 outside
    int64_t v = 0;
    for (auto& e : edges) {
      if ((mask >> e[0] & 1) && !(mask >> e[1] & 1)) v += e[2];
    }
    if (best < 0 || v < best) best = v;
  }
  return best;
}

TEST(MaxFlow, MatchesBruteForceMinCut) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    int nodes = 2 + static_cast<int>(rng.uniform_index(9));
    MaxFlow g(nodes);
    std::vector<std::array<int64_t, 3>> edges;
    int count = static_cast<int>(rng.uniform_index(3 * nodes));
    for (int k = 0; k < count; ++k) {
      int u = static_cast<int>(rng.uniform_index(nodes));
      int v = static_cast<int>(rng.uniform_index(nodes));
      if (u == v) continue;
      int64_t c = static_cast<int64_t>(rng.uniform_index(6));
      g.add_edge(u, v, c);
      edges.push_back({u, v, c});
    }
    EXPECT_EQ(g.solve(0, 1), brute_min_cut(nodes, edges));
  }
}

TEST(MaxFlow, CapacityRaiseContinues) {
  MaxFlow g(3);
  int e = g.add_edge(0, 2, 1);
  g.add_edge(2, 1, 5);
  EXPECT_EQ(g.solve(0, 1), 1);
  g.set_capacity(e, 4);
  EXPECT_EQ(g.solve(0, 1), 4);
}

TEST(BoundedFlow, LowerBoundsRespected) {
  // s -> a [2,3], a -> t [0,1] is infeasible; with a -> t [0,2] feasible.
  std::vector<BoundedArc> arcs = {{0, 2, 2, 3}, {2, 1, 0, 1}};
  EXPECT_FALSE(feasible_bounded_flow(3, arcs, 0, 1).has_value());
  arcs[1].upper = 2;
  auto f = feasible_bounded_flow(3, arcs, 0, 1);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ((*f)[0], 2);
}

TEST(GoodAssignment, PrivateResourcesFullAssignment) {
  auto a = good_assignment({{0, 1}, {2, 3, 4}}, all_of(5), {2, 3}, 1, 0);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->per_config[0], (ResourceSet{0, 1}));
  EXPECT_EQ(a->per_config[1], (ResourceSet{2, 3, 4}));
}

TEST(GoodAssignment, CutIsolatingConfig) {
  // Config 0 only reaches resource 0, which config 1 also needs twice.
  EXPECT_FALSE(good_assignment({{0}, {0, 1}}, all_of(2), {1, 2}, 1, 0));
  EXPECT_TRUE(good_assignment({{0}, {0, 1}}, all_of(2), {1, 2}, 2, 0));
}

// Exhaustive search over per-configuration subsets.
bool brute_good(const std::vector<ResourceSet>& family,
                const std::vector<char>& in, const std::vector<int64_t>& demand,
                int64_t gamma, size_t c, std::vector<int>& use) {
  if (c == family.size()) return true;
  ResourceSet avail;
  for (int j : family[c]) {
    if (in[j]) avail.push_back(j);
  }
  for (uint32_t mask = 0; mask < (1u << avail.size()); ++mask) {
    if (__builtin_popcount(mask) != demand[c]) continue;
    bool ok = true;
    for (size_t b = 0; b < avail.size(); ++b) {
      if ((mask >> b & 1) && use[avail[b]] >= gamma) ok = false;
    }
    if (!ok) continue;
    for (size_t b = 0; b < avail.size(); ++b) {
      if (mask >> b & 1) ++use[avail[b]];
    }
    bool rest = brute_good(family, in, demand, gamma, c + 1, use);
    for (size_t b = 0; b < avail.size(); ++b) {
      if (mask >> b & 1) --use[avail[b]];
    }
    if (rest) return true;
  }
  return false;
}

TEST(GoodAssignment, AgreesWithExhaustiveSearch) {
  Rng rng(2);
  const std::vector<Rational> epsilons = {0, Rational(1, 4), Rational(1, 2)};
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_index(7));
    int f = 1 + static_cast<int>(rng.uniform_index(3));
    std::vector<ResourceSet> family(f);
    std::vector<int64_t> alpha(f);
    for (int c = 0; c < f; ++c) {
      for (int j = 0; j < n; ++j) {
        if (rng.uniform_index(2)) family[c].push_back(j);
      }
      alpha[c] = static_cast<int64_t>(rng.uniform_index(4));
    }
    std::vector<char> in(n);
    for (auto& b : in) b = rng.uniform_index(4) != 0;
    int64_t gamma = 1 + static_cast<int64_t>(rng.uniform_index(2));
    for (const Rational& eps : epsilons) {
      std::vector<int> use(n, 0);
      bool expect = brute_good(family, in, scaled_demand(alpha, eps), gamma, 0, use);
      EXPECT_EQ(good_assignment(family, in, alpha, gamma, eps).has_value(), expect);
      EXPECT_EQ(good_assignment_exists_by_subfamilies(family, in, alpha, gamma, eps),
                expect);
    }
  }
}

TEST(LiftLevel, DisjointConfigurations) {
  std::vector<char> level(12, 1);
  auto r = lift_level({{0, 1, 2, 3}, {4, 5}, {6, 7, 8, 9, 10, 11}}, level, {1, 2, 1},
                      3, 1, 12);
  EXPECT_FALSE(r.shortfall);
  EXPECT_EQ(r.assignment.per_config[0].size(), 3u);
  EXPECT_EQ(r.assignment.per_config[1].size(), 2u);
  EXPECT_EQ(r.assignment.per_config[2].size(), 3u);
}

TEST(LiftLevel, DeterministicEveryEllth) {
  const int ell = 4;
  std::vector<char> level_k(32, 1), level_k1(32, 0);
  for (int j = 0; j < 32; j += ell) level_k1[j] = 1;
  std::vector<ResourceSet> family = {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}};
  auto prev = good_assignment(family, level_k1, {2, 2}, 1, 0);
  ASSERT_TRUE(prev.has_value());
  auto r = lift_level(family, level_k, {2, 2}, ell, 1, 32);
  EXPECT_EQ(r.assignment.per_config[0].size(), 8u);
  EXPECT_DOUBLE_EQ(flow_lift_ratio(family, level_k, level_k1, {2, 2}, ell, 1), 4.0);
}

TEST(LiftLevel, ShortfallFallsBackToSigma) {
  std::vector<char> level(3, 1);
  // Large n keeps epsilon = 1/ln n small enough for a real shortfall.
  auto r = lift_level({{0, 1, 2}, {0, 1, 2}}, level, {1, 1}, 3, 1, 1000000);
  EXPECT_TRUE(r.shortfall);
  EXPECT_LT(r.sigma, 1.0);
  LiftOptions strict;
  strict.sigma_floor = 0.9;
  EXPECT_THROW(lift_level({{0, 1, 2}, {0, 1, 2}}, level, {1, 1}, 3, 1, 1000000,
                          strict),
               ResampleNeeded);
}

}  // namespace
}  // namespace santa
