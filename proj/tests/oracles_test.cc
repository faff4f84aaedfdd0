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
#include "santa/oracles.h"

#include <algorithm>
#include <functional>
#include <memory>

#include "brute_force.h"
#include "gtest/gtest.h"
#include "santa/errors.h"
#include "santa/generators.h"
#include "santa/rng.h"

namespace santa {
namespace {

// Max-min over players processed in order, each taking a subset of the
// resources still free: g(i, free) = max_S min(f(S), g(i + 1, free \ S)).
Rational subset_dp(const SantaInstance& inst) {
  const int n = inst.n;
  std::vector<std::vector<std::optional<Rational>>> memo(
      inst.m + 1, std::vector<std::optional<Rational>>(1u << n));
  std::function<Rational(int, uint32_t)> g = [&](int i, uint32_t free) {
    if (i == inst.m) return Rational(1000000);
    if (memo[i][free]) return *memo[i][free];
    uint32_t allowed = 0;
    for (int j : inst.gamma[i]) allowed |= 1u << j;
    allowed &= free;
    Rational best = -1;
    for (uint32_t s = allowed;; s = (s - 1) & allowed) {
      ResourceSet set;
      for (int j = 0; j < n; ++j) {
        if (s >> j & 1) set.push_back(j);
      }
      Rational v = std::min(inst.valuation->eval(set), g(i + 1, free & ~s));
      best = std::max(best, v);
      if (s == 0) break;
    }
    memo[i][free] = best;
    return best;
  };
  return g(0, (1u << n) - 1);
}

TEST(ExactSantaOpt, SinglePlayerTakesEverything) {
  SantaInstance inst{1, 3, {{0, 1, 2}},
                     std::make_shared<LinearOracle>(std::vector<Rational>{1, 2, 3})};
  SantaOptimum o = exact_santa_opt(inst);
  EXPECT_EQ(o.value, 6);
  EXPECT_EQ(o.partition[0], (ResourceSet{0, 1, 2}));
}

TEST(ExactSantaOpt, PrivateResources) {
  SantaInstance inst{2, 2, {{0}, {1}},
                     std::make_shared<LinearOracle>(std::vector<Rational>{3, 4})};
  EXPECT_EQ(exact_santa_opt(inst).value, 3);
}

TEST(ExactSantaOpt, MatchesSubsetDp) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    SantaGenParams p;
    p.players = 3;
    p.resources = 5;
    SantaInstance inst = seed % 2 ? generate_santa_coverage(p, seed)
                                  : generate_santa_mixed(p, seed);
    SantaOptimum o = exact_santa_opt(inst);
    EXPECT_EQ(o.value, subset_dp(inst)) << seed;
    PartitionCheck pc = check_partition(inst, o.partition);
    EXPECT_TRUE(pc.ok);
    EXPECT_EQ(pc.min_value, o.value);
  }
}

TEST(ExactSantaOpt, MonotoneInGamma) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    SantaGenParams p;
    p.players = 3;
    p.resources = 6;
    p.density = 0.4;
    SantaInstance inst = generate_santa_mixed(p, seed);
    Rational before = exact_santa_opt(inst).value;
    Rng rng(seed);
    int i = static_cast<int>(rng.uniform_index(3));
    int j = static_cast<int>(rng.uniform_index(6));
    inst.gamma[i] = normalized([&] {
      ResourceSet g = inst.gamma[i];
      g.push_back(j);
      return g;
    }());
    EXPECT_GE(exact_santa_opt(inst).value, before);
  }
}

TEST(ExactSantaOpt, BudgetRefusal) {
  SantaGenParams p;
  p.players = 10;
  p.resources = 12;
  p.density = 1.0;
  SantaInstance inst = generate_santa_linear(p, 1);
  EXPECT_THROW(exact_santa_opt(inst), BudgetError);
}

// Every way to hand each resource to one chosen configuration containing
// it, or to nobody.
Rational brute_min_alpha(const GroupedHypergraph& gh) {
  const auto group_sets = [&] {
    std::vector<int> counts;
    for (const auto& g : gh.groups) counts.push_back(g.consistent_sets.size());
    return counts;
  }();
  Rational best = -1;
  std::vector<int> sets(gh.groups.size(), 0);
  while (true) {
    std::vector<int> chosen = chosen_from_sets(gh, sets);
    std::vector<std::vector<int>> owners(gh.num_resources);
    for (size_t i = 0; i < chosen.size(); ++i) {
      for (int j : gh.configurations[chosen[i]].resources) {
        owners[j].push_back(static_cast<int>(i));
      }
    }
    std::vector<int> pick(gh.num_resources, 0);
    while (true) {
      std::vector<ResourceSet> assigned(chosen.size());
      for (int j = 0; j < gh.num_resources; ++j) {
        if (pick[j] > 0) assigned[owners[j][pick[j] - 1]].push_back(j);
      }
      Rational a = achieved_alpha(gh, chosen, assigned);
      if (best < 0 || a < best) best = a;
      int j = 0;
      for (; j < gh.num_resources; ++j) {
        if (++pick[j] <= static_cast<int>(owners[j].size())) break;
        pick[j] = 0;
      }
      if (j == gh.num_resources) break;
    }
    size_t g = 0;
    for (; g < sets.size(); ++g) {
      if (++sets[g] < group_sets[g]) break;
      sets[g] = 0;
    }
    if (g == sets.size()) break;
  }
  return best;
}

TEST(ExactMinAlpha, DisjointIsOne) {
  GroupedHypergraph gh = make_ungrouped(2, 4, {{0, {0, 1}}, {1, {2, 3}}});
  MinAlpha r = exact_min_alpha(gh);
  EXPECT_EQ(r.alpha, 1);
  EXPECT_TRUE(verify_relaxed_matching(gh, r.matching).ok);
}

TEST(ExactMinAlpha, ForcedSharedResource) {
  // Both players need resource 0; at alpha = 1 both demand it, at the next
  // candidate 2 the demands floor(1/2) = 0 fit.
  GroupedHypergraph gh = make_ungrouped(2, 1, {{0, {0}}, {1, {0}}});
  MinAlpha r = exact_min_alpha(gh);
  EXPECT_EQ(r.alpha, 2);
  EXPECT_EQ(r.alpha, brute_min_alpha(gh));
}

TEST(ExactMinAlpha, MatchesExhaustiveAssignment) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    HypergraphGenParams p;
    p.groups = 2;
    p.group_size = 1 + static_cast<int>(seed % 2);
    p.ell = 2;
    p.resources = 6;
    p.max_config = 3;
    GroupedHypergraph gh = generate_grouped_hypergraph(p, seed);
    MinAlpha r = exact_min_alpha(gh);
    EXPECT_EQ(r.alpha, brute_min_alpha(gh)) << seed;
    VerifyResult v = verify_relaxed_matching(gh, r.matching);
    EXPECT_TRUE(v.ok) << v.violation;
    EXPECT_EQ(achieved_alpha(gh, r.matching.chosen, r.matching.assigned), r.alpha);
  }
}

TEST(ExactMinAlpha, InvariantUnderResourcePermutation) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    HypergraphGenParams p;
    p.groups = 3;
    p.ell = 3;
    p.resources = 8;
    GroupedHypergraph gh = generate_grouped_hypergraph(p, seed);
    Rng rng(seed + 100);
    std::vector<int> perm(gh.num_resources);
    for (int j = 0; j < gh.num_resources; ++j) perm[j] = j;
    for (int j = gh.num_resources - 1; j > 0; --j) {
      std::swap(perm[j], perm[rng.uniform_index(j + 1)]);
    }
    GroupedHypergraph q = gh;
    for (auto& c : q.configurations) {
      for (int& j : c.resources) j = perm[j];
      c.resources = normalized(c.resources);
    }
    EXPECT_EQ(exact_min_alpha(gh).alpha, exact_min_alpha(q).alpha);
  }
}

TEST(ExactMinAlpha, BudgetRefusal) {
  HypergraphGenParams p;
  p.groups = 9;
  p.ell = 4;
  p.resources = 40;
  GroupedHypergraph gh = generate_grouped_hypergraph(p, 1);
  EXPECT_THROW(exact_min_alpha(gh, 1000), BudgetError);
}

TEST(ExactMinAlphaPruned, MatchesEnumeration) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    HypergraphGenParams p;
    p.groups = 2 + static_cast<int>(seed % 3);
    p.group_size = 1 + static_cast<int>(seed % 2);
    p.ell = 3;
    p.resources = 7;
    p.max_config = 4;
    GroupedHypergraph gh = generate_grouped_hypergraph(p, seed);
    MinAlpha full = exact_min_alpha(gh);
    MinAlpha pruned = exact_min_alpha_pruned(gh);
    EXPECT_EQ(pruned.alpha, full.alpha) << seed;
    VerifyResult v = verify_relaxed_matching(gh, pruned.matching);
    EXPECT_TRUE(v.ok) << v.violation;
    EXPECT_EQ(pruned.matching.alpha, pruned.alpha);
  }
}

TEST(ExactMinAlphaPruned, BudgetRefusal) {
  HypergraphGenParams p;
  p.groups = 9;
  p.ell = 4;
  p.resources = 40;
  GroupedHypergraph gh = generate_grouped_hypergraph(p, 1);
  EXPECT_THROW(exact_min_alpha_pruned(gh, 3), BudgetError);
}

}  // namespace
}  // namespace santa
