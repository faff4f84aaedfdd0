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
#include "santa/sampling.h"

#include <cmath>

#include "gtest/gtest.h"
#include "santa/errors.h"
#include "santa/generators.h"
#include "santa/rng.h"

namespace santa {
namespace {

GroupedHypergraph from_sizes(int n, const std::vector<int>& sizes,
                             uint64_t seed) {
  Rng rng(seed);
  std::vector<Configuration> configs;
  for (size_t p = 0; p < sizes.size(); ++p) {
    std::vector<int> all(n);
    for (int j = 0; j < n; ++j) all[j] = j;
    for (int t = 0; t < sizes[p]; ++t) {
      std::swap(all[t], all[t + rng.uniform_index(n - t)]);
    }
    configs.push_back({static_cast<int>(p),
                       normalized({all.begin(), all.begin() + sizes[p]})});
  }
  return make_ungrouped(static_cast<int>(sizes.size()), n, std::move(configs));
}

TEST(SizeClasses, BoundariesAreExact) {
  // ell = 2: class 0 below 16, class 1 in [16, 32), class 2 in [32, 64).
  GroupedHypergraph gh = from_sizes(64, {15, 16, 31, 32, 63}, 1);
  SizeClasses sc = size_classes(gh, 2);
  EXPECT_EQ(sc.class_of, (std::vector<int>{0, 1, 1, 2, 2}));
  EXPECT_EQ(sc.d, 2);
  EXPECT_EQ(sc.members[1], (std::vector<int>{1, 2}));
  EXPECT_LE(sc.d, std::log(64.0) / std::log(2.0) + 1);
}

TEST(SampleHierarchy, BinomialLevelSize) {
  const int n = 10000;
  ResourceHierarchy h = sample_hierarchy(n, 2, 1, 77);
  const double count = static_cast<double>(h.level(1).size());
  EXPECT_LT(std::abs(count - 5000.0), 5 * 50.0);
}

TEST(SampleHierarchy, NestedAndReproducible) {
  ResourceHierarchy a = sample_hierarchy(5000, 3, 4, 5);
  ResourceHierarchy b = sample_hierarchy(5000, 3, 4, 5);
  EXPECT_EQ(a.depth, b.depth);
  for (int k = 1; k <= 4; ++k) {
    for (int j : a.level(k)) EXPECT_TRUE(a.contains(k - 1, j));
  }
  ResourceHierarchy z = sample_hierarchy(10, 3, 0, 5);
  EXPECT_EQ(z.level(0).size(), 10u);
}

TEST(SizeProperty, LevelZeroAlwaysPasses) {
  GroupedHypergraph gh = from_sizes(50, {10, 20, 30}, 2);
  SizeClasses sc = size_classes(gh, 2);
  ResourceHierarchy h = sample_hierarchy(50, 2, sc.d, 3);
  EXPECT_TRUE(check_size_property(gh, h, sc).ok);
}

TEST(SizeProperty, EveryEllThResourcePassesExactly) {
  const int n = 256;
  GroupedHypergraph gh = from_sizes(n, {n}, 1);
  SizeClasses sc = size_classes(gh, 2);  // 256 = 2^8 -> class 5
  ASSERT_EQ(sc.d, 5);
  ResourceHierarchy h;
  h.ell = 2;
  h.d = sc.d;
  h.depth.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    int k = 0;
    while (k < sc.d && (j % (1 << (k + 1))) == 0) ++k;
    h.depth[j] = k;
  }
  PropertyCheck check = check_size_property(gh, h, sc);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.checked, 5);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(h.level(k).size(), size_t(n >> k));
}

TEST(SizeProperty, ReportsViolation) {
  GroupedHypergraph gh = from_sizes(32, {32}, 1);
  SizeClasses sc = size_classes(gh, 2);
  ResourceHierarchy h;
  h.ell = 2;
  h.d = sc.d;
  h.depth.assign(32, 0);  // nothing survives
  PropertyCheck check = check_size_property(gh, h, sc);
  ASSERT_FALSE(check.ok);
  EXPECT_EQ(check.violations.front().level, 1);
  EXPECT_EQ(check.violations.front().value, 0);
}

TEST(SizeProperty, MonteCarloPassRate) {
  const int n = 4000;
  GroupedHypergraph gh = from_sizes(n, {300, 500, 800, 1000}, 9);
  SizeClasses sc = size_classes(gh, 4);  // class 1 for sizes in [256, 1024)
  ASSERT_EQ(sc.d, 1);
  int pass = 0;
  for (uint64_t t = 0; t < 200; ++t) {
    pass += check_size_property(gh, sample_hierarchy(n, 4, sc.d, t), sc).ok;
  }
  EXPECT_GE(pass, 198);
}

TEST(OverlapProperty, DisjointPasses) {
  std::vector<Configuration> configs = {{0, {0, 1}}, {1, {2, 3}}};
  GroupedHypergraph gh = make_ungrouped(2, 4, configs);
  SizeClasses sc = size_classes(gh, 2);
  ResourceHierarchy h = sample_hierarchy(4, 2, sc.d, 0);
  PropertyCheck check = check_overlap_property(gh, h, sc);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.checked, 2);
}

TEST(OverlapProperty, MatchesDirectCounting) {
  // Heavy overlap: 6 configurations of class 1 (size >= 16 for ell = 2)
  // drawn from 24 resources.
  const int n = 24;
  GroupedHypergraph gh = from_sizes(n, {20, 20, 18, 17, 16, 22}, 4);
  SizeClasses sc = size_classes(gh, 2);
  ASSERT_EQ(sc.d, 1);
  ResourceHierarchy h = sample_hierarchy(n, 2, sc.d, 8);
  PropertyCheck check = check_overlap_property(gh, h, sc);
  bool expect_ok = true;
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    const ResourceSet& cs = gh.configurations[c].resources;
    Rational lhs = 0, sum = 0;
    for (size_t o = 0; o < gh.configurations.size(); ++o) {
      ResourceSet both = intersect(cs, gh.configurations[o].resources);
      sum += static_cast<int>(both.size());
      for (int j : both) lhs += h.contains(1, j);
    }
    Rational rhs = Rational(10, 2) * (static_cast<int>(cs.size()) + sum);
    expect_ok &= lhs <= rhs;
  }
  EXPECT_EQ(check.ok, expect_ok);
}

TEST(Chernoff, KnownValues) {
  EXPECT_DOUBLE_EQ(chernoff_tail(100, 1, 1, Tail::kUpper), std::exp(-100.0 / 3));
  EXPECT_NEAR(chernoff_tail(100, 1e-9, 1, Tail::kUpper), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(chernoff_tail(100, 0.5, 2, Tail::kLower), std::exp(-6.25));
  EXPECT_THROW(chernoff_tail(1, 1.5, 1, Tail::kLower), ContractError);
  EXPECT_THROW(chernoff_tail(1, -1, 1, Tail::kUpper), ContractError);
}

TEST(Chernoff, BinomialTailsBelowBound) {
  // Binomial(1000, 1/2), mu = 500, delta = 0.1: thresholds 550 and 450.
  Rng rng(2024);
  const int trials = 100000;
  int upper = 0, lower = 0;
  for (int t = 0; t < trials; ++t) {
    int x = 0;
    for (int b = 0; b < 1000; b += 64) {
      uint64_t bits = rng.next();
      int take = std::min(64, 1000 - b);
      if (take < 64) bits &= (uint64_t{1} << take) - 1;
      x += __builtin_popcountll(bits);
    }
    upper += x >= 550;
    lower += x <= 450;
  }
  EXPECT_LE(static_cast<double>(upper) / trials,
            chernoff_tail(500, 0.1, 1, Tail::kUpper));
  EXPECT_LE(static_cast<double>(lower) / trials,
            chernoff_tail(500, 0.1, 1, Tail::kLower));
}

TEST(ResampleUntilGood, ClassZeroPassesFirstTry) {
  GroupedHypergraph gh = from_sizes(20, {5, 6, 7}, 3);
  SizeClasses sc = size_classes(gh, 2);
  HierarchyDraw d = resample_until_good(gh, sc, 5, 1);
  EXPECT_EQ(d.tries, 1);
}

TEST(ResampleUntilGood, TinyEllCountsTries) {
  // ell = 2 and size 16 configurations: level 1 needs 4..12 survivors.
  GroupedHypergraph gh = from_sizes(40, {16, 16, 16, 16, 16, 16}, 6);
  SizeClasses sc = size_classes(gh, 2);
  int total = 0;
  for (uint64_t s = 0; s < 20; ++s) {
    HierarchyDraw d = resample_until_good(gh, sc, 100, s);
    EXPECT_GE(d.tries, 1);
    EXPECT_LE(d.tries, 100);
    total += d.tries;
  }
  EXPECT_GE(total, 20);
}

TEST(ResampleUntilGood, CapCarriesWitness) {
  GroupedHypergraph gh = from_sizes(16, {16}, 1);
  SizeClasses sc = size_classes(gh, 2);
  // A crafted class table puts a 16-element set in class 5; level 5 then
  // needs a survivor count in [1/4, 3/4], which no integer meets.
  sc.class_of[0] = 5;
  sc.d = 5;
  sc.members.assign(6, {});
  sc.members[5] = {0};
  EXPECT_THROW(resample_until_good(gh, sc, 3, 1), CapExceededError);
}

TEST(TheoryEll, Formula) {
  EXPECT_EQ(theory_ell(16, 1024), 300000LL * 1000);
  EXPECT_EQ(theory_ell(int64_t{1} << 40, 4), int64_t{1} << 40);
}

}  // namespace
}  // namespace santa
