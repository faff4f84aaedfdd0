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
#include "santa/reduction.h"

#include <memory>

#include "gtest/gtest.h"
#include "santa/errors.h"
#include "santa/generators.h"
#include "santa/rng.h"

namespace santa {
namespace {

ClusterDecomposition sampled(std::vector<std::vector<ResourceSet>> per_cluster) {
  ClusterDecomposition dec;
  dec.ell = static_cast<int>(per_cluster.front().size());
  for (size_t h = 0; h < per_cluster.size(); ++h) {
    Cluster c;
    c.players = {static_cast<int>(h)};
    for (auto& r : per_cluster[h]) c.sampled.push_back({static_cast<int>(h), r});
    dec.clusters.push_back(std::move(c));
  }
  return dec;
}

TEST(BuildWeighted, LinearWeightsProportionalToValues) {
  LinearOracle f({1, 2, 3, 4});
  ClusterDecomposition dec = sampled({{{0, 1, 2, 3}}});
  WeightedHypergraph h = build_weighted_hypergraph(dec, f, 10);
  ASSERT_EQ(h.configurations.size(), 1u);
  EXPECT_EQ(h.weights[0], (std::vector<Rational>{Rational(1, 10), Rational(2, 10),
                                                 Rational(3, 10), Rational(4, 10)}));
  EXPECT_EQ(h.total_weight(0), 1);
}

// Sets {0,1}, {1,2}, {2,3}: order by singleton value is 0, 1, 2 (all 2,
// ties by id); marginals 2, 1, 1 sum to f(C) = 4.
TEST(BuildWeighted, CoverageTelescopes) {
  CoverageOracle f(4, {{0, 1}, {1, 2}, {2, 3}});
  ClusterDecomposition dec = sampled({{{0, 1, 2}}});
  WeightedHypergraph h = build_weighted_hypergraph(dec, f, 4);
  EXPECT_EQ(h.weights[0], (std::vector<Rational>{Rational(1, 2), Rational(1, 4),
                                                 Rational(1, 4)}));
}

TEST(BuildWeighted, SmallConfigurationIsStructural) {
  LinearOracle f({1, 1});
  ClusterDecomposition dec = sampled({{{0}}});
  EXPECT_THROW(build_weighted_hypergraph(dec, f, 10), StructuralError);
}

TEST(BuildWeighted, ThinWeightBound) {
  // Values below T*/(100 alpha) give weights at most 5/(100 alpha).
  const Rational t = 100, alpha = 2;
  std::vector<Rational> values;
  Rng rng(1);
  for (int j = 0; j < 200; ++j) {
    values.push_back(Rational(1 + static_cast<int>(rng.uniform_index(49)), 100));
  }
  LinearOracle f(values);
  ResourceSet all;
  for (int j = 0; j < 200; ++j) all.push_back(j);
  ClusterDecomposition dec = sampled({{all}});
  WeightedHypergraph h = build_weighted_hypergraph(dec, f, t);
  for (const auto& w : h.weights[0]) EXPECT_LE(w, Rational(5) / (100 * alpha));
}

TEST(RoundWeights, PowerOfTwoFloorAndCutoff) {
  WeightedHypergraph h{1, 4, {{0, {0, 1, 2, 3}}},
                       {{Rational(3, 10), Rational(1, 10), Rational(3, 10),
                         Rational(3, 10)}}};
  WeightedHypergraph r = round_weights(h);
  EXPECT_EQ(r.configurations[0].resources, (ResourceSet{0, 2, 3}));
  EXPECT_EQ(r.weights[0], (std::vector<Rational>{Rational(1, 4), Rational(1, 4),
                                                 Rational(1, 4)}));
}

TEST(RoundWeights, RandomTotalsStayInRange) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(30));
    const int k = 1 + static_cast<int>(rng.uniform_index(n));
    std::vector<Rational> raw;
    Rational sum = 0;
    for (int t = 0; t < k; ++t) {
      raw.push_back(1 + static_cast<int>(rng.uniform_index(1000)));
      sum += raw.back();
    }
    ResourceSet res;
    for (int t = 0; t < k; ++t) {
      res.push_back(t);
      raw[t] /= sum;
    }
    WeightedHypergraph h{1, n, {{0, res}}, {raw}};
    WeightedHypergraph r = round_weights(h);
    Rational total = r.total_weight(0);
    EXPECT_GE(total * 4, 1);
    EXPECT_LE(total, 1);
    for (const auto& w : r.weights[0]) {
      EXPECT_TRUE(is_power_of_two(w));
      EXPECT_GE(w * pow2(bucket_count(n)), 1);
    }
  }
}

TEST(ToGrouped, BucketsByExponent) {
  WeightedHypergraph h{1, 3, {{0, {0, 1, 2}}},
                       {{Rational(1, 4), Rational(1, 4), Rational(1, 2)}}};
  GroupedHypergraph gh = to_grouped(h, 1);
  const int b = bucket_count(3);
  EXPECT_EQ(b, 3);
  ASSERT_EQ(gh.configurations.size(), static_cast<size_t>(b));
  EXPECT_EQ(gh.configurations[0].resources, ResourceSet{2});
  EXPECT_EQ(gh.configurations[1].resources, (ResourceSet{0, 1}));
  EXPECT_TRUE(gh.configurations[2].resources.empty());
  EXPECT_EQ(gh.groups[0].players, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(validate_hypergraph(gh).empty());
}

TEST(ToGrouped, RejectsOffGridWeight) {
  WeightedHypergraph h{1, 2, {{0, {0}}}, {{Rational(1, 3)}}};
  EXPECT_THROW(to_grouped(h, 1), StructuralError);
}

TEST(ToGrouped, DegreeAndCountsPreserved) {
  Rng rng(4);
  WeightedHypergraph h;
  h.num_players = 3;
  h.num_resources = 20;
  for (int p = 0; p < 3; ++p) {
    for (int t = 0; t < 4; ++t) {
      ResourceSet r;
      std::vector<Rational> w;
      for (int j = 0; j < 20; ++j) {
        if (rng.uniform_index(3) == 0) {
          r.push_back(j);
          w.push_back(pow2(-static_cast<int>(rng.uniform_index(6))));
        }
      }
      if (r.empty()) {
        r.push_back(0);
        w.push_back(1);
      }
      h.configurations.push_back({p, r});
      h.weights.push_back(w);
    }
  }
  GroupedHypergraph gh = to_grouped(h, 4);
  const int b = bucket_count(20);
  EXPECT_EQ(gh.num_players, 3 * b);
  std::vector<int> before(20, 0), after(20, 0);
  for (const auto& c : h.configurations) {
    for (int j : c.resources) ++before[j];
  }
  for (const auto& c : gh.configurations) {
    for (int j : c.resources) ++after[j];
  }
  EXPECT_EQ(before, after);
  for (size_t c = 0; c < h.configurations.size(); ++c) {
    size_t count = 0;
    for (int s = 0; s < b; ++s) {
      count += gh.configurations[c * b + s].resources.size();
    }
    EXPECT_EQ(count, h.configurations[c].resources.size());
  }
}

TEST(LiftMatching, FullAssignmentIsOneRelaxed) {
  WeightedHypergraph h{1, 3, {{0, {0, 1, 2}}},
                       {{Rational(1, 4), Rational(1, 4), Rational(1, 2)}}};
  GroupedHypergraph gh = to_grouped(h, 1);
  RelaxedMatching gm{{0, 1, 2}, {{2}, {0, 1}, {}}, 1};
  LiftedMatching lm = lift_matching(gh, gm, h);
  EXPECT_EQ(lm.matching.chosen, std::vector<int>{0});
  EXPECT_EQ(lm.matching.assigned[0], (ResourceSet{0, 1, 2}));
  ASSERT_TRUE(lm.weighted_alpha.has_value());
  EXPECT_EQ(*lm.weighted_alpha, 1);
}

// Two buckets: four resources of weight 1/8 and eight of weight 1/16
// (total 1). With alpha = 2 the grouped matching gives floor(4/2) = 2 and
// floor(8/2) = 4 resources, weight 2/8 + 4/16 = 1/2 >= 1/(3 alpha).
TEST(LiftMatching, FloorAssignmentMeetsBound) {
  ResourceSet res;
  std::vector<Rational> w;
  for (int j = 0; j < 12; ++j) {
    res.push_back(j);
    w.push_back(j < 4 ? Rational(1, 8) : Rational(1, 16));
  }
  WeightedHypergraph h{1, 12, {{0, res}}, {w}};
  GroupedHypergraph gh = to_grouped(h, 1);
  const int b = bucket_count(12);
  RelaxedMatching gm;
  gm.alpha = 2;
  for (int s = 0; s < b; ++s) {
    gm.chosen.push_back(s);
    gm.assigned.push_back({});
  }
  gm.assigned[2] = {0, 1};
  gm.assigned[3] = {4, 5, 6, 7};
  LiftedMatching lm = lift_matching(gh, gm, h);
  ASSERT_TRUE(lm.weighted_alpha.has_value());
  EXPECT_EQ(*lm.weighted_alpha, 2);
  EXPECT_GE(1 / *lm.weighted_alpha, Rational(1, 6));
}

TEST(LiftMatching, SmallBucketsMayStayEmpty) {
  ResourceSet res{0, 1, 2};
  WeightedHypergraph h{1, 3, {{0, res}},
                       {{Rational(1, 2), Rational(1, 4), Rational(1, 4)}}};
  GroupedHypergraph gh = to_grouped(h, 1);
  RelaxedMatching gm{{0, 1, 2}, {{0}, {}, {}}, 3};
  LiftedMatching lm = lift_matching(gh, gm, h);
  ASSERT_TRUE(lm.weighted_alpha.has_value());
  EXPECT_EQ(*lm.weighted_alpha, 2);
}

TEST(LiftMatching, InconsistentMatchingRejected) {
  WeightedHypergraph h{1, 2, {{0, {0}}, {0, {1}}}, {{1}, {1}}};
  GroupedHypergraph gh = to_grouped(h, 2);
  const int b = bucket_count(2);
  RelaxedMatching gm;
  gm.alpha = 1;
  for (int s = 0; s < b; ++s) {
    gm.chosen.push_back(s == 0 ? 0 : b + s);
    gm.assigned.push_back({});
  }
  gm.assigned[0] = {0};
  EXPECT_THROW(lift_matching(gh, gm, h), ContractError);
}

}  // namespace
}  // namespace santa
