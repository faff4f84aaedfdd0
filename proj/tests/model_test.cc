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
#include "santa/model.h"

#include <memory>

#include "gtest/gtest.h"
#include "santa/errors.h"
#include "santa/rational.h"
#include "santa/rng.h"

namespace santa {
namespace {

class ShiftedOracle : public ValuationOracle {
 public:
  ValuationKind kind() const override { return ValuationKind::kLinear; }
  int ground_size() const override { return 2; }

 protected:
  Rational eval_checked(std::span<const int> set) const override {
    return Rational(1 + static_cast<int64_t>(set.size()));
  }
};

SantaInstance two_resource_instance(ResourceSet gamma0) {
  return {1, 2, {std::move(gamma0)},
          std::make_shared<LinearOracle>(std::vector<Rational>{1, 2})};
}

TEST(ValidateInstance, WellFormed) {
  EXPECT_TRUE(validate_instance(two_resource_instance({0, 1})).empty());
}

TEST(ValidateInstance, RangeCheck) {
  auto v = validate_instance(two_resource_instance({5}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "resource id out of range");
}

TEST(ValidateInstance, NonzeroEmptySet) {
  SantaInstance inst{1, 2, {{0}}, std::make_shared<ShiftedOracle>()};
  auto v = validate_instance(inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "valuation nonzero on empty set");
}

TEST(VerifyRelaxedMatching, FullAssignment) {
  GroupedHypergraph gh = make_ungrouped(1, 2, {{0, {0, 1}}});
  RelaxedMatching m{{0}, {{0, 1}}, 1};
  EXPECT_TRUE(verify_relaxed_matching(gh, m).ok);
}

TEST(VerifyRelaxedMatching, DuplicateResource) {
  GroupedHypergraph gh = make_ungrouped(2, 2, {{0, {0, 1}}, {1, {0}}});
  RelaxedMatching m{{0, 1}, {{0}, {0}}, 2};
  VerifyResult r = verify_relaxed_matching(gh, m);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("duplicate resource"), std::string::npos);
}

TEST(VerifyRelaxedMatching, FloorArithmetic) {
  GroupedHypergraph gh;
  gh.num_players = 2;
  gh.num_resources = 4;
  gh.ell = 1;
  gh.configurations = {{0, {0, 1, 2}}, {1, {3}}};
  gh.groups = {{{0, 1}, {{0, 1}}}};
  RelaxedMatching m{{0, 1}, {{1}, {3}}, 2};
  EXPECT_TRUE(verify_relaxed_matching(gh, m).ok);
  m.alpha = Rational(3, 2);
  EXPECT_FALSE(verify_relaxed_matching(gh, m).ok);
}

TEST(VerifyRelaxedMatching, GroupConsistency) {
  GroupedHypergraph gh;
  gh.num_players = 2;
  gh.num_resources = 4;
  gh.ell = 2;
  gh.configurations = {{0, {0}}, {1, {1}}, {0, {2}}, {1, {3}}};
  gh.groups = {{{0, 1}, {{0, 1}, {2, 3}}}};
  RelaxedMatching good{{0, 1}, {{0}, {1}}, 1};
  RelaxedMatching mixed{{0, 3}, {{0}, {3}}, 1};
  EXPECT_TRUE(verify_relaxed_matching(gh, good).ok);
  EXPECT_FALSE(verify_relaxed_matching(gh, mixed).ok);
}

TEST(VerifyRelaxedMatching, IndexOutOfRangeThrows) {
  GroupedHypergraph gh = make_ungrouped(1, 1, {{0, {0}}});
  RelaxedMatching m{{3}, {{}}, 1};
  EXPECT_THROW(verify_relaxed_matching(gh, m), StructuralError);
}

TEST(VerifyRelaxedMatching, MonotoneInAlpha) {
  Rng rng(7);
  GroupedHypergraph gh = make_ungrouped(
      3, 9, {{0, {0, 1, 2, 3}}, {1, {3, 4, 5}}, {2, {5, 6, 7, 8}}});
  for (int trial = 0; trial < 200; ++trial) {
    RelaxedMatching m{{0, 1, 2}, {{}, {}, {}}, 1};
    std::vector<int> owner(9, -1);
    for (int i = 0; i < 3; ++i) {
      for (int j : gh.configurations[i].resources) {
        if (owner[j] < 0 && rng.uniform_index(2)) {
          owner[j] = i;
          m.assigned[i].push_back(j);
        }
      }
    }
    m.alpha = Rational(1 + static_cast<int64_t>(rng.uniform_index(8)), 2);
    if (m.alpha < 1) m.alpha = 1;
    const bool at = verify_relaxed_matching(gh, m).ok;
    m.alpha += Rational(1, 3);
    if (at) EXPECT_TRUE(verify_relaxed_matching(gh, m).ok);
  }
}

TEST(AchievedAlpha, SmallestPassingCandidate) {
  GroupedHypergraph gh = make_ungrouped(2, 6, {{0, {0, 1, 2, 3, 4}}, {1, {5}}});
  // 5 resources, 2 assigned: floor(5/a) <= 2 needs a > 5/3; smallest
  // candidate above 5/3 among {5/t, 6, 1, 2} is 2.
  EXPECT_EQ(achieved_alpha(gh, {0, 1}, {{0, 1}, {5}}), Rational(2));
  EXPECT_EQ(achieved_alpha(gh, {0, 1}, {{0, 1, 2, 3, 4}, {5}}), Rational(1));
  // Nothing assigned to the singleton: needs alpha > 1, candidate 5/4.
  EXPECT_EQ(achieved_alpha(gh, {0, 1}, {{0, 1, 2, 3, 4}, {}}),
            Rational(5, 4));
  // Nothing for the 5-set: alpha > 5, candidate 6.
  EXPECT_EQ(achieved_alpha(gh, {0, 1}, {{}, {5}}), Rational(6));
}

TEST(AchievedAlpha, AgreesWithCandidateScan) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Configuration> configs;
    int next = 0;
    for (int p = 0; p < 3; ++p) {
      int size = 1 + static_cast<int>(rng.uniform_index(7));
      ResourceSet r;
      for (int k = 0; k < size; ++k) r.push_back(next++);
      configs.push_back({p, r});
    }
    GroupedHypergraph gh = make_ungrouped(3, next, configs);
    std::vector<ResourceSet> assigned(3);
    for (int p = 0; p < 3; ++p) {
      for (int j : configs[p].resources) {
        if (rng.uniform_index(3) == 0) assigned[p].push_back(j);
      }
    }
    Rational scanned = -1;
    for (const Rational& a : alpha_candidates(gh)) {
      RelaxedMatching m{{0, 1, 2}, assigned, a};
      if (verify_relaxed_matching(gh, m).ok) {
        scanned = a;
        break;
      }
    }
    EXPECT_EQ(achieved_alpha(gh, {0, 1, 2}, assigned), scanned);
  }
}

TEST(WeightedVerify, CoverageThreshold) {
  WeightedHypergraph h;
  h.num_players = 1;
  h.num_resources = 2;
  h.configurations = {{0, {0, 1}}};
  h.weights = {{Rational(1, 4), Rational(3, 4)}};
  RelaxedMatching m{{0}, {{0}}, 4};
  EXPECT_TRUE(verify_relaxed_matching(h, m).ok);
  m.alpha = 3;
  EXPECT_FALSE(verify_relaxed_matching(h, m).ok);
  EXPECT_EQ(*achieved_alpha(h, {0}, {{0}}), Rational(4));
}

TEST(RationalText, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1e-3"), Rational(-1, 1000));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_EQ(floor_log2(Rational(3, 10)), -2);
  EXPECT_EQ(pow2(-2), Rational(1, 4));
  EXPECT_THROW(parse_rational("x"), StructuralError);
}

TEST(RngDeterminism, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.uniform_index(97), b.uniform_index(97));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
}

}  // namespace
}  // namespace santa
