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
#include "santa/io.h"

#include <gtest/gtest.h>

#include <string>

#include "santa/errors.h"
#include "santa/generators.h"

namespace santa {
namespace {

SantaGenParams small_params() {
  SantaGenParams p;
  p.players = 3;
  p.resources = 8;
  return p;
}

// Utilities agree on every subset of resources for every player.
void expect_same_utilities(const SantaInstance& a, const SantaInstance& b) {
  ASSERT_EQ(a.m, b.m);
  ASSERT_EQ(a.n, b.n);
  EXPECT_EQ(a.gamma, b.gamma);
  for (int i = 0; i < a.m; ++i) {
    for (int mask = 0; mask < (1 << a.n); ++mask) {
      ResourceSet s;
      for (int j = 0; j < a.n; ++j) {
        if (mask >> j & 1) s.push_back(j);
      }
      ASSERT_EQ(a.utility(i, s), b.utility(i, s)) << "player " << i;
    }
  }
}

TEST(RationalJson, IntegersAndFractions) {
  EXPECT_TRUE(rational_to_json(Rational(7)).is_number_integer());
  EXPECT_EQ(rational_to_json(Rational(3, 4)), Json("3/4"));
  EXPECT_EQ(rational_from_json(Json("3/4")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(Json(-5)), Rational(-5));
  EXPECT_EQ(rational_from_json(Json("0.25")), Rational(1, 4));
  EXPECT_EQ(rational_from_json(Json(0.5)), Rational(1, 2));
  EXPECT_THROW(rational_from_json(Json("x/y")), ParseError);
  EXPECT_THROW(rational_from_json(Json::array()), ParseError);
}

TEST(InstanceJson, SantaRoundTripAllValuations) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const SantaInstance kinds[] = {
        generate_santa_linear(small_params(), seed),
        generate_santa_coverage(small_params(), seed),
        generate_santa_budgeted(small_params(), seed),
        generate_santa_matroid(small_params(), seed)};
    for (const SantaInstance& inst : kinds) {
      const Json j = to_json(inst);
      EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
      const InstanceFile back = instance_from_json(Json::parse(dump_json(j)));
      ASSERT_EQ(back.type, InstanceType::kSanta);
      expect_same_utilities(inst, back.santa);
      EXPECT_EQ(to_json(back.santa), j);
    }
  }
}

TEST(InstanceJson, HypergraphRoundTrip) {
  HypergraphGenParams p;
  p.groups = 3;
  p.group_size = 2;
  p.ell = 3;
  p.resources = 10;
  const GroupedHypergraph gh = generate_grouped_hypergraph(p, 4);
  const Json j = to_json(gh);
  const InstanceFile back = instance_from_json(j);
  ASSERT_EQ(back.type, InstanceType::kHypergraph);
  EXPECT_EQ(back.hypergraph.configurations, gh.configurations);
  ASSERT_EQ(back.hypergraph.groups.size(), gh.groups.size());
  for (size_t g = 0; g < gh.groups.size(); ++g) {
    EXPECT_EQ(back.hypergraph.groups[g].players, gh.groups[g].players);
    EXPECT_EQ(back.hypergraph.groups[g].consistent_sets,
              gh.groups[g].consistent_sets);
  }
  EXPECT_EQ(back.hypergraph.ell, gh.ell);
}

TEST(InstanceJson, MissingGroupsMeansUngrouped) {
  const Json j = Json::parse(R"({
    "schema_version": 1, "type": "hypergraph", "players": 2, "resources": 3,
    "configurations": [{"player": 0, "resources": [0, 1]},
                       {"player": 1, "resources": [2]}]})");
  const InstanceFile f = instance_from_json(j);
  EXPECT_EQ(f.hypergraph.groups.size(), 2u);
}

TEST(InstanceJson, SchemaErrors) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"type": "santa"})")),
               ParseError);
  EXPECT_THROW(instance_from_json(Json::parse(
                   R"({"schema_version": 2, "type": "santa"})")),
               ParseError);
  EXPECT_THROW(instance_from_json(Json::parse(
                   R"({"schema_version": 1, "type": "tree"})")),
               ParseError);
  // Configuration resource out of range is structural, not a parse issue.
  EXPECT_THROW(instance_from_json(Json::parse(R"({
    "schema_version": 1, "type": "hypergraph", "players": 1, "resources": 1,
    "configurations": [{"player": 0, "resources": [3]}]})")),
               StructuralError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(SolutionJson, RoundTrip) {
  SolutionFile s;
  s.chosen = std::vector<int>{0, 2};
  s.assigned = {{1, 2}, {0}};
  s.alpha = Rational(3, 2);
  const SolutionFile back = solution_from_json(to_json(s));
  EXPECT_EQ(back.chosen, s.chosen);
  EXPECT_EQ(back.assigned, s.assigned);
  EXPECT_EQ(back.alpha, s.alpha);
  EXPECT_FALSE(back.value.has_value());
  EXPECT_TRUE(to_json(back).at("value").is_null());
}

TEST(CheckSolution, SantaValueClaim) {
  InstanceFile f;
  f.santa = generate_santa_linear(small_params(), 2);
  std::vector<ResourceSet> part(f.santa.m);
  for (int j = 0; j < f.santa.n; ++j) {
    for (int i = 0; i < f.santa.m; ++i) {
      if (std::binary_search(f.santa.gamma[i].begin(), f.santa.gamma[i].end(),
                             j)) {
        part[i].push_back(j);
        break;
      }
    }
  }
  SolutionFile s = santa_solution(f.santa, part);
  SolutionCheck ok = check_solution(f, s);
  EXPECT_TRUE(ok.ok);
  ASSERT_TRUE(ok.recomputed_value.has_value());
  EXPECT_EQ(*ok.recomputed_value, *s.value);

  s.value = *s.value + 1;
  const SolutionCheck bad = check_solution(f, s);
  EXPECT_FALSE(bad.ok);
  ASSERT_FALSE(bad.violations.empty());
  EXPECT_NE(bad.violations[0].find("value claim"), std::string::npos);
}

TEST(CheckSolution, DuplicateResourceInMatching) {
  InstanceFile f;
  f.type = InstanceType::kHypergraph;
  f.hypergraph = make_ungrouped(
      2, 2, {Configuration{0, {0, 1}}, Configuration{1, {0, 1}}});
  SolutionFile s;
  s.chosen = std::vector<int>{0, 1};
  s.assigned = {{0}, {1}};
  s.alpha = 2;
  EXPECT_TRUE(check_solution(f, s).ok);
  s.assigned = {{0}, {0}};
  const SolutionCheck bad = check_solution(f, s);
  EXPECT_FALSE(bad.ok);
  bool found = false;
  for (const std::string& v : bad.violations) {
    found = found || v.find("duplicate resource") != std::string::npos;
  }
  EXPECT_TRUE(found);
}

TEST(CheckSolution, AlphaClaimMustMatch) {
  InstanceFile f;
  f.type = InstanceType::kHypergraph;
  f.hypergraph = make_ungrouped(1, 2, {Configuration{0, {0, 1}}});
  SolutionFile s;
  s.chosen = std::vector<int>{0};
  s.assigned = {{0, 1}};
  s.alpha = 2;
  const SolutionCheck c = check_solution(f, s);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.recomputed_alpha.has_value());
  EXPECT_EQ(*c.recomputed_alpha, Rational(1));
}

}  // namespace
}  // namespace santa
