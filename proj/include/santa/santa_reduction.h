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
#ifndef SANTA_SANTA_REDUCTION_H_
#define SANTA_SANTA_REDUCTION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "santa/model.h"

namespace santa {

// Iterated base-2 logarithm: 1 for x <= 2, otherwise 1 + log_star(log2 x).
int log_star(double x);
// log2 applied k times; iterated_log(x, 0) = x.
double iterated_log(double x, int k);

// Santa instance built from an ungrouped hypergraph. Player p_{v,C} exists
// for each configuration C of v; v's t configurations share t - 1 private
// resources of value 1; resource u is worth 1/|C ∩ R| to p_{v,C} when
// u is in C. An empty configuration gets one dedicated value-1 resource.
struct MatchingToSanta {
  GroupedHypergraph hypergraph;
  LinearSantaInstance santa;
  std::vector<int> player_vertex;   // per Santa player
  std::vector<int> player_config;   // per Santa player
  std::vector<int> resource_vertex;  // per Santa resource, -1 if new
  std::vector<int> private_owner;    // per Santa resource, -1 if not private
  std::vector<std::vector<int>> players_of_vertex;

  // p_{v,C} for the chosen C receives the assigned resources; the others
  // take the private resources.
  std::vector<ResourceSet> to_santa(const RelaxedMatching& m) const;
  // Each v has a Santa player holding none of v's private resources; the
  // best valued such player fixes the configuration and its resources.
  RelaxedMatching to_matching(const std::vector<ResourceSet>& partition) const;
};

// Throws ContractError unless every group is a single player.
MatchingToSanta matching_to_santa(const GroupedHypergraph& gh);

enum class EdgeKind { kDirect, kGadget, kPair };

// Hypergraph of an instance whose players value resources in {0, v_i, 1}.
// Hypergraph players 0..m-1 and resources 0..n-1 copy the instance; each
// player with v_i < 1 adds ceil(1/v_i) new player/resource pairs.
struct ThreeLevelHypergraph {
  GroupedHypergraph hypergraph;
  std::vector<Rational> level;       // per instance player, 1 if none
  std::vector<int> gadget_owner;     // per hypergraph player, -1 if original
  std::vector<EdgeKind> edge_kind;   // per configuration
  std::vector<int> edge_resource;    // per configuration, -1 unless it holds
                                     // one instance resource

  // Instance assignment induced by a relaxed matching: direct edges give
  // their resource, gadget edges collect what the new vertices hold.
  std::vector<ResourceSet> to_assignment(const RelaxedMatching& m,
                                         int num_players) const;
};

// Throws ContractError if a player has two distinct values below 1.
ThreeLevelHypergraph three_level_hypergraph(const LinearSantaInstance& inst);

struct ReductionStats {
  int log_star = 1;  // log*(2n)
  int input_players = 0;
  int range_players = 0;   // auxiliary players of the range step
  int bundle_players = 0;  // auxiliary players of the bundle step
  int gadget_vertices = 0;
  int dropped_values = 0;  // positive values at or below 1/(2n)
  // Every bundle value lies in [0.5/(log*(2n) (log)^{k+1}(2n)),
  // 1/(log)^{k+1}(2n)].
  bool bundle_bounds_ok = true;
  // Hypergraph players = input + range + bundle + gadget counts, and below
  // m (1 + L' + L' n)(1 + 2n) with L' = log*(2n) - 1.
  bool size_formula_ok = true;
};

// Instance chain for one guess T of the optimum: values are divided by T,
// capped at 1, floored to powers of two and dropped at or below 1/(2n);
// range and bundle gadgets follow; values are then multiplied by
// log*(2n)^2 and capped at 1.
struct SantaToMatching {
  Rational guess;
  LinearSantaInstance original;
  LinearSantaInstance rounded;
  LinearSantaInstance three_level;
  std::vector<int> parent;  // per three-level player, -1 for input players
  std::vector<int> link;    // resource shared with the parent, or -1
  ThreeLevelHypergraph matching;
  ReductionStats stats;

  // Partition of the original instance. Auxiliary holdings move to the
  // parent when the parent holds the link resource; unassigned resources
  // then go one by one to the poorest player with positive value.
  std::vector<ResourceSet> to_santa(const RelaxedMatching& m) const;
};

// Throws ContractError on invalid input or a non-positive guess.
SantaToMatching santa_to_matching(const LinearSantaInstance& inst,
                                  const Rational& guess);

// nullopt when the matcher has no matching to offer.
using Matcher =
    std::function<std::optional<RelaxedMatching>(const GroupedHypergraph&)>;

// exact_min_alpha_pruned with the given budget; nullopt if a player has no
// configuration.
Matcher exact_matcher(int64_t budget = 1000000);

struct SantaViaMatching {
  std::vector<ResourceSet> partition;
  Rational value = 0;
  Rational guess = 0;   // guess behind the best partition
  Rational alpha = 0;   // alpha of that guess's matching
  int guesses = 0;
};

// Tries T = U, U/2, ... down to half the smallest positive value, where U
// is the smallest total value of a player, and keeps the best partition.
SantaViaMatching solve_santa_via_matching(const LinearSantaInstance& inst,
                                          const Matcher& matcher);

struct ReductionAudit {
  Rational opt = 0;
  Rational achieved = 0;
  double ratio = 1;  // opt / achieved; 1 when both are 0
  double bound = 1;  // (2 c log*(2n))^2
  int guesses = 0;
  bool ok = true;
};

// Runs solve_santa_via_matching with exact_matcher and compares with
// exact_santa_opt. BudgetError from either oracle propagates.
ReductionAudit composed_approx_ratio_audit(const LinearSantaInstance& inst,
                                           double c = 1,
                                           int64_t budget = 1000000);

}  // namespace santa

#endif  // SANTA_SANTA_REDUCTION_H_
