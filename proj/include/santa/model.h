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
#ifndef SANTA_MODEL_H_
#define SANTA_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "santa/rational.h"
#include "santa/submodular.h"

namespace santa {

// Players 0..m-1, resources 0..n-1; player i values S as f(S ∩ gamma[i]).
struct SantaInstance {
  int m = 0;
  int n = 0;
  std::vector<ResourceSet> gamma;
  OracleHandle valuation;

  // f(S ∩ gamma[player]).
  Rational utility(int player, const ResourceSet& set) const;
  Rational singleton_value(int resource) const;
};

struct Configuration {
  int player = 0;
  ResourceSet resources;

  bool operator==(const Configuration&) const = default;
};

struct WeightedHypergraph {
  int num_players = 0;
  int num_resources = 0;
  std::vector<Configuration> configurations;
  // weights[c][t] belongs to configurations[c].resources[t].
  std::vector<std::vector<Rational>> weights;

  Rational total_weight(int config) const;
};

// One consistent set is one configuration index per group member, aligned
// with Group::players.
struct Group {
  std::vector<int> players;
  std::vector<std::vector<int>> consistent_sets;
};

struct GroupedHypergraph {
  int num_players = 0;
  int num_resources = 0;
  std::vector<Configuration> configurations;
  std::vector<Group> groups;
  int ell = 1;
  // Optional: index of the weighted configuration each configuration was
  // bucketed from. Empty unless produced by to_grouped.
  std::vector<int> source_config;

  int group_of_player(int player) const;
  std::vector<int> group_index() const;
};

// Ungrouped hypergraph: every player is its own group and every
// configuration of that player is a consistent set. ell is the max of the
// configurations per player and the resource degree, at least 1.
GroupedHypergraph make_ungrouped(int num_players, int num_resources,
                                 std::vector<Configuration> configurations);

struct RelaxedMatching {
  std::vector<int> chosen;               // per player, configuration index
  std::vector<ResourceSet> assigned;     // per player
  Rational alpha = 1;
};

struct VerifyResult {
  bool ok = true;
  std::string violation;
};

std::vector<std::string> validate_instance(const SantaInstance& inst);
std::vector<std::string> validate_hypergraph(const GroupedHypergraph& gh);
std::vector<std::string> validate_hypergraph(const WeightedHypergraph& h);

// Throws StructuralError on out of range indices. For grouped hypergraphs
// checks floor coverage at m.alpha, disjointness and group consistency.
VerifyResult verify_relaxed_matching(const GroupedHypergraph& gh,
                                     const RelaxedMatching& m);
VerifyResult verify_relaxed_matching(const WeightedHypergraph& h,
                                     const RelaxedMatching& m);

// Smallest alpha in the candidate set
//   {s/t : s a configuration size of gh, 1 <= t <= s} ∪ {s+1} ∪ {1}
// such that |assigned[i]| >= floor(|C_i| / alpha) for every player.
Rational achieved_alpha(const GroupedHypergraph& gh,
                        const std::vector<int>& chosen,
                        const std::vector<ResourceSet>& assigned);
// max over players of w(C_i) / w(assigned[i]); nullopt if some player has
// positive configuration weight and zero assigned weight.
std::optional<Rational> achieved_alpha(const WeightedHypergraph& h,
                                       const std::vector<int>& chosen,
                                       const std::vector<ResourceSet>& assigned);

// Sorted distinct alpha candidates of gh (see achieved_alpha).
std::vector<Rational> alpha_candidates(const GroupedHypergraph& gh);

// Per-player configuration choice from one consistent set index per group.
std::vector<int> chosen_from_sets(const GroupedHypergraph& gh,
                                  const std::vector<int>& set_per_group);

struct PartitionCheck {
  bool ok = true;
  std::string violation;
  Rational min_value = 0;
};

// Disjointness, ranges and S_i ⊆ gamma[i]; min_value = min_i f_i(S_i).
PartitionCheck check_partition(const SantaInstance& inst,
                               const std::vector<ResourceSet>& partition);

// Additive valuations with per-player values; any resource may go to any
// player.
struct LinearSantaInstance {
  int m = 0;
  int n = 0;
  std::vector<std::vector<Rational>> values;  // values[i][j] >= 0

  Rational utility(int player, const ResourceSet& set) const;
};

std::vector<std::string> validate_instance(const LinearSantaInstance& inst);
PartitionCheck check_partition(const LinearSantaInstance& inst,
                               const std::vector<ResourceSet>& partition);
// values[i][j] = f({j}) for j in gamma[i], 0 otherwise. Throws
// ContractError unless the valuation is linear.
LinearSantaInstance to_linear(const SantaInstance& inst);

ResourceSet normalized(ResourceSet set);
ResourceSet intersect(const ResourceSet& a, const ResourceSet& b);
bool is_subset(const ResourceSet& a, const ResourceSet& b);

}  // namespace santa

#endif  // SANTA_MODEL_H_
