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

#include <algorithm>
#include <set>
#include <string>

#include "santa/errors.h"

namespace santa {

ResourceSet normalized(ResourceSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

ResourceSet intersect(const ResourceSet& a, const ResourceSet& b) {
  ResourceSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool is_subset(const ResourceSet& a, const ResourceSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Rational SantaInstance::utility(int player, const ResourceSet& set) const {
  ResourceSet sorted = normalized(set);
  return valuation->eval(intersect(sorted, gamma[player]));
}

Rational SantaInstance::singleton_value(int resource) const {
  std::vector<int> one{resource};
  return valuation->eval(one);
}

Rational WeightedHypergraph::total_weight(int config) const {
  Rational total = 0;
  for (const Rational& w : weights[config]) total += w;
  return total;
}

int GroupedHypergraph::group_of_player(int player) const {
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto& ps = groups[g].players;
    if (std::find(ps.begin(), ps.end(), player) != ps.end()) {
      return static_cast<int>(g);
    }
  }
  return -1;
}

std::vector<int> GroupedHypergraph::group_index() const {
  std::vector<int> index(num_players, -1);
  for (size_t g = 0; g < groups.size(); ++g) {
    for (int p : groups[g].players) {
      if (p >= 0 && p < num_players) index[p] = static_cast<int>(g);
    }
  }
  return index;
}

GroupedHypergraph make_ungrouped(int num_players, int num_resources,
                                 std::vector<Configuration> configurations) {
  GroupedHypergraph gh;
  gh.num_players = num_players;
  gh.num_resources = num_resources;
  gh.configurations = std::move(configurations);
  gh.groups.resize(num_players);
  for (int p = 0; p < num_players; ++p) gh.groups[p].players = {p};
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    int p = gh.configurations[c].player;
    if (p < 0 || p >= num_players) {
      throw StructuralError("configuration player out of range");
    }
    gh.groups[p].consistent_sets.push_back({static_cast<int>(c)});
  }
  int ell = 1;
  for (const Group& g : gh.groups) {
    ell = std::max(ell, static_cast<int>(g.consistent_sets.size()));
  }
  std::vector<int> degree(std::max(num_resources, 0), 0);
  for (const Configuration& cfg : gh.configurations) {
    for (int j : cfg.resources) {
      if (j >= 0 && j < num_resources) ell = std::max(ell, ++degree[j]);
    }
  }
  gh.ell = ell;
  return gh;
}

namespace {

void check_resources(const ResourceSet& set, int n, const std::string& what,
                     std::vector<std::string>& out) {
  for (size_t t = 0; t < set.size(); ++t) {
    if (set[t] < 0 || set[t] >= n) {
      out.push_back("resource id out of range in " + what);
      return;
    }
    if (t > 0 && set[t] <= set[t - 1]) {
      out.push_back("resources not sorted and distinct in " + what);
      return;
    }
  }
}

}  // namespace

std::vector<std::string> validate_instance(const SantaInstance& inst) {
  std::vector<std::string> out;
  if (inst.m < 1) out.push_back("player count must be at least 1");
  if (inst.n < 1) out.push_back("resource count must be at least 1");
  if (static_cast<int>(inst.gamma.size()) != inst.m) {
    out.push_back("gamma size does not match player count");
  }
  for (size_t i = 0; i < inst.gamma.size(); ++i) {
    for (int j : inst.gamma[i]) {
      if (j < 0 || j >= inst.n) {
        out.push_back("resource id out of range");
        break;
      }
    }
  }
  if (!inst.valuation) {
    out.push_back("missing valuation");
    return out;
  }
  if (inst.valuation->ground_size() != inst.n) {
    out.push_back("valuation ground set does not match resource count");
  }
  if (inst.valuation->eval(std::vector<int>{}) != 0) {
    out.push_back("valuation nonzero on empty set");
  }
  return out;
}

std::vector<std::string> validate_hypergraph(const GroupedHypergraph& gh) {
  std::vector<std::string> out;
  if (gh.num_players < 0 || gh.num_resources < 0) {
    out.push_back("negative size");
    return out;
  }
  const int nc = static_cast<int>(gh.configurations.size());
  for (int c = 0; c < nc; ++c) {
    const Configuration& cfg = gh.configurations[c];
    if (cfg.player < 0 || cfg.player >= gh.num_players) {
      out.push_back("configuration " + std::to_string(c) +
                    " has player out of range");
    }
    check_resources(cfg.resources, gh.num_resources,
                    "configuration " + std::to_string(c), out);
  }
  std::vector<int> seen(gh.num_players, 0);
  for (size_t g = 0; g < gh.groups.size(); ++g) {
    const Group& group = gh.groups[g];
    for (int p : group.players) {
      if (p < 0 || p >= gh.num_players) {
        out.push_back("group player out of range");
        continue;
      }
      ++seen[p];
    }
    if (group.consistent_sets.empty()) {
      out.push_back("group " + std::to_string(g) + " has no consistent set");
    }
    for (const auto& s : group.consistent_sets) {
      if (s.size() != group.players.size()) {
        out.push_back("consistent set size does not match group size");
        continue;
      }
      for (size_t t = 0; t < s.size(); ++t) {
        if (s[t] < 0 || s[t] >= nc) {
          out.push_back("consistent set configuration out of range");
        } else if (gh.configurations[s[t]].player != group.players[t]) {
          out.push_back("consistent set configuration owned by wrong player");
        }
      }
    }
  }
  for (int p = 0; p < gh.num_players; ++p) {
    if (seen[p] != 1) {
      out.push_back("player " + std::to_string(p) +
                    " is not in exactly one group");
      break;
    }
  }
  if (gh.ell < 1) out.push_back("ell must be positive");
  std::vector<int> degree(gh.num_resources, 0);
  for (const Configuration& cfg : gh.configurations) {
    for (int j : cfg.resources) {
      if (j >= 0 && j < gh.num_resources) ++degree[j];
    }
  }
  for (int j = 0; j < gh.num_resources; ++j) {
    if (degree[j] > gh.ell) {
      out.push_back("resource " + std::to_string(j) + " lies in " +
                    std::to_string(degree[j]) + " configurations > ell");
      break;
    }
  }
  return out;
}

std::vector<std::string> validate_hypergraph(const WeightedHypergraph& h) {
  std::vector<std::string> out;
  if (h.weights.size() != h.configurations.size()) {
    out.push_back("weights do not match configurations");
    return out;
  }
  for (size_t c = 0; c < h.configurations.size(); ++c) {
    const Configuration& cfg = h.configurations[c];
    if (cfg.player < 0 || cfg.player >= h.num_players) {
      out.push_back("configuration player out of range");
    }
    check_resources(cfg.resources, h.num_resources,
                    "configuration " + std::to_string(c), out);
    if (h.weights[c].size() != cfg.resources.size()) {
      out.push_back("weight keys do not match membership");
    }
    for (const Rational& w : h.weights[c]) {
      if (w < 0) out.push_back("negative weight");
    }
  }
  return out;
}

namespace {

// Shared structural checks; returns an empty string when clean.
std::string check_common(int num_players, int num_resources,
                         const std::vector<Configuration>& configs,
                         const RelaxedMatching& m) {
  if (static_cast<int>(m.chosen.size()) != num_players ||
      static_cast<int>(m.assigned.size()) != num_players) {
    throw StructuralError("matching size does not match player count");
  }
  for (int i = 0; i < num_players; ++i) {
    int c = m.chosen[i];
    if (c < 0 || c >= static_cast<int>(configs.size())) {
      throw StructuralError("chosen configuration index out of range");
    }
    for (int j : m.assigned[i]) {
      if (j < 0 || j >= num_resources) {
        throw StructuralError("assigned resource id out of range");
      }
    }
  }
  if (m.alpha < 1) return "alpha below 1";
  std::vector<int> owner(num_resources, -1);
  for (int i = 0; i < num_players; ++i) {
    const Configuration& cfg = configs[m.chosen[i]];
    if (cfg.player != i) {
      return "player " + std::to_string(i) +
             " chose a configuration of another player";
    }
    ResourceSet a = normalized(m.assigned[i]);
    if (a.size() != m.assigned[i].size()) {
      return "duplicate resource within player " + std::to_string(i);
    }
    if (!is_subset(a, cfg.resources)) {
      return "player " + std::to_string(i) +
             " assigned a resource outside its configuration";
    }
    for (int j : a) {
      if (owner[j] >= 0) {
        return "duplicate resource " + std::to_string(j) + " (players " +
               std::to_string(owner[j]) + " and " + std::to_string(i) + ")";
      }
      owner[j] = i;
    }
  }
  return "";
}

}  // namespace

VerifyResult verify_relaxed_matching(const GroupedHypergraph& gh,
                                     const RelaxedMatching& m) {
  std::string v =
      check_common(gh.num_players, gh.num_resources, gh.configurations, m);
  if (!v.empty()) return {false, v};
  for (int i = 0; i < gh.num_players; ++i) {
    int64_t size =
        static_cast<int64_t>(gh.configurations[m.chosen[i]].resources.size());
    int64_t need = floor_int64(Rational(size) / m.alpha);
    if (static_cast<int64_t>(m.assigned[i].size()) < need) {
      return {false, "player " + std::to_string(i) + " receives " +
                         std::to_string(m.assigned[i].size()) + " < floor(" +
                         std::to_string(size) + "/" + to_string(m.alpha) +
                         ")"};
    }
  }
  for (size_t g = 0; g < gh.groups.size(); ++g) {
    const Group& group = gh.groups[g];
    bool found = false;
    for (const auto& s : group.consistent_sets) {
      bool match = true;
      for (size_t t = 0; t < s.size(); ++t) {
        if (m.chosen[group.players[t]] != s[t]) {
          match = false;
          break;
        }
      }
      if (match) {
        found = true;
        break;
      }
    }
    if (!found) {
      return {false, "group " + std::to_string(g) +
                         " selection is not a consistent set"};
    }
  }
  return {true, ""};
}

VerifyResult verify_relaxed_matching(const WeightedHypergraph& h,
                                     const RelaxedMatching& m) {
  std::string v =
      check_common(h.num_players, h.num_resources, h.configurations, m);
  if (!v.empty()) return {false, v};
  for (int i = 0; i < h.num_players; ++i) {
    int c = m.chosen[i];
    const Configuration& cfg = h.configurations[c];
    Rational got = 0;
    for (size_t t = 0; t < cfg.resources.size(); ++t) {
      if (std::binary_search(m.assigned[i].begin(), m.assigned[i].end(),
                             cfg.resources[t]) ||
          std::find(m.assigned[i].begin(), m.assigned[i].end(),
                    cfg.resources[t]) != m.assigned[i].end()) {
        got += h.weights[c][t];
      }
    }
    if (got * m.alpha < h.total_weight(c)) {
      return {false, "player " + std::to_string(i) + " weighted coverage " +
                         to_string(got) + " below total/" +
                         to_string(m.alpha)};
    }
  }
  return {true, ""};
}

std::vector<Rational> alpha_candidates(const GroupedHypergraph& gh) {
  std::set<int64_t> sizes;
  for (const Configuration& cfg : gh.configurations) {
    sizes.insert(static_cast<int64_t>(cfg.resources.size()));
  }
  std::set<Rational> out{Rational(1)};
  for (int64_t s : sizes) {
    for (int64_t t = 1; t <= s; ++t) out.insert(Rational(s, t));
    out.insert(Rational(s + 1));
  }
  return {out.begin(), out.end()};
}

Rational achieved_alpha(const GroupedHypergraph& gh,
                        const std::vector<int>& chosen,
                        const std::vector<ResourceSet>& assigned) {
  // The floors hold at alpha iff alpha > theta = max s/(a+1) over players
  // with a < s. The answer is the smallest candidate above theta.
  Rational theta = 0;
  bool any = false;
  for (size_t i = 0; i < chosen.size(); ++i) {
    int64_t s = static_cast<int64_t>(gh.configurations[chosen[i]].resources.size());
    int64_t a = static_cast<int64_t>(assigned[i].size());
    if (a >= s) continue;
    Rational r(s, a + 1);
    if (!any || r > theta) theta = r;
    any = true;
  }
  if (!any || theta < 1) return 1;
  std::set<int64_t> sizes;
  for (const Configuration& cfg : gh.configurations) {
    sizes.insert(static_cast<int64_t>(cfg.resources.size()));
  }
  Rational best = -1;
  auto offer = [&](const Rational& c) {
    if (c > theta && (best < 0 || c < best)) best = c;
  };
  for (int64_t s : sizes) {
    if (s == 0) continue;
    offer(Rational(s + 1));
    // Largest t >= 1 with s/t > theta, i.e. t < s/theta.
    Rational q = Rational(s) / theta;
    int64_t t = floor_int64(q);
    if (Rational(t) == q) --t;
    if (t >= 1) offer(Rational(s, std::min<int64_t>(t, s)));
  }
  return best;
}

std::optional<Rational> achieved_alpha(const WeightedHypergraph& h,
                                       const std::vector<int>& chosen,
                                       const std::vector<ResourceSet>& assigned) {
  Rational worst = 1;
  for (size_t i = 0; i < chosen.size(); ++i) {
    int c = chosen[i];
    const Configuration& cfg = h.configurations[c];
    Rational total = 0, got = 0;
    for (size_t t = 0; t < cfg.resources.size(); ++t) {
      total += h.weights[c][t];
      if (std::find(assigned[i].begin(), assigned[i].end(), cfg.resources[t]) !=
          assigned[i].end()) {
        got += h.weights[c][t];
      }
    }
    if (total == 0) continue;
    if (got == 0) return std::nullopt;
    worst = std::max(worst, Rational(total / got));
  }
  return worst;
}

std::vector<int> chosen_from_sets(const GroupedHypergraph& gh,
                                  const std::vector<int>& set_per_group) {
  std::vector<int> chosen(gh.num_players, -1);
  for (size_t g = 0; g < gh.groups.size(); ++g) {
    const Group& group = gh.groups[g];
    const auto& s = group.consistent_sets.at(set_per_group.at(g));
    for (size_t t = 0; t < group.players.size(); ++t) {
      chosen[group.players[t]] = s[t];
    }
  }
  return chosen;
}

PartitionCheck check_partition(const SantaInstance& inst,
                               const std::vector<ResourceSet>& partition) {
  PartitionCheck out;
  if (static_cast<int>(partition.size()) != inst.m) {
    return {false, "partition size does not match player count", 0};
  }
  std::vector<int> owner(inst.n, -1);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : partition[i]) {
      if (j < 0 || j >= inst.n) return {false, "resource id out of range", 0};
      if (owner[j] >= 0) {
        return {false, "duplicate resource " + std::to_string(j), 0};
      }
      owner[j] = i;
      if (!std::binary_search(inst.gamma[i].begin(), inst.gamma[i].end(), j)) {
        return {false, "resource " + std::to_string(j) +
                           " not permitted for player " + std::to_string(i),
                0};
      }
    }
  }
  for (int i = 0; i < inst.m; ++i) {
    Rational v = inst.utility(i, partition[i]);
    if (i == 0 || v < out.min_value) out.min_value = v;
  }
  return out;
}

Rational LinearSantaInstance::utility(int player,
                                      const ResourceSet& set) const {
  Rational total = 0;
  for (int j : set) total += values[player][j];
  return total;
}

std::vector<std::string> validate_instance(const LinearSantaInstance& inst) {
  std::vector<std::string> out;
  if (inst.m < 0 || inst.n < 0) out.push_back("negative size");
  if (static_cast<int>(inst.values.size()) != inst.m) {
    out.push_back("value rows do not match player count");
    return out;
  }
  for (int i = 0; i < inst.m; ++i) {
    if (static_cast<int>(inst.values[i].size()) != inst.n) {
      out.push_back("value row " + std::to_string(i) +
                    " does not match resource count");
      continue;
    }
    for (int j = 0; j < inst.n; ++j) {
      if (inst.values[i][j] < 0) {
        out.push_back("negative value for player " + std::to_string(i) +
                      ", resource " + std::to_string(j));
      }
    }
  }
  return out;
}

PartitionCheck check_partition(const LinearSantaInstance& inst,
                               const std::vector<ResourceSet>& partition) {
  PartitionCheck out;
  if (static_cast<int>(partition.size()) != inst.m) {
    return {false, "partition size does not match player count", 0};
  }
  std::vector<int> owner(inst.n, -1);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : partition[i]) {
      if (j < 0 || j >= inst.n) return {false, "resource id out of range", 0};
      if (owner[j] >= 0) {
        return {false, "duplicate resource " + std::to_string(j), 0};
      }
      owner[j] = i;
    }
  }
  for (int i = 0; i < inst.m; ++i) {
    Rational v = inst.utility(i, partition[i]);
    if (i == 0 || v < out.min_value) out.min_value = v;
  }
  return out;
}

LinearSantaInstance to_linear(const SantaInstance& inst) {
  const auto* linear = dynamic_cast<const LinearOracle*>(inst.valuation.get());
  if (linear == nullptr) {
    throw ContractError("to_linear: valuation is " +
                        to_string(inst.valuation->kind()) + ", not linear");
  }
  LinearSantaInstance out;
  out.m = inst.m;
  out.n = inst.n;
  out.values.assign(inst.m, std::vector<Rational>(inst.n, 0));
  for (int i = 0; i < inst.m; ++i) {
    for (int j : inst.gamma[i]) out.values[i][j] = linear->values()[j];
  }
  return out;
}

}  // namespace santa
