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
#include "santa/santa_reduction.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "santa/errors.h"
#include "santa/oracles.h"

namespace santa {
namespace {

bool contains(const ResourceSet& set, int j) {
  return std::find(set.begin(), set.end(), j) != set.end();
}

// Gives each unassigned resource to the poorest player valuing it.
void top_up(const LinearSantaInstance& inst,
            std::vector<ResourceSet>& partition) {
  std::vector<char> owned(inst.n, 0);
  std::vector<Rational> value(inst.m, 0);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : partition[i]) owned[j] = 1;
    value[i] = inst.utility(i, partition[i]);
  }
  for (int j = 0; j < inst.n; ++j) {
    if (owned[j]) continue;
    int best = -1;
    for (int i = 0; i < inst.m; ++i) {
      if (inst.values[i][j] > 0 && (best < 0 || value[i] < value[best])) {
        best = i;
      }
    }
    if (best < 0) continue;
    partition[best].push_back(j);
    value[best] += inst.values[best][j];
  }
  for (auto& s : partition) s = normalized(std::move(s));
}

// Sparse value rows that grow as gadgets add players and resources.
struct Builder {
  std::vector<std::map<int, Rational>> rows;
  int resources = 0;

  int add_player() {
    rows.emplace_back();
    return static_cast<int>(rows.size()) - 1;
  }
  int add_resource() { return resources++; }

  LinearSantaInstance build() const {
    LinearSantaInstance out;
    out.m = static_cast<int>(rows.size());
    out.n = resources;
    out.values.assign(out.m, std::vector<Rational>(out.n, 0));
    for (int i = 0; i < out.m; ++i) {
      for (const auto& [j, v] : rows[i]) out.values[i][j] = v;
    }
    return out;
  }
};

}  // namespace

int log_star(double x) {
  int k = 1;
  while (x > 2) {
    x = std::log2(x);
    ++k;
  }
  return k;
}

double iterated_log(double x, int k) {
  for (int t = 0; t < k; ++t) x = std::log2(x);
  return x;
}

MatchingToSanta matching_to_santa(const GroupedHypergraph& gh) {
  if (auto v = validate_hypergraph(gh); !v.empty()) {
    throw StructuralError("invalid hypergraph: " + v.front());
  }
  MatchingToSanta out;
  out.hypergraph = gh;
  const int np = gh.num_players;
  std::vector<std::vector<int>> configs(np);
  for (const Group& g : gh.groups) {
    if (g.players.size() != 1) {
      throw ContractError("matching_to_santa: groups must be single players");
    }
    for (const auto& set : g.consistent_sets) {
      configs[g.players[0]].push_back(set[0]);
    }
  }

  Builder b;
  for (int u = 0; u < gh.num_resources; ++u) {
    b.add_resource();
    out.resource_vertex.push_back(u);
    out.private_owner.push_back(-1);
  }
  out.players_of_vertex.resize(np);
  for (int v = 0; v < np; ++v) {
    std::vector<int> privates;
    for (size_t t = 1; t < configs[v].size(); ++t) {
      privates.push_back(b.add_resource());
      out.resource_vertex.push_back(-1);
      out.private_owner.push_back(v);
    }
    for (int c : configs[v]) {
      const int p = b.add_player();
      out.player_vertex.push_back(v);
      out.player_config.push_back(c);
      out.players_of_vertex[v].push_back(p);
      for (int r : privates) b.rows[p][r] = 1;
      const ResourceSet& res = gh.configurations[c].resources;
      if (res.empty()) {
        b.rows[p][b.add_resource()] = 1;
        out.resource_vertex.push_back(-1);
        out.private_owner.push_back(-1);
        continue;
      }
      const Rational share(1, static_cast<int64_t>(res.size()));
      for (int u : res) b.rows[p][u] = share;
    }
  }
  out.santa = b.build();
  return out;
}

std::vector<ResourceSet> MatchingToSanta::to_santa(
    const RelaxedMatching& m) const {
  std::vector<ResourceSet> out(santa.m);
  for (int v = 0; v < hypergraph.num_players; ++v) {
    std::vector<int> privates;
    for (int r = 0; r < santa.n; ++r) {
      if (private_owner[r] == v) privates.push_back(r);
    }
    size_t next = 0;
    bool found = false;
    for (int p : players_of_vertex[v]) {
      if (player_config[p] != m.chosen[v] || found) {
        if (next < privates.size()) out[p].push_back(privates[next++]);
        continue;
      }
      found = true;
      for (int u : m.assigned[v]) out[p].push_back(u);
      // Dedicated resource of an empty configuration.
      for (int r = hypergraph.num_resources; r < santa.n; ++r) {
        if (private_owner[r] < 0 && santa.values[p][r] > 0) out[p].push_back(r);
      }
    }
    if (!found) {
      throw ContractError("to_santa: chosen configuration of player " +
                          std::to_string(v) + " is not one of its own");
    }
  }
  for (auto& s : out) s = normalized(std::move(s));
  return out;
}

RelaxedMatching MatchingToSanta::to_matching(
    const std::vector<ResourceSet>& partition) const {
  if (auto c = check_partition(santa, partition); !c.ok) {
    throw ContractError("to_matching: " + c.violation);
  }
  RelaxedMatching out;
  const int np = hypergraph.num_players;
  out.chosen.assign(np, -1);
  out.assigned.assign(np, {});
  for (int v = 0; v < np; ++v) {
    int best = -1;
    Rational best_value = -1;
    for (int p : players_of_vertex[v]) {
      bool holds_private = false;
      for (int r : partition[p]) holds_private |= private_owner[r] == v;
      if (holds_private) continue;
      Rational value = santa.utility(p, partition[p]);
      if (value > best_value) {
        best = p;
        best_value = value;
      }
    }
    if (best < 0) {
      throw ContractError("to_matching: every copy of player " +
                          std::to_string(v) + " holds a private resource");
    }
    out.chosen[v] = player_config[best];
    const ResourceSet& res = hypergraph.configurations[out.chosen[v]].resources;
    for (int r : partition[best]) {
      const int u = resource_vertex[r];
      if (u >= 0 && std::binary_search(res.begin(), res.end(), u)) {
        out.assigned[v].push_back(u);
      }
    }
  }
  out.alpha = achieved_alpha(hypergraph, out.chosen, out.assigned);
  return out;
}

ThreeLevelHypergraph three_level_hypergraph(const LinearSantaInstance& inst) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw StructuralError("invalid instance: " + v.front());
  }
  ThreeLevelHypergraph out;
  out.level.assign(inst.m, 1);
  std::vector<Configuration> configs;
  auto add = [&](int player, ResourceSet res, EdgeKind kind, int resource) {
    configs.push_back({player, normalized(std::move(res))});
    out.edge_kind.push_back(kind);
    out.edge_resource.push_back(resource);
  };
  std::vector<std::vector<int>> small(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      const Rational& v = inst.values[i][j];
      if (v >= 1) {
        add(i, {j}, EdgeKind::kDirect, j);
      } else if (v > 0) {
        if (!small[i].empty() && v != out.level[i]) {
          throw ContractError("three_level_hypergraph: player " +
                              std::to_string(i) +
                              " has two distinct values below 1");
        }
        out.level[i] = v;
        small[i].push_back(j);
      }
    }
  }
  int players = inst.m;
  int resources = inst.n;
  out.gadget_owner.assign(inst.m, -1);
  for (int i = 0; i < inst.m; ++i) {
    if (small[i].empty()) continue;
    const int64_t k = ceil_int64(1 / out.level[i]);
    ResourceSet fresh;
    for (int64_t t = 0; t < k; ++t) fresh.push_back(resources + static_cast<int>(t));
    add(i, fresh, EdgeKind::kGadget, -1);
    for (int64_t t = 0; t < k; ++t) {
      const int y = players++;
      out.gadget_owner.push_back(i);
      add(y, {fresh[t]}, EdgeKind::kPair, -1);
      for (int j : small[i]) add(y, {j}, EdgeKind::kDirect, j);
    }
    resources += static_cast<int>(k);
  }
  out.hypergraph = make_ungrouped(players, resources, std::move(configs));
  return out;
}

std::vector<ResourceSet> ThreeLevelHypergraph::to_assignment(
    const RelaxedMatching& m, int num_players) const {
  std::vector<ResourceSet> out(num_players);
  auto direct = [&](int vertex) {
    const int c = m.chosen[vertex];
    if (edge_kind[c] != EdgeKind::kDirect) return -1;
    return contains(m.assigned[vertex], edge_resource[c]) ? edge_resource[c]
                                                          : -1;
  };
  for (int p = 0; p < num_players; ++p) {
    const int c = m.chosen[p];
    if (edge_kind[c] == EdgeKind::kDirect) {
      if (int j = direct(p); j >= 0) out[p].push_back(j);
    } else if (edge_kind[c] == EdgeKind::kGadget) {
      for (int y = num_players; y < hypergraph.num_players; ++y) {
        if (gadget_owner[y] != p) continue;
        if (int j = direct(y); j >= 0) out[p].push_back(j);
      }
    }
  }
  for (auto& s : out) s = normalized(std::move(s));
  return out;
}

SantaToMatching santa_to_matching(const LinearSantaInstance& inst,
                                  const Rational& guess) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw ContractError("santa_to_matching: " + v.front());
  }
  if (guess <= 0) throw ContractError("santa_to_matching: guess must be > 0");
  SantaToMatching out;
  out.guess = guess;
  out.original = inst;
  const int m = inst.m;
  const int n = inst.n;
  const double two_n = 2.0 * std::max(n, 1);
  const int L = log_star(two_n);
  out.stats.log_star = L;
  out.stats.input_players = m;

  out.rounded = inst;
  const Rational cutoff(1, 2 * static_cast<int64_t>(std::max(n, 1)));
  for (auto& row : out.rounded.values) {
    for (Rational& v : row) {
      if (v <= 0) continue;
      Rational w = v / guess;
      if (w > 1) w = 1;
      w = pow2(floor_log2(w));
      if (w <= cutoff) {
        w = 0;
        ++out.stats.dropped_values;
      }
      v = w;
    }
  }

  Builder b;
  for (int i = 0; i < m; ++i) {
    b.add_player();
    out.parent.push_back(-1);
    out.link.push_back(-1);
  }
  for (int j = 0; j < n; ++j) b.add_resource();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (out.rounded.values[i][j] > 0) b.rows[i][j] = out.rounded.values[i][j];
    }
  }

  // Range step: values below 1 move to one auxiliary player per range
  // (1/(log)^k(2n), 1/(log)^{k+1}(2n)].
  std::vector<int> range_of;  // per range player
  std::vector<int> range_players;
  for (int i = 0; i < m; ++i) {
    std::map<int, std::vector<int>> by_range;
    for (const auto& [j, v] : b.rows[i]) {
      if (v >= 1) continue;
      const double size = std::ldexp(1.0, -floor_log2(v));  // 1/v
      int k = 0;
      while (iterated_log(two_n, k + 1) > size) ++k;
      by_range[k].push_back(j);
    }
    for (const auto& [k, items] : by_range) {
      const int a = b.add_player();
      const int x = b.add_resource();
      out.parent.push_back(i);
      out.link.push_back(x);
      b.rows[i][x] = 1;
      b.rows[a][x] = 1;
      for (int j : items) {
        b.rows[a][j] = b.rows[i][j];
        b.rows[i].erase(j);
      }
      range_players.push_back(a);
      range_of.push_back(k);
      ++out.stats.range_players;
    }
  }

  // Bundle step: b resources of value s become one auxiliary player whose
  // link resource is worth 2/D to the range player, D = L (log)^{k+1}(2n).
  const Rational L2 = Rational(L) * L;
  for (size_t r = 0; r < range_players.size(); ++r) {
    const int a = range_players[r];
    const Rational lk =
        rational_from_double(iterated_log(two_n, range_of[r] + 1));
    const Rational D = Rational(L) * lk;
    std::map<Rational, std::vector<int>> by_value;
    for (const auto& [j, v] : b.rows[a]) {
      if (v < 1) by_value[v].push_back(j);
    }
    for (const auto& [s, items] : by_value) {
      const int64_t bsize = ceil_int64(Rational(1, 2) / (s * D));
      const Rational bundle = s * bsize;
      if (bundle < Rational(1, 2) / D || bundle > 1 / lk) {
        out.stats.bundle_bounds_ok = false;
      }
      const int64_t count = static_cast<int64_t>(items.size()) / bsize;
      for (int64_t t = 0; t < count; ++t) {
        const int c = b.add_player();
        const int y = b.add_resource();
        out.parent.push_back(a);
        out.link.push_back(y);
        b.rows[a][y] = 2 / D;
        b.rows[c][y] = 1;
        for (int j : items) b.rows[c][j] = 1 / (L2 * bsize);
        ++out.stats.bundle_players;
      }
      for (int j : items) b.rows[a].erase(j);
    }
  }

  for (auto& row : b.rows) {
    for (auto& [j, v] : row) v = std::min<Rational>(1, v * L2);
  }
  out.three_level = b.build();
  out.matching = three_level_hypergraph(out.three_level);

  const int m3 = out.three_level.m;
  out.stats.gadget_vertices = out.matching.hypergraph.num_players - m3;
  const int64_t lp = L - 1;
  const int64_t cap = static_cast<int64_t>(m) * (1 + lp + lp * n) *
                      (1 + 2 * static_cast<int64_t>(std::max(n, 1)));
  out.stats.size_formula_ok =
      m3 == m + out.stats.range_players + out.stats.bundle_players &&
      out.matching.hypergraph.num_players <= cap;
  return out;
}

std::vector<ResourceSet> SantaToMatching::to_santa(
    const RelaxedMatching& m) const {
  const int m3 = three_level.m;
  std::vector<ResourceSet> held = matching.to_assignment(m, m3);
  for (int p = m3 - 1; p >= original.m; --p) {
    if (contains(held[parent[p]], link[p])) {
      held[parent[p]].insert(held[parent[p]].end(), held[p].begin(),
                             held[p].end());
    }
    held[p].clear();
  }
  std::vector<ResourceSet> out(original.m);
  for (int i = 0; i < original.m; ++i) {
    for (int j : held[i]) {
      if (j < original.n) out[i].push_back(j);
    }
  }
  top_up(original, out);
  return out;
}

Matcher exact_matcher(int64_t budget) {
  return [budget](const GroupedHypergraph& gh) -> std::optional<RelaxedMatching> {
    for (const Group& g : gh.groups) {
      if (g.consistent_sets.empty()) return std::nullopt;
    }
    if (gh.num_players == 0) return RelaxedMatching{};
    return exact_min_alpha_pruned(gh, budget).matching;
  };
}

SantaViaMatching solve_santa_via_matching(const LinearSantaInstance& inst,
                                          const Matcher& matcher) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw ContractError("solve_santa_via_matching: " + v.front());
  }
  SantaViaMatching out;
  Rational upper = -1;
  Rational smallest = 0;
  for (int i = 0; i < inst.m; ++i) {
    Rational total = 0;
    for (const Rational& v : inst.values[i]) {
      total += v;
      if (v > 0 && (smallest == 0 || v < smallest)) smallest = v;
    }
    if (upper < 0 || total < upper) upper = total;
  }
  bool found = false;
  if (upper > 0) {
    for (Rational t = upper; t >= smallest / 2; t /= 2) {
      ++out.guesses;
      const SantaToMatching chain = santa_to_matching(inst, t);
      std::optional<RelaxedMatching> gm = matcher(chain.matching.hypergraph);
      if (!gm) continue;
      std::vector<ResourceSet> part = chain.to_santa(*gm);
      const Rational value = check_partition(inst, part).min_value;
      if (!found || value > out.value) {
        found = true;
        out.partition = std::move(part);
        out.value = value;
        out.guess = t;
        out.alpha = gm->alpha;
      }
    }
  }
  if (!found) {
    out.partition.assign(inst.m, {});
    top_up(inst, out.partition);
    out.value = inst.m > 0 ? check_partition(inst, out.partition).min_value
                           : Rational(0);
  }
  return out;
}

ReductionAudit composed_approx_ratio_audit(const LinearSantaInstance& inst,
                                           double c, int64_t budget) {
  ReductionAudit out;
  out.opt = exact_santa_opt(inst).value;
  const SantaViaMatching got =
      solve_santa_via_matching(inst, exact_matcher(budget));
  out.achieved = got.value;
  out.guesses = got.guesses;
  const double L = log_star(2.0 * std::max(inst.n, 1));
  out.bound = (2 * c * L) * (2 * c * L);
  if (out.opt == 0) {
    out.ratio = 1;
  } else if (out.achieved == 0) {
    out.ratio = INFINITY;
  } else {
    out.ratio = to_double(out.opt / out.achieved);
  }
  out.ok = out.ratio >= 1 && out.ratio <= out.bound &&
           check_partition(inst, got.partition).ok;
  return out;
}

}  // namespace santa
