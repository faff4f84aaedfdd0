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

#include <algorithm>
#include <string>

#include "santa/errors.h"
#include "santa/rational.h"

namespace santa {

WeightedHypergraph build_weighted_hypergraph(const ClusterDecomposition& dec,
                                             const ValuationOracle& f,
                                             const Rational& t_star) {
  if (t_star <= 0) throw ContractError("T* must be positive");
  WeightedHypergraph h;
  h.num_players = static_cast<int>(dec.clusters.size());
  h.num_resources = f.ground_size();
  for (size_t c = 0; c < dec.clusters.size(); ++c) {
    const auto& sampled = dec.clusters[c].sampled;
    if (static_cast<int>(sampled.size()) != dec.ell) {
      throw ContractError("cluster " + std::to_string(c) +
                          " has no sampled configurations");
    }
    for (const Configuration& cfg : sampled) {
      const ResourceSet& res = cfg.resources;
      std::vector<int> order(res.begin(), res.end());
      std::vector<Rational> single(f.ground_size());
      for (int j : order) single[j] = f.eval(ResourceSet{j});
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return single[a] > single[b] || (single[a] == single[b] && a < b);
      });
      ResourceSet prefix;
      Rational before = 0;
      std::vector<Rational> w(res.size());
      for (int j : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), j), j);
        Rational after = f.eval(prefix);
        auto pos = std::lower_bound(res.begin(), res.end(), j) - res.begin();
        w[pos] = 5 * (after - before) / t_star;
        before = after;
      }
      if (before * 5 < t_star) {
        throw StructuralError("sampled configuration of cluster " +
                              std::to_string(c) + " has value " +
                              to_string(before) + " < T*/5");
      }
      Rational total = 5 * before / t_star;
      for (auto& x : w) x /= total;
      h.configurations.push_back({static_cast<int>(c), res});
      h.weights.push_back(std::move(w));
    }
  }
  return h;
}

WeightedHypergraph round_weights(const WeightedHypergraph& h) {
  const Rational cutoff(1, 2 * static_cast<int64_t>(h.num_resources));
  WeightedHypergraph out;
  out.num_players = h.num_players;
  out.num_resources = h.num_resources;
  for (size_t c = 0; c < h.configurations.size(); ++c) {
    Configuration cfg{h.configurations[c].player, {}};
    std::vector<Rational> w;
    for (size_t t = 0; t < h.weights[c].size(); ++t) {
      const Rational& x = h.weights[c][t];
      if (x < cutoff) continue;
      cfg.resources.push_back(h.configurations[c].resources[t]);
      w.push_back(pow2(floor_log2(x)));
    }
    if (cfg.resources.empty()) {
      throw StructuralError("configuration " + std::to_string(c) +
                            " lost all resources in rounding");
    }
    out.configurations.push_back(std::move(cfg));
    out.weights.push_back(std::move(w));
  }
  return out;
}

int bucket_count(int num_resources) {
  return ceil_log2(2 * static_cast<uint64_t>(std::max(num_resources, 1)));
}

GroupedHypergraph to_grouped(const WeightedHypergraph& h, int ell) {
  const int b = bucket_count(h.num_resources);
  GroupedHypergraph gh;
  gh.num_players = h.num_players * b;
  gh.num_resources = h.num_resources;
  gh.ell = ell;
  gh.groups.resize(h.num_players);
  for (int p = 0; p < h.num_players; ++p) {
    for (int s = 0; s < b; ++s) gh.groups[p].players.push_back(p * b + s);
  }
  for (size_t c = 0; c < h.configurations.size(); ++c) {
    const Configuration& cfg = h.configurations[c];
    std::vector<ResourceSet> buckets(b);
    for (size_t t = 0; t < cfg.resources.size(); ++t) {
      const Rational& w = h.weights[c][t];
      if (w <= 0 || w > 1 || !is_power_of_two(w)) {
        throw StructuralError("weight " + to_string(w) +
                              " is not on the dyadic grid");
      }
      int e = -static_cast<int>(floor_log2(w));
      int s = std::max(e, 1);
      if (s > b) {
        throw StructuralError("weight " + to_string(w) + " below 2^-" +
                              std::to_string(b));
      }
      buckets[s - 1].push_back(cfg.resources[t]);
    }
    std::vector<int> set;
    for (int s = 0; s < b; ++s) {
      set.push_back(static_cast<int>(gh.configurations.size()));
      gh.configurations.push_back({cfg.player * b + s, std::move(buckets[s])});
      gh.source_config.push_back(static_cast<int>(c));
    }
    gh.groups[cfg.player].consistent_sets.push_back(std::move(set));
  }
  return gh;
}

LiftedMatching lift_matching(const GroupedHypergraph& gh,
                             const RelaxedMatching& gm,
                             const WeightedHypergraph& h) {
  if (gh.source_config.size() != gh.configurations.size()) {
    throw ContractError("grouped hypergraph has no source configurations");
  }
  VerifyResult v = verify_relaxed_matching(gh, gm);
  if (!v.ok) throw ContractError("grouped matching rejected: " + v.violation);
  LiftedMatching out;
  out.matching.chosen.assign(h.num_players, -1);
  out.matching.assigned.assign(h.num_players, {});
  out.matching.alpha = gm.alpha;
  if (static_cast<int>(gh.groups.size()) != h.num_players) {
    throw ContractError("group count does not match weighted players");
  }
  for (int p = 0; p < h.num_players; ++p) {
    const Group& group = gh.groups[p];
    ResourceSet& a = out.matching.assigned[p];
    for (int q : group.players) {
      int c = gh.source_config[gm.chosen[q]];
      if (out.matching.chosen[p] < 0) out.matching.chosen[p] = c;
      if (out.matching.chosen[p] != c) {
        throw ContractError("group " + std::to_string(p) +
                            " mixes source configurations");
      }
      a.insert(a.end(), gm.assigned[q].begin(), gm.assigned[q].end());
    }
    a = normalized(std::move(a));
  }
  out.weighted_alpha =
      achieved_alpha(h, out.matching.chosen, out.matching.assigned);
  return out;
}

}  // namespace santa
