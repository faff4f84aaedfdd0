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
#include "santa/reconstruct.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "santa/errors.h"
#include "santa/flow.h"
#include "santa/log.h"

namespace santa {
namespace {

int64_t count_in(const ResourceSet& c, const std::vector<char>& mask) {
  int64_t k = 0;
  for (int j : c) k += mask[j];
  return k;
}

std::optional<GoodAssignment> exact_good(const std::vector<ResourceSet>& family,
                                         const std::vector<char>& mask,
                                         const std::vector<int64_t>& demand,
                                         int64_t gamma) {
  return good_assignment(family, mask, demand, gamma, Rational(0));
}

// Largest uniform scale of demand (binary search on sigma) that fits; the
// all-zero demand always does.
GoodAssignment scaled_fit(const std::vector<ResourceSet>& family,
                          const std::vector<char>& mask,
                          const std::vector<int64_t>& demand, int64_t gamma) {
  std::vector<int64_t> zero(demand.size(), 0);
  GoodAssignment best = *exact_good(family, mask, zero, gamma);
  double lo = 0.0, hi = 1.0;
  for (int step = 0; step < 30; ++step) {
    const double mid = 0.5 * (lo + hi);
    std::vector<int64_t> d(demand.size());
    for (size_t c = 0; c < d.size(); ++c) {
      d[c] = static_cast<int64_t>(std::floor(mid * static_cast<double>(demand[c])));
    }
    if (auto a = exact_good(family, mask, d, gamma)) {
      lo = mid;
      best = std::move(*a);
    } else {
      hi = mid;
    }
  }
  return best;
}

// Disjoint assignment meeting demand[c] for every chosen configuration.
std::optional<std::vector<ResourceSet>> disjoint_assignment(
    const std::vector<ResourceSet>& family, int num_resources,
    const std::vector<int64_t>& demand) {
  std::vector<char> all(num_resources, 1);
  auto a = exact_good(family, all, demand, 1);
  if (!a) return std::nullopt;
  return std::move(a->per_config);
}

std::vector<int64_t> floor_demand(const std::vector<ResourceSet>& family,
                                  const Rational& alpha) {
  std::vector<int64_t> out;
  for (const auto& c : family) {
    out.push_back(floor_int64(Rational(static_cast<int64_t>(c.size())) / alpha));
  }
  return out;
}

RelaxedMatching as_matching(const GroupedHypergraph& gh,
                            const std::vector<int>& chosen,
                            std::vector<ResourceSet> assigned) {
  RelaxedMatching m;
  m.chosen = chosen;
  m.assigned = std::move(assigned);
  m.alpha = achieved_alpha(gh, m.chosen, m.assigned);
  return m;
}

}  // namespace

int64_t default_gamma(int64_t ell) {
  return std::max<int64_t>(1, ceil_log2(static_cast<uint64_t>(std::max<int64_t>(ell, 1))));
}

RelaxedMatching min_alpha_for_selection(const GroupedHypergraph& gh,
                                        const std::vector<int>& chosen) {
  std::vector<ResourceSet> family;
  for (int c : chosen) family.push_back(gh.configurations[c].resources);
  const std::vector<Rational> cand = alpha_candidates(gh);
  // The last candidate makes every demand zero, which is always feasible.
  size_t lo = 0, hi = cand.size() - 1;
  std::vector<ResourceSet> best;
  if (auto a = disjoint_assignment(family, gh.num_resources,
                                   floor_demand(family, cand[hi]))) {
    best = std::move(*a);
  }
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (auto a = disjoint_assignment(family, gh.num_resources,
                                     floor_demand(family, cand[mid]))) {
      hi = mid;
      best = std::move(*a);
    } else {
      lo = mid + 1;
    }
  }
  if (best.empty()) best.resize(family.size());
  return as_matching(gh, chosen, std::move(best));
}

RelaxedMatching greedy_steal_matching(const GroupedHypergraph& gh,
                                      const std::vector<int>& chosen) {
  const int p = static_cast<int>(chosen.size());
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return gh.configurations[chosen[a]].resources.size() >
           gh.configurations[chosen[b]].resources.size();
  });
  std::vector<int> owner(gh.num_resources, -1);
  for (int i : order) {
    for (int j : gh.configurations[chosen[i]].resources) owner[j] = i;
  }
  std::vector<ResourceSet> assigned(p);
  for (int j = 0; j < gh.num_resources; ++j) {
    if (owner[j] >= 0) assigned[owner[j]].push_back(j);
  }
  return as_matching(gh, chosen, std::move(assigned));
}

ReconstructResult reconstruct_matching(const GroupedHypergraph& gh,
                                       const ResourceHierarchy& hier,
                                       const SizeClasses& classes,
                                       const Selection& sel,
                                       const ReconstructOptions& options) {
  ReconstructResult out;
  out.chosen = selected_configs(gh, sel);
  out.gamma = options.gamma > 0 ? options.gamma : default_gamma(hier.ell);
  if (out.gamma > std::max<int64_t>(hier.ell, 1)) {
    throw ContractError("gamma must lie in [1, ell]");
  }
  const int players = static_cast<int>(out.chosen.size());
  std::vector<int> family_players;
  std::vector<ResourceSet> family;
  std::vector<int64_t> demand;
  std::optional<GoodAssignment> current;
  LiftOptions lift_opt;
  lift_opt.sigma_floor = options.sigma_floor;
  for (int j = classes.d; j >= 0; --j) {
    const std::vector<char> mask = hier.level_mask(j);
    if (!family.empty()) {
      LiftResult lr = lift_level(family, mask, demand, hier.ell, out.gamma,
                                 gh.num_resources, lift_opt);
      out.level_sigma.push_back(lr.sigma);
      out.lift_shortfalls += lr.shortfall;
      demand = lr.assignment.demand;
      current = std::move(lr.assignment);
    }
    std::vector<int> admitted;
    for (int i = 0; i < players; ++i) {
      if (classes.class_of[out.chosen[i]] == j) admitted.push_back(i);
    }
    if (admitted.empty()) continue;
    const size_t old_size = family.size();
    for (int i : admitted) {
      const ResourceSet& c = gh.configurations[out.chosen[i]].resources;
      family_players.push_back(i);
      family.push_back(c);
      const int64_t avail = count_in(c, mask);
      demand.push_back(std::min(avail, std::max<int64_t>(1, avail / 2)));
    }
    while (true) {
      current = exact_good(family, mask, demand, out.gamma);
      if (current) break;
      bool reduced = false;
      for (size_t c = old_size; c < family.size(); ++c) {
        if (demand[c] > 0) {
          demand[c] /= 2;
          reduced = true;
        }
      }
      if (!reduced) break;
      ++out.admission_halvings;
    }
    if (!current) {
      // The lifted demands alone no longer fit next to the admitted ones;
      // scale everything uniformly.
      current = scaled_fit(family, mask, demand, out.gamma);
      ++out.lift_shortfalls;
      demand = current->demand;
    }
  }
  // Disjoint re-solve on R_0 with the induction demands.
  std::vector<ResourceSet> assigned(players);
  if (current) {
    std::vector<int> use(gh.num_resources, 0);
    for (const auto& s : current->per_config) {
      for (int r : s) ++use[r];
    }
    for (int r = 0; r < gh.num_resources; ++r) {
      if (use[r] > 1) {
        out.dedup.over_assigned.push_back(r);
        out.dedup.multiplicity.push_back(use[r]);
        out.dedup.residual.push_back(
            static_cast<int>(std::max<int64_t>(0, out.gamma - use[r])));
      }
    }
    int64_t touched = 0;
    for (const auto& c : family) {
      touched += static_cast<int64_t>(intersect(c, out.dedup.over_assigned).size());
    }
    out.dedup.mu_bound = 2.0 * static_cast<double>(touched) /
                         static_cast<double>(out.gamma);
    std::vector<char> all(gh.num_resources, 1);
    AssignmentNetwork net = build_network(family, all, demand, 1);
    FlowAssignment flow = max_flow(net);
    int64_t need = std::accumulate(demand.begin(), demand.end(), int64_t{0});
    out.dedup.lost = need - flow.value;
    for (size_t c = 0; c < family.size(); ++c) {
      assigned[family_players[c]] = std::move(flow.per_config[c]);
    }
  }
  out.matching = as_matching(gh, out.chosen, std::move(assigned));
  out.induction_alpha = out.matching.alpha;
  if (options.polish) {
    RelaxedMatching best = min_alpha_for_selection(gh, out.chosen);
    if (best.alpha < out.matching.alpha) {
      out.matching = std::move(best);
      out.polished = true;
    }
  }
  logger().debug("reconstruct: induction alpha {}, final alpha {}",
                 to_string(out.induction_alpha), to_string(out.matching.alpha));
  return out;
}

}  // namespace santa
