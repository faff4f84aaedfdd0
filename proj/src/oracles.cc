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
#include "santa/oracles.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "santa/errors.h"
#include "santa/flow.h"

namespace santa {
namespace {

int64_t saturating_product(const std::vector<int64_t>& factors, int64_t cap) {
  int64_t p = 1;
  for (int64_t f : factors) {
    if (f > 0 && p > cap / f) return cap + 1;
    p *= std::max<int64_t>(f, 1);
  }
  return p;
}

// Depth-first search over owners of each resource. utility(i, S) must be
// monotone in S.
class SantaSearch {
 public:
  using Utility = std::function<Rational(int, const ResourceSet&)>;

  SantaSearch(int m, std::vector<std::vector<int>> eligible, Utility utility)
      : m_(m), eligible_(std::move(eligible)), utility_(std::move(utility)) {
    // Resources with fewer choices first keeps the tree narrow at the top.
    for (int j = 0; j < static_cast<int>(eligible_.size()); ++j) {
      if (!eligible_[j].empty()) order_.push_back(j);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return eligible_[a].size() < eligible_[b].size();
    });
    sets_.assign(m, {});
  }

  SantaOptimum run() {
    best_.value = -1;
    dfs(0);
    if (m_ == 0) best_.value = 0;
    return best_;
  }

 private:
  Rational upper_bound(size_t pos) const {
    // Every player may still receive all its remaining eligible resources.
    Rational bound = -1;
    for (int i = 0; i < m_; ++i) {
      ResourceSet s = sets_[i];
      for (size_t k = pos; k < order_.size(); ++k) {
        const auto& e = eligible_[order_[k]];
        if (std::find(e.begin(), e.end(), i) != e.end()) s.push_back(order_[k]);
      }
      Rational v = utility_(i, normalized(std::move(s)));
      if (bound < 0 || v < bound) bound = v;
    }
    return bound;
  }

  void dfs(size_t pos) {
    ++best_.nodes;
    if (pos == order_.size()) {
      Rational v = -1;
      for (int i = 0; i < m_; ++i) {
        Rational f = utility_(i, normalized(sets_[i]));
        if (v < 0 || f < v) v = f;
      }
      if (v > best_.value) {
        best_.value = v;
        best_.partition.clear();
        for (const auto& s : sets_) best_.partition.push_back(normalized(s));
      }
      return;
    }
    if (best_.value >= 0 && upper_bound(pos) <= best_.value) return;
    const int j = order_[pos];
    for (int i : eligible_[j]) {
      sets_[i].push_back(j);
      dfs(pos + 1);
      sets_[i].pop_back();
    }
  }

  int m_;
  std::vector<std::vector<int>> eligible_;
  Utility utility_;
  std::vector<int> order_;
  std::vector<ResourceSet> sets_;
  SantaOptimum best_;
};

void check_budget(const std::vector<std::vector<int>>& eligible, int m, int n,
                  int64_t budget) {
  std::vector<int64_t> degree;
  for (const auto& e : eligible) degree.push_back(static_cast<int64_t>(e.size()));
  if (saturating_product(degree, budget) > budget) {
    throw BudgetError("exact_santa_opt: " + std::to_string(m) + " players, " +
                      std::to_string(n) +
                      " resources exceed the enumeration budget " +
                      std::to_string(budget));
  }
}

// Disjoint assignment with at least demand[c] resources of family[c].
std::optional<std::vector<ResourceSet>> bounded_assignment(
    const std::vector<ResourceSet>& family, int num_resources,
    const std::vector<int64_t>& demand) {
  const int f = static_cast<int>(family.size());
  const int s = 0, t = 1;
  std::vector<BoundedArc> arcs;
  for (int c = 0; c < f; ++c) {
    const int64_t size = static_cast<int64_t>(family[c].size());
    if (demand[c] > size) return std::nullopt;
    arcs.push_back({s, 2 + c, demand[c], size});
  }
  std::vector<int> middle;
  for (int c = 0; c < f; ++c) {
    for (int j : family[c]) {
      middle.push_back(static_cast<int>(arcs.size()));
      arcs.push_back({2 + c, 2 + f + j, 0, 1});
    }
  }
  for (int j = 0; j < num_resources; ++j) {
    arcs.push_back({2 + f + j, t, 0, 1});
  }
  auto flows = feasible_bounded_flow(2 + f + num_resources, arcs, s, t);
  if (!flows) return std::nullopt;
  std::vector<ResourceSet> out(f);
  size_t k = 0;
  for (int c = 0; c < f; ++c) {
    for (int j : family[c]) {
      if ((*flows)[middle[k++]] > 0) out[c].push_back(j);
    }
  }
  return out;
}

}  // namespace

SantaOptimum exact_santa_opt(const SantaInstance& inst, int64_t budget) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw StructuralError("invalid instance: " + v.front());
  }
  std::vector<std::vector<int>> eligible(inst.n);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : inst.gamma[i]) eligible[j].push_back(i);
  }
  check_budget(eligible, inst.m, inst.n, budget);
  return SantaSearch(inst.m, std::move(eligible),
                     [&inst](int i, const ResourceSet& s) {
                       return inst.utility(i, s);
                     })
      .run();
}

SantaOptimum exact_santa_opt(const LinearSantaInstance& inst,
                             int64_t budget) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw StructuralError("invalid instance: " + v.front());
  }
  // Zero-value resources never help, so only positive owners are tried.
  std::vector<std::vector<int>> eligible(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    for (int i = 0; i < inst.m; ++i) {
      if (inst.values[i][j] > 0) eligible[j].push_back(i);
    }
  }
  check_budget(eligible, inst.m, inst.n, budget);
  return SantaSearch(inst.m, std::move(eligible),
                     [&inst](int i, const ResourceSet& s) {
                       return inst.utility(i, s);
                     })
      .run();
}

MinAlpha exact_min_alpha(const GroupedHypergraph& gh, int64_t budget) {
  if (auto v = validate_hypergraph(gh); !v.empty()) {
    throw StructuralError("invalid hypergraph: " + v.front());
  }
  std::vector<int64_t> counts;
  for (const Group& g : gh.groups) {
    counts.push_back(static_cast<int64_t>(g.consistent_sets.size()));
  }
  const int64_t total = saturating_product(counts, budget);
  if (total > budget) {
    throw BudgetError("exact_min_alpha: selections exceed the budget " +
                      std::to_string(budget));
  }
  const std::vector<Rational> cand = alpha_candidates(gh);
  MinAlpha best;
  best.alpha = -1;
  std::vector<int> sets(gh.groups.size(), 0);
  for (int64_t sel = 0; sel < total; ++sel) {
    ++best.selections;
    const std::vector<int> chosen = chosen_from_sets(gh, sets);
    std::vector<ResourceSet> family;
    for (int c : chosen) family.push_back(gh.configurations[c].resources);
    auto demand_at = [&](const Rational& a) {
      std::vector<int64_t> d;
      for (const auto& c : family) {
        d.push_back(floor_int64(Rational(static_cast<int64_t>(c.size())) / a));
      }
      return d;
    };
    // Only candidates below the current best matter.
    size_t hi = cand.size();
    if (best.alpha >= 0) {
      hi = std::lower_bound(cand.begin(), cand.end(), best.alpha) - cand.begin();
    }
    if (hi > 0) {
      auto top = bounded_assignment(family, gh.num_resources,
                                    demand_at(cand[hi - 1]));
      if (top) {
        size_t lo = 0, h = hi - 1;
        std::vector<ResourceSet> found = std::move(*top);
        while (lo < h) {
          size_t mid = (lo + h) / 2;
          if (auto a = bounded_assignment(family, gh.num_resources,
                                          demand_at(cand[mid]))) {
            h = mid;
            found = std::move(*a);
          } else {
            lo = mid + 1;
          }
        }
        best.alpha = cand[h];
        best.matching.chosen = chosen;
        best.matching.assigned = std::move(found);
        best.matching.alpha = cand[h];
      }
    }
    for (size_t g = 0; g < sets.size(); ++g) {
      if (++sets[g] < static_cast<int>(counts[g])) break;
      sets[g] = 0;
    }
  }
  return best;
}

namespace {

class PrunedSearch {
 public:
  PrunedSearch(const GroupedHypergraph& gh, int64_t budget)
      : gh_(gh), budget_(budget) {
    for (size_t g = 0; g < gh.groups.size(); ++g) order_.push_back(g);
    // Narrow groups first.
    std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
      return gh.groups[a].consistent_sets.size() <
             gh.groups[b].consistent_sets.size();
    });
  }

  int64_t nodes() const { return nodes_; }

  // A selection and assignment meeting floor(|C| / alpha), if any.
  std::optional<RelaxedMatching> feasible(const Rational& alpha) {
    alpha_ = alpha;
    players_.clear();
    family_.clear();
    demand_.clear();
    found_.reset();
    dfs(0);
    return found_;
  }

 private:
  std::optional<std::vector<ResourceSet>> test() {
    if (++nodes_ > budget_) {
      throw BudgetError("exact_min_alpha_pruned: flow tests exceed the budget " +
                        std::to_string(budget_));
    }
    return bounded_assignment(family_, gh_.num_resources, demand_);
  }

  bool dfs(size_t pos) {
    if (pos == order_.size()) {
      auto a = test();
      if (!a) return false;
      RelaxedMatching m;
      m.chosen.assign(gh_.num_players, -1);
      m.assigned.assign(gh_.num_players, {});
      for (size_t k = 0; k < players_.size(); ++k) {
        m.chosen[players_[k].first] = players_[k].second;
        m.assigned[players_[k].first] = std::move((*a)[k]);
      }
      m.alpha = alpha_;
      found_ = std::move(m);
      return true;
    }
    const Group& g = gh_.groups[order_[pos]];
    for (const auto& set : g.consistent_sets) {
      for (size_t k = 0; k < g.players.size(); ++k) {
        const ResourceSet& res = gh_.configurations[set[k]].resources;
        players_.emplace_back(g.players[k], set[k]);
        family_.push_back(res);
        demand_.push_back(
            floor_int64(Rational(static_cast<int64_t>(res.size())) / alpha_));
      }
      const bool ok = pos + 1 == order_.size() || test().has_value();
      if (ok && dfs(pos + 1)) return true;
      for (size_t k = 0; k < g.players.size(); ++k) {
        players_.pop_back();
        family_.pop_back();
        demand_.pop_back();
      }
    }
    return false;
  }

  const GroupedHypergraph& gh_;
  int64_t budget_;
  std::vector<size_t> order_;
  Rational alpha_;
  std::vector<std::pair<int, int>> players_;
  std::vector<ResourceSet> family_;
  std::vector<int64_t> demand_;
  std::optional<RelaxedMatching> found_;
  int64_t nodes_ = 0;
};

}  // namespace

MinAlpha exact_min_alpha_pruned(const GroupedHypergraph& gh, int64_t budget) {
  if (auto v = validate_hypergraph(gh); !v.empty()) {
    throw StructuralError("invalid hypergraph: " + v.front());
  }
  MinAlpha best;
  const std::vector<Rational> cand = alpha_candidates(gh);
  PrunedSearch search(gh, budget);
  // The largest candidate demands nothing, so it is always feasible.
  size_t lo = 0, hi = cand.size() - 1;
  std::optional<RelaxedMatching> found;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (auto m = search.feasible(cand[mid])) {
      hi = mid;
      found = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  if (!found || found->alpha != cand[hi]) found = search.feasible(cand[hi]);
  best.alpha = cand[hi];
  best.matching = std::move(*found);
  best.selections = search.nodes();
  return best;
}

}  // namespace santa
