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
#include "santa/submodular.h"

#include <algorithm>
#include <queue>
#include <utility>

#include "santa/errors.h"

namespace santa {

std::string to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kLinear:
      return "linear";
    case ValuationKind::kCoverage:
      return "coverage";
    case ValuationKind::kBudgetedAdditive:
      return "budgeted-additive";
    case ValuationKind::kMatroidRank:
      return "matroid-rank";
  }
  return "unknown";
}

Rational ValuationOracle::eval(std::span<const int> set) const {
  const int size = ground_size();
  bool sorted = true;
  for (size_t t = 0; t < set.size(); ++t) {
    if (set[t] < 0 || set[t] >= size) {
      throw StructuralError("unknown element id " + std::to_string(set[t]));
    }
    if (t > 0 && set[t] <= set[t - 1]) sorted = false;
  }
  if (!sorted) {
    std::vector<int> copy(set.begin(), set.end());
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end()) {
      throw StructuralError("repeated element id in set");
    }
  }
  return eval_checked(set);
}

LinearOracle::LinearOracle(std::vector<Rational> values)
    : values_(std::move(values)) {
  for (const Rational& v : values_) {
    if (v < 0) throw StructuralError("negative linear value");
  }
}

Rational LinearOracle::eval_checked(std::span<const int> set) const {
  Rational total = 0;
  for (int j : set) total += values_[j];
  return total;
}

CoverageOracle::CoverageOracle(int universe, std::vector<std::vector<int>> sets,
                               std::vector<Rational> weights)
    : universe_(universe), sets_(std::move(sets)), weights_(std::move(weights)) {
  if (universe_ < 0) throw StructuralError("negative coverage universe");
  for (const auto& s : sets_) {
    for (int u : s) {
      if (u < 0 || u >= universe_) {
        throw StructuralError("coverage element outside universe");
      }
    }
  }
  if (!weights_.empty()) {
    if (static_cast<int>(weights_.size()) != universe_) {
      throw StructuralError("coverage weights do not match universe");
    }
    for (const Rational& w : weights_) {
      if (w < 0) throw StructuralError("negative coverage weight");
    }
  }
}

Rational CoverageOracle::eval_checked(std::span<const int> set) const {
  std::vector<char> covered(universe_, 0);
  Rational total = 0;
  for (int j : set) {
    for (int u : sets_[j]) {
      if (covered[u]) continue;
      covered[u] = 1;
      total += weights_.empty() ? Rational(1) : weights_[u];
    }
  }
  return total;
}

BudgetedAdditiveOracle::BudgetedAdditiveOracle(std::vector<Rational> values,
                                               Rational cap)
    : values_(std::move(values)), cap_(std::move(cap)) {
  if (cap_ < 0) throw StructuralError("negative budget cap");
  for (const Rational& v : values_) {
    if (v < 0) throw StructuralError("negative budgeted value");
  }
}

Rational BudgetedAdditiveOracle::eval_checked(std::span<const int> set) const {
  Rational total = 0;
  for (int j : set) total += values_[j];
  return std::min(total, cap_);
}

MatroidRankOracle::MatroidRankOracle(std::vector<int> part_of,
                                     std::vector<int> capacity)
    : part_of_(std::move(part_of)), capacity_(std::move(capacity)) {
  for (int p : part_of_) {
    if (p < 0 || p >= static_cast<int>(capacity_.size())) {
      throw StructuralError("matroid part id out of range");
    }
  }
  for (int c : capacity_) {
    if (c < 0) throw StructuralError("negative matroid capacity");
  }
}

Rational MatroidRankOracle::eval_checked(std::span<const int> set) const {
  std::vector<int> used(capacity_.size(), 0);
  int64_t rank = 0;
  for (int j : set) {
    int p = part_of_[j];
    if (used[p] < capacity_[p]) {
      ++used[p];
      ++rank;
    }
  }
  return Rational(rank);
}

Rational eval(const ValuationOracle& f, std::span<const int> set) {
  return f.eval(set);
}

Rational marginal(const ValuationOracle& f, int j, std::span<const int> set) {
  if (std::find(set.begin(), set.end(), j) != set.end()) {
    throw ContractError("marginal: element already in set");
  }
  std::vector<int> with(set.begin(), set.end());
  with.insert(std::upper_bound(with.begin(), with.end(), j), j);
  if (!std::is_sorted(set.begin(), set.end())) std::sort(with.begin(), with.end());
  return f.eval(with) - f.eval(set);
}

ResourceSet full_ground(int size) {
  ResourceSet all(size);
  for (int j = 0; j < size; ++j) all[j] = j;
  return all;
}

namespace {

// Greedy priority: marginal per unit cost, zero cost ranks above any finite
// density. Larger key wins; ties go to the smaller id.
struct DensityKey {
  bool infinite = false;
  Rational value;  // marginal if infinite, else marginal / cost
  int id = 0;
};

bool key_less(const DensityKey& a, const DensityKey& b) {
  if (a.infinite != b.infinite) return !a.infinite;
  if (a.value != b.value) return a.value < b.value;
  return a.id > b.id;
}

struct KeyOrder {
  bool operator()(const DensityKey& a, const DensityKey& b) const {
    return key_less(a, b);
  }
};

DensityKey make_key(const Rational& gain, const Rational& cost, int id) {
  if (cost == 0) return {true, gain, id};
  return {false, gain / cost, id};
}

void insert_sorted(ResourceSet& set, int j) {
  set.insert(std::upper_bound(set.begin(), set.end(), j), j);
}

// Density greedy from a seed with lazy marginal updates. Elements whose
// cost does not fit the residual budget are discarded when they reach the
// top of the queue.
ResourceSet greedy_complete(const ValuationOracle& f, ResourceSet seed,
                            const std::vector<int>& candidates,
                            std::span<const Rational> costs,
                            const Rational& budget) {
  Rational spent = 0;
  for (int j : seed) spent += costs[j];
  Rational value = f.eval(seed);
  std::priority_queue<DensityKey, std::vector<DensityKey>, KeyOrder> heap;
  for (int j : candidates) {
    if (std::binary_search(seed.begin(), seed.end(), j)) continue;
    if (spent + costs[j] > budget) continue;
    ResourceSet with = seed;
    insert_sorted(with, j);
    heap.push(make_key(f.eval(with) - value, costs[j], j));
  }
  while (!heap.empty()) {
    DensityKey top = heap.top();
    heap.pop();
    if (spent + costs[top.id] > budget) continue;
    ResourceSet with = seed;
    insert_sorted(with, top.id);
    Rational with_value = f.eval(with);
    Rational gain = with_value - value;
    DensityKey fresh = make_key(gain, costs[top.id], top.id);
    if (!heap.empty() && key_less(fresh, heap.top())) {
      heap.push(fresh);
      continue;
    }
    if (gain <= 0) break;  // every remaining marginal is zero
    seed = std::move(with);
    value = std::move(with_value);
    spent += costs[top.id];
  }
  return seed;
}

struct Best {
  ResourceSet set;
  Rational value = -1;

  void offer(ResourceSet candidate, const Rational& v) {
    if (v > value) {
      value = v;
      set = std::move(candidate);
    }
  }
};

void enumerate_seeds(const ValuationOracle& f, const std::vector<int>& items,
                     std::span<const Rational> costs, const Rational& budget,
                     int depth, size_t start, ResourceSet& current,
                     Rational& spent, Best& best) {
  if (static_cast<int>(current.size()) == depth) {
    ResourceSet done = greedy_complete(f, current, items, costs, budget);
    Rational v = f.eval(done);
    best.offer(std::move(done), v);
    return;
  }
  best.offer(current, f.eval(current));
  for (size_t t = start; t < items.size(); ++t) {
    int j = items[t];
    if (spent + costs[j] > budget) continue;
    current.push_back(j);
    spent += costs[j];
    enumerate_seeds(f, items, costs, budget, depth, t + 1, current, spent,
                    best);
    spent -= costs[j];
    current.pop_back();
  }
}

void check_costs(const ValuationOracle& f, const ResourceSet& ground,
                 std::span<const Rational> costs) {
  for (int j : ground) {
    if (j < 0 || j >= f.ground_size()) {
      throw StructuralError("unknown element id " + std::to_string(j));
    }
    if (static_cast<size_t>(j) >= costs.size()) {
      throw ContractError("costs do not cover the ground set");
    }
    if (costs[j] < 0) throw ContractError("negative cost");
  }
}

}  // namespace

ResourceSet knapsack_max(const ValuationOracle& f, const ResourceSet& ground,
                         std::span<const Rational> costs,
                         const Rational& budget,
                         const KnapsackOptions& options) {
  if (budget < 0) return {};
  check_costs(f, ground, costs);
  std::vector<int> items;
  for (int j : ground) {
    if (costs[j] <= budget) items.push_back(j);
  }
  std::sort(items.begin(), items.end());
  Best best;
  ResourceSet empty;
  if (options.enumeration_depth <= 0) {
    ResourceSet g = greedy_complete(f, empty, items, costs, budget);
    Rational v = f.eval(g);
    best.offer(std::move(g), v);
    for (int j : items) best.offer({j}, f.eval(std::vector<int>{j}));
    return best.set;
  }
  ResourceSet current;
  Rational spent = 0;
  enumerate_seeds(f, items, costs, budget, options.enumeration_depth, 0,
                  current, spent, best);
  ResourceSet g = greedy_complete(f, empty, items, costs, budget);
  Rational v = f.eval(g);
  best.offer(std::move(g), v);
  return best.set;
}

ResourceSet knapsack_max(const ValuationOracle& f,
                         std::span<const Rational> costs,
                         const Rational& budget,
                         const KnapsackOptions& options) {
  return knapsack_max(f, full_ground(f.ground_size()), costs, budget, options);
}

ResourceSet strict_knapsack_max(const ValuationOracle& f,
                                const ResourceSet& ground,
                                std::span<const Rational> costs,
                                const Rational& budget,
                                const KnapsackOptions& options) {
  if (budget <= 0) return {};
  check_costs(f, ground, costs);
  ResourceSet items;
  for (int j : ground) {
    if (costs[j] < budget) items.push_back(j);
  }
  std::sort(items.begin(), items.end());
  if (items.empty()) return {};
  ResourceSet s = knapsack_max(f, items, costs, budget, options);
  Rational spent = 0;
  for (int j : s) spent += costs[j];
  if (spent < budget) return s;
  // Equality: split the positive cost elements into two nonempty halves.
  // Each half is strictly cheaper because every single cost is below budget.
  ResourceSet free_part, paid;
  for (int j : s) (costs[j] == 0 ? free_part : paid).push_back(j);
  size_t half = (paid.size() + 1) / 2;
  ResourceSet first = free_part, second = free_part;
  first.insert(first.end(), paid.begin(), paid.begin() + half);
  second.insert(second.end(), paid.begin() + half, paid.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return f.eval(second) > f.eval(first) ? second : first;
}

ResourceSet strict_knapsack_max(const ValuationOracle& f,
                                std::span<const Rational> costs,
                                const Rational& budget,
                                const KnapsackOptions& options) {
  return strict_knapsack_max(f, full_ground(f.ground_size()), costs, budget,
                             options);
}

}  // namespace santa
