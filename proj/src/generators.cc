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
#include "santa/generators.h"

#include <algorithm>
#include <memory>

#include "santa/errors.h"
#include "santa/rng.h"

namespace santa {

namespace {

std::vector<ResourceSet> random_gamma(const SantaGenParams& p, Rng& rng) {
  std::vector<ResourceSet> gamma(p.players);
  for (int i = 0; i < p.players; ++i) {
    for (int j = 0; j < p.resources; ++j) {
      if (rng.uniform_unit() < p.density) gamma[i].push_back(j);
    }
    if (gamma[i].empty()) {
      gamma[i].push_back(static_cast<int>(rng.uniform_index(p.resources)));
    }
  }
  return gamma;
}

void check(const SantaGenParams& p) {
  if (p.players < 1 || p.resources < 1 || p.max_value < 1 || p.universe < 1 ||
      p.max_cover < 1) {
    throw ContractError("generator sizes must be positive");
  }
}

std::vector<Rational> random_values(const SantaGenParams& p, Rng& rng) {
  std::vector<Rational> values(p.resources);
  for (auto& v : values) v = 1 + static_cast<int64_t>(rng.uniform_index(p.max_value));
  return values;
}

}  // namespace

SantaInstance generate_santa_linear(const SantaGenParams& p, uint64_t seed) {
  check(p);
  Rng rng(seed);
  SantaInstance inst{p.players, p.resources, random_gamma(p, rng), nullptr};
  inst.valuation = std::make_shared<LinearOracle>(random_values(p, rng));
  return inst;
}

SantaInstance generate_santa_coverage(const SantaGenParams& p, uint64_t seed) {
  check(p);
  Rng rng(seed);
  SantaInstance inst{p.players, p.resources, random_gamma(p, rng), nullptr};
  std::vector<std::vector<int>> sets(p.resources);
  for (auto& s : sets) {
    int k = 1 + static_cast<int>(rng.uniform_index(p.max_cover));
    for (int t = 0; t < k; ++t) {
      s.push_back(static_cast<int>(rng.uniform_index(p.universe)));
    }
    s = normalized(std::move(s));
  }
  inst.valuation = std::make_shared<CoverageOracle>(p.universe, std::move(sets));
  return inst;
}

SantaInstance generate_santa_budgeted(const SantaGenParams& p, uint64_t seed) {
  check(p);
  Rng rng(seed);
  SantaInstance inst{p.players, p.resources, random_gamma(p, rng), nullptr};
  std::vector<Rational> values = random_values(p, rng);
  Rational total = 0;
  for (const auto& v : values) total += v;
  // Cap between a third and the whole total.
  Rational cap = total / 3 +
                 Rational(static_cast<int64_t>(rng.uniform_index(1000)), 1000) *
                     (total - total / 3);
  inst.valuation = std::make_shared<BudgetedAdditiveOracle>(std::move(values), cap);
  return inst;
}

SantaInstance generate_santa_matroid(const SantaGenParams& p, uint64_t seed) {
  check(p);
  Rng rng(seed);
  SantaInstance inst{p.players, p.resources, random_gamma(p, rng), nullptr};
  const int parts = std::max(1, p.resources / 2);
  std::vector<int> part_of(p.resources), capacity(parts);
  for (auto& q : part_of) q = static_cast<int>(rng.uniform_index(parts));
  for (auto& c : capacity) c = 1 + static_cast<int>(rng.uniform_index(2));
  inst.valuation = std::make_shared<MatroidRankOracle>(std::move(part_of),
                                                       std::move(capacity));
  return inst;
}

SantaInstance generate_santa_mixed(const SantaGenParams& p, uint64_t seed) {
  switch (seed % 4) {
    case 0:
      return generate_santa_linear(p, seed);
    case 1:
      return generate_santa_coverage(p, seed);
    case 2:
      return generate_santa_budgeted(p, seed);
    default:
      return generate_santa_matroid(p, seed);
  }
}

SantaInstance generate_santa_thin(const ThinGenParams& p, uint64_t seed) {
  if (p.players < 1 || p.fat < 0 || p.thin_per_player < 1 ||
      p.fat_per_player < 0) {
    throw ContractError("invalid thin generator parameters");
  }
  Rng rng(seed);
  const int n = p.fat + p.players * p.thin_per_player;
  SantaInstance inst{p.players, n, std::vector<ResourceSet>(p.players), nullptr};
  for (int i = 0; i < p.players; ++i) {
    ResourceSet& g = inst.gamma[i];
    for (int t = 0; t < std::min(p.fat_per_player, p.fat); ++t) {
      g.push_back(static_cast<int>(rng.uniform_index(p.fat)));
    }
    const int base = p.fat + i * p.thin_per_player;
    for (int t = 0; t < p.thin_per_player; ++t) g.push_back(base + t);
    g = normalized(std::move(g));
  }
  std::vector<Rational> values(n, Rational(1));
  for (int j = 0; j < p.fat; ++j) values[j] = p.thin_per_player;
  inst.valuation = std::make_shared<LinearOracle>(std::move(values));
  return inst;
}

GroupedHypergraph generate_grouped_hypergraph(const HypergraphGenParams& p,
                                              uint64_t seed) {
  if (p.groups < 1 || p.group_size < 1 || p.ell < 1 || p.resources < 1 ||
      p.min_config < 0 || p.max_config < p.min_config) {
    throw ContractError("invalid hypergraph generator parameters");
  }
  Rng rng(seed);
  GroupedHypergraph gh;
  gh.num_players = p.groups * p.group_size;
  gh.num_resources = p.resources;
  gh.ell = p.ell;
  std::vector<int> degree(p.resources, 0);
  for (int g = 0; g < p.groups; ++g) {
    Group group;
    for (int t = 0; t < p.group_size; ++t) {
      group.players.push_back(g * p.group_size + t);
    }
    for (int s = 0; s < p.ell; ++s) {
      std::vector<int> set;
      for (int player : group.players) {
        const int span = p.max_config - p.min_config + 1;
        int size = p.min_config + static_cast<int>(rng.uniform_index(span));
        std::vector<int> open;
        for (int j = 0; j < p.resources; ++j) {
          if (degree[j] < p.ell) open.push_back(j);
        }
        ResourceSet res;
        for (int k = 0; k < size && !open.empty(); ++k) {
          size_t pick = rng.uniform_index(open.size());
          res.push_back(open[pick]);
          open.erase(open.begin() + static_cast<long>(pick));
        }
        res = normalized(std::move(res));
        for (int j : res) ++degree[j];
        set.push_back(static_cast<int>(gh.configurations.size()));
        gh.configurations.push_back({player, std::move(res)});
      }
      group.consistent_sets.push_back(std::move(set));
    }
    gh.groups.push_back(std::move(group));
  }
  return gh;
}

}  // namespace santa
