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
#include "santa/sampling.h"

#include <cmath>
#include <limits>
#include <string>

#include "santa/errors.h"
#include "santa/rng.h"

namespace santa {
namespace {

constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
constexpr size_t kMaxWitnesses = 16;

void record(PropertyCheck& check, PropertyWitness w) {
  check.ok = false;
  if (check.violations.size() < kMaxWitnesses) {
    check.violations.push_back(std::move(w));
  }
}

// Configurations containing each resource.
std::vector<std::vector<int>> incidence(const GroupedHypergraph& gh) {
  std::vector<std::vector<int>> out(gh.num_resources);
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    for (int j : gh.configurations[c].resources) {
      out[j].push_back(static_cast<int>(c));
    }
  }
  return out;
}

}  // namespace

int64_t saturating_pow(int64_t ell, int e) {
  int64_t out = 1;
  for (int k = 0; k < e; ++k) {
    if (ell != 0 && out > kMax / ell) return kMax;
    out *= ell;
  }
  return out;
}

int64_t theory_ell(int64_t ell, int n) {
  int64_t lg = ceil_log2(static_cast<uint64_t>(std::max(n, 1)));
  int64_t cube = saturating_pow(lg, 3);
  int64_t floor_value = cube > kMax / 300000 ? kMax : 300000 * cube;
  return std::max(ell, floor_value);
}

SizeClasses size_classes(const GroupedHypergraph& gh, int64_t ell) {
  if (ell < 2) throw ContractError("size classes need ell >= 2");
  SizeClasses out;
  out.ell = ell;
  for (const Configuration& cfg : gh.configurations) {
    const int64_t size = static_cast<int64_t>(cfg.resources.size());
    int k = 0;
    while (saturating_pow(ell, k + 4) <= size) ++k;
    out.class_of.push_back(k);
    out.d = std::max(out.d, k);
  }
  out.members.resize(out.d + 1);
  for (size_t c = 0; c < out.class_of.size(); ++c) {
    out.members[out.class_of[c]].push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<char> ResourceHierarchy::level_mask(int level) const {
  std::vector<char> mask(depth.size());
  for (size_t j = 0; j < depth.size(); ++j) mask[j] = depth[j] >= level;
  return mask;
}

ResourceSet ResourceHierarchy::level(int level) const {
  ResourceSet out;
  for (size_t j = 0; j < depth.size(); ++j) {
    if (depth[j] >= level) out.push_back(static_cast<int>(j));
  }
  return out;
}

ResourceHierarchy sample_hierarchy(int num_resources, int64_t ell, int d,
                                   uint64_t seed) {
  if (ell < 2) throw ContractError("hierarchy needs ell >= 2");
  ResourceHierarchy hier;
  hier.ell = ell;
  hier.d = d;
  hier.seed = seed;
  hier.depth.assign(num_resources, 0);
  Rng rng(seed);
  for (int k = 1; k <= d; ++k) {
    for (int j = 0; j < num_resources; ++j) {
      if (hier.depth[j] == k - 1 &&
          rng.uniform_index(static_cast<uint64_t>(ell)) == 0) {
        hier.depth[j] = k;
      }
    }
  }
  return hier;
}

PropertyCheck check_size_property(const GroupedHypergraph& gh,
                                  const ResourceHierarchy& hier,
                                  const SizeClasses& classes) {
  PropertyCheck check;
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    const ResourceSet& res = gh.configurations[c].resources;
    for (int k = 1; k <= classes.class_of[c]; ++k) {
      ++check.checked;
      int64_t count = 0;
      for (int j : res) count += hier.contains(k, j);
      Rational scaled(static_cast<int64_t>(res.size()),
                      saturating_pow(hier.ell, k));
      Rational low = scaled / 2, high = 3 * scaled / 2;
      if (count < low || count > high) {
        record(check, {k, static_cast<int>(c), Rational(count), low, high});
      }
    }
  }
  return check;
}

PropertyCheck check_overlap_property(const GroupedHypergraph& gh,
                                     const ResourceHierarchy& hier,
                                     const SizeClasses& classes) {
  PropertyCheck check;
  const auto inc = incidence(gh);
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    const ResourceSet& res = gh.configurations[c].resources;
    const int top = classes.class_of[c];
    std::vector<int64_t> inside(top + 1, 0), all(top + 1, 0);
    for (int j : res) {
      for (int other : inc[j]) {
        int k = classes.class_of[other];
        if (k > top) continue;
        ++all[k];
        if (hier.contains(k, j)) ++inside[k];
      }
    }
    for (int k = 0; k <= top; ++k) {
      ++check.checked;
      Rational bound = Rational(10 * (static_cast<int64_t>(res.size()) + all[k]),
                                saturating_pow(hier.ell, k));
      if (inside[k] > bound) {
        record(check, {k, static_cast<int>(c), Rational(inside[k]), 0, bound});
      }
    }
  }
  return check;
}

double chernoff_tail(double mu, double delta, double a, Tail side) {
  if (mu < 0 || a <= 0) throw ContractError("chernoff_tail needs mu >= 0, a > 0");
  if (side == Tail::kLower) {
    if (!(delta > 0 && delta < 1)) {
      throw ContractError("lower tail needs delta in (0, 1)");
    }
    return std::exp(-delta * delta * mu / (2 * a));
  }
  if (delta < 0) throw ContractError("upper tail needs delta >= 0");
  return std::exp(-std::min(delta, delta * delta) * mu / (3 * a));
}

HierarchyDraw resample_until_good(const GroupedHypergraph& gh,
                                  const SizeClasses& classes, int max_tries,
                                  uint64_t seed) {
  if (max_tries < 1) throw ContractError("max_tries must be positive");
  HierarchyDraw draw;
  for (int t = 0; t < max_tries; ++t) {
    draw.tries = t + 1;
    draw.hierarchy = sample_hierarchy(gh.num_resources, classes.ell, classes.d,
                                      derive_seed(seed, static_cast<uint64_t>(t)));
    draw.size = check_size_property(gh, draw.hierarchy, classes);
    draw.overlap = check_overlap_property(gh, draw.hierarchy, classes);
    if (draw.size.ok && draw.overlap.ok) return draw;
  }
  std::string what = "hierarchy properties failed after " +
                     std::to_string(max_tries) + " draws";
  const auto& v = !draw.size.ok ? draw.size.violations : draw.overlap.violations;
  if (!v.empty()) {
    what += "; " + std::string(!draw.size.ok ? "size" : "overlap") +
            " witness level " + std::to_string(v.front().level) + " config " +
            std::to_string(v.front().config) + " value " +
            to_string(v.front().value);
  }
  throw CapExceededError(what);
}

}  // namespace santa
