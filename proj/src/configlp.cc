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
#include "santa/configlp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "santa/errors.h"
#include "santa/flow.h"
#include "santa/log.h"
#include "santa/simplex.h"

namespace santa {

double lp_approx_factor() { return (1.0 - std::exp(-1.0)) / 2.0; }

const Rational& lp_approx_factor_rational() {
  static const Rational c = rational_from_double(lp_approx_factor());
  return c;
}

int auto_knapsack_depth(size_t ground_size) {
  if (ground_size <= 16) return 3;
  if (ground_size <= 40) return 1;
  return 0;
}

namespace {

struct PoolColumn {
  int player;
  ResourceSet resources;
  Rational value;  // f(C)
};

std::optional<Configuration> separate_player(const SantaInstance& inst,
                                             const DualPoint& dual,
                                             const Rational& threshold, int i,
                                             int depth) {
  if (dual.y[i] <= 0) return std::nullopt;
  KnapsackOptions options;
  options.enumeration_depth =
      depth >= 0 ? depth : auto_knapsack_depth(inst.gamma[i].size());
  ResourceSet s = strict_knapsack_max(*inst.valuation, inst.gamma[i], dual.z,
                                      dual.y[i], options);
  if (s.empty() && threshold > 0) return std::nullopt;
  if (inst.valuation->eval(s) >= threshold) return Configuration{i, s};
  return std::nullopt;
}

}  // namespace

std::optional<Configuration> separate(const SantaInstance& inst,
                                      const DualPoint& dual, const Rational& t,
                                      const SeparateOptions& options) {
  if (static_cast<int>(dual.y.size()) != inst.m ||
      static_cast<int>(dual.z.size()) != inst.n) {
    throw ContractError("dual point size mismatch");
  }
  for (const Rational& v : dual.y) {
    if (v < 0) throw ContractError("negative dual");
  }
  for (const Rational& v : dual.z) {
    if (v < 0) throw ContractError("negative dual");
  }
  const Rational threshold = lp_approx_factor_rational() * t;
  for (int i = 0; i < inst.m; ++i) {
    if (auto c = separate_player(inst, dual, threshold, i,
                                 options.knapsack_depth)) {
      return c;
    }
  }
  return std::nullopt;
}

LpFeasibility lp_feasibility(const SantaInstance& inst,
                             const FractionalSolution& sol) {
  LpFeasibility out;
  std::vector<Rational> cover(inst.m, 0), load(inst.n, 0);
  const Rational threshold = lp_approx_factor_rational() * sol.target;
  for (const Column& col : sol.columns) {
    if (col.player < 0 || col.player >= inst.m) {
      throw StructuralError("column player out of range");
    }
    if (col.x < 0 || col.x > 1) out.columns_valid = false;
    if (!is_subset(col.resources, inst.gamma[col.player])) {
      out.columns_valid = false;
    }
    if (inst.valuation->eval(col.resources) < threshold) {
      out.columns_valid = false;
    }
    cover[col.player] += col.x;
    for (int j : col.resources) load[j] += col.x;
  }
  out.min_coverage = *std::min_element(cover.begin(), cover.end());
  out.max_congestion = *std::max_element(load.begin(), load.end());
  return out;
}

Rational bottleneck_singleton_value(const SantaInstance& inst) {
  std::vector<Rational> value(inst.n);
  std::set<Rational> levels;
  for (int j = 0; j < inst.n; ++j) {
    value[j] = inst.singleton_value(j);
    if (value[j] > 0) levels.insert(value[j]);
  }
  std::vector<Rational> sorted(levels.begin(), levels.end());
  auto feasible = [&](const Rational& level) {
    std::vector<std::vector<int>> adj(inst.m);
    for (int i = 0; i < inst.m; ++i) {
      for (int j : inst.gamma[i]) {
        if (value[j] >= level) adj[i].push_back(j);
      }
    }
    auto match = bipartite_matching(inst.m, inst.n, adj);
    return std::find(match.begin(), match.end(), -1) == match.end();
  };
  int lo = -1, hi = static_cast<int>(sorted.size());
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (feasible(sorted[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo < 0 ? Rational(0) : sorted[lo];
}

namespace {

// Restricted master over the given columns. Variables: lambda, then one x
// per column. Rows: one per player (lambda - sum x <= 0), then one per
// distinct resource pattern; resources lying in exactly the same columns
// share a row, and unused resources get none.
template <typename T>
struct Master {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> c;
  std::vector<std::vector<int>> row_resources;  // per resource row
};

template <typename T>
Master<T> build_master(int m, int n, const std::vector<const ResourceSet*>& cols,
                       const std::vector<int>& players) {
  std::vector<std::vector<int>> pattern(n);
  for (size_t k = 0; k < cols.size(); ++k) {
    for (int j : *cols[k]) pattern[j].push_back(static_cast<int>(k));
  }
  std::map<std::vector<int>, int> row_of;
  Master<T> master;
  for (int j = 0; j < n; ++j) {
    if (pattern[j].empty()) continue;
    auto [it, fresh] = row_of.emplace(pattern[j],
                                      static_cast<int>(master.row_resources.size()));
    if (fresh) master.row_resources.emplace_back();
    master.row_resources[it->second].push_back(j);
  }
  const size_t rows = m + master.row_resources.size();
  master.a.assign(rows, std::vector<T>(1 + cols.size(), T(0)));
  master.b.assign(rows, T(0));
  master.c.assign(1 + cols.size(), T(0));
  master.c[0] = T(1);
  for (int i = 0; i < m; ++i) master.a[i][0] = T(1);
  for (size_t r = 0; r < master.row_resources.size(); ++r) {
    master.b[m + r] = T(1);
    for (int k : pattern[master.row_resources[r].front()]) {
      master.a[m + r][1 + k] = T(1);
    }
  }
  for (size_t k = 0; k < cols.size(); ++k) master.a[players[k]][1 + k] = T(-1);
  return master;
}

class ColumnGenerator {
 public:
  ColumnGenerator(const SantaInstance& inst, const ConfigLpOptions& options)
      : inst_(inst), options_(options) {
    for (int i = 0; i < inst.m; ++i) {
      for (int j : inst.gamma[i]) add_column(i, {j});
      add_column(i, inst.gamma[i]);
    }
  }

  // Attempts to certify target t; fills *sol on success.
  bool attempt(const Rational& t, FractionalSolution* sol, bool* capped) {
    const Rational threshold = lp_approx_factor_rational() * t;
    for (int round = 0; round < options_.max_rounds; ++round) {
      std::vector<int> eligible;
      for (size_t k = 0; k < pool_.size(); ++k) {
        if (pool_[k].value >= threshold) eligible.push_back(static_cast<int>(k));
      }
      std::vector<const ResourceSet*> cols;
      std::vector<int> players;
      for (int k : eligible) {
        cols.push_back(&pool_[k].resources);
        players.push_back(pool_[k].player);
      }
      Master<double> master = build_master<double>(inst_.m, inst_.n, cols, players);
      // Empty columns would make lambda unbounded; they only arise at t = 0.
      LpResult<double> lp = solve_lp(master.a, master.b, master.c);
      ++lp_solves_;
      if (lp.status == LpStatus::kUnbounded) {
        throw Error("configuration LP master unbounded");
      }
      if (lp.objective >= 1.0 - 1e-9 &&
          repair(t, eligible, lp.x, sol)) {
        return true;
      }
      // A shared row's dual is split evenly over its resources.
      DualPoint dual;
      dual.y.resize(inst_.m);
      dual.z.assign(inst_.n, Rational(0));
      for (int i = 0; i < inst_.m; ++i) {
        dual.y[i] = rational_from_double(std::max(0.0, lp.duals[i]));
      }
      for (size_t r = 0; r < master.row_resources.size(); ++r) {
        const auto& group = master.row_resources[r];
        Rational z = rational_from_double(std::max(0.0, lp.duals[inst_.m + r])) /
                     static_cast<int>(group.size());
        for (int j : group) dual.z[j] = z;
      }
      bool added = false;
      for (int i = 0; i < inst_.m; ++i) {
        if (auto col = separate_player(inst_, dual, threshold, i,
                                       options_.knapsack_depth)) {
          added |= add_column(col->player, col->resources);
        }
      }
      if (!added) return false;
    }
    *capped = true;
    return false;
  }

  int lp_solves() const { return lp_solves_; }
  int pool_size() const { return static_cast<int>(pool_.size()); }

 private:
  bool add_column(int player, ResourceSet resources) {
    if (!seen_.insert({player, resources}).second) return false;
    Rational v = inst_.valuation->eval(resources);
    pool_.push_back({player, std::move(resources), std::move(v)});
    return true;
  }

  // Re-solves the master exactly over the support of the floating point
  // solution; succeeds iff the exact optimum reaches lambda = 1.
  bool repair(const Rational& t, const std::vector<int>& eligible,
              const std::vector<double>& x, FractionalSolution* sol) {
    std::vector<int> support;
    for (size_t k = 0; k < eligible.size(); ++k) {
      if (x[1 + k] > 1e-12) support.push_back(eligible[k]);
    }
    std::vector<const ResourceSet*> cols;
    std::vector<int> players;
    for (int k : support) {
      cols.push_back(&pool_[k].resources);
      players.push_back(pool_[k].player);
    }
    Master<Rational> master =
        build_master<Rational>(inst_.m, inst_.n, cols, players);
    LpResult<Rational> lp = solve_lp(master.a, master.b, master.c);
    if (lp.status != LpStatus::kOptimal || lp.objective < 1) return false;
    sol->target = t;
    sol->columns.clear();
    for (size_t k = 0; k < support.size(); ++k) {
      if (lp.x[1 + k] == 0) continue;
      const PoolColumn& col = pool_[support[k]];
      sol->columns.push_back({col.player, col.resources, lp.x[1 + k]});
    }
    return true;
  }

  const SantaInstance& inst_;
  const ConfigLpOptions& options_;
  std::vector<PoolColumn> pool_;
  std::set<std::pair<int, ResourceSet>> seen_;
  int lp_solves_ = 0;
};

FractionalSolution trivial_solution(const SantaInstance& inst) {
  FractionalSolution sol;
  sol.target = 0;
  for (int i = 0; i < inst.m; ++i) sol.columns.push_back({i, {}, 1});
  return sol;
}

// Integral solution at level t from a perfect matching on singletons.
FractionalSolution matching_solution(const SantaInstance& inst,
                                     const Rational& t) {
  std::vector<std::vector<int>> adj(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : inst.gamma[i]) {
      if (inst.singleton_value(j) >= t) adj[i].push_back(j);
    }
  }
  auto match = bipartite_matching(inst.m, inst.n, adj);
  FractionalSolution sol;
  sol.target = t;
  for (int i = 0; i < inst.m; ++i) {
    if (match[i] < 0) throw Error("no singleton matching at the lower bound");
    sol.columns.push_back({i, {match[i]}, 1});
  }
  return sol;
}

}  // namespace

ConfigLpResult solve_config_lp(const SantaInstance& inst,
                               const ConfigLpOptions& options) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw StructuralError("invalid instance: " + v.front());
  }
  ConfigLpResult result;
  const Rational lo_value = bottleneck_singleton_value(inst);
  if (lo_value == 0) {
    result.t_star = 0;
    result.t_certified = 0;
    result.solution = trivial_solution(inst);
    return result;
  }
  Rational hi_value = -1;
  for (int i = 0; i < inst.m; ++i) {
    Rational v = inst.valuation->eval(inst.gamma[i]);
    if (hi_value < 0 || v < hi_value) hi_value = v;
  }
  ColumnGenerator gen(inst, options);
  FractionalSolution best;
  bool capped = false;
  best = matching_solution(inst, lo_value);
  Rational lo = lo_value;
  Rational hi = hi_value;
  FractionalSolution candidate;
  if (hi > lo && gen.attempt(hi, &candidate, &capped)) {
    lo = hi;
    best = candidate;
  } else if (hi > lo) {
    for (int step = 0; step < options.grid_steps; ++step) {
      if (lo > 0 && to_double(hi / lo) <= 1 + options.tol) break;
      const double mid_d = std::sqrt(to_double(lo) * to_double(hi));
      Rational mid = rational_from_double(mid_d);
      if (!(mid > lo && mid < hi)) break;
      if (gen.attempt(mid, &candidate, &capped)) {
        lo = mid;
        best = candidate;
      } else {
        hi = mid;
      }
    }
  }
  result.t_certified = lo;
  result.t_star = lp_approx_factor_rational() * lo;
  result.solution = std::move(best);
  result.iteration_cap_hit = capped;
  result.lp_solves = gen.lp_solves();
  result.columns_generated = gen.pool_size();
  if (capped) logger().warn("configuration LP hit its round cap");
  return result;
}

namespace {

// Inclusion-minimal subsets S of gamma with f(S) >= t.
std::vector<ResourceSet> minimal_columns(const SantaInstance& inst, int i,
                                         const Rational& t) {
  const ResourceSet& g = inst.gamma[i];
  const size_t k = g.size();
  std::vector<char> good(size_t{1} << k, 0);
  std::vector<ResourceSet> out;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    ResourceSet s;
    for (size_t b = 0; b < k; ++b) {
      if (mask >> b & 1) s.push_back(g[b]);
    }
    good[mask] = inst.valuation->eval(s) >= t;
    if (!good[mask]) continue;
    bool minimal = true;
    for (size_t b = 0; b < k && minimal; ++b) {
      if ((mask >> b & 1) && good[mask ^ (1u << b)]) minimal = false;
    }
    if (minimal) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::optional<FractionalSolution> exact_config_lp_small(const SantaInstance& inst,
                                                        const Rational& t) {
  if (inst.n > 12) {
    throw BudgetError("exact configuration LP limited to n <= 12, got " +
                      std::to_string(inst.n));
  }
  std::vector<Configuration> columns;
  for (int i = 0; i < inst.m; ++i) {
    for (ResourceSet& s : minimal_columns(inst, i, t)) {
      columns.push_back({i, std::move(s)});
    }
  }
  FractionalSolution sol;
  sol.target = t;
  std::vector<int> count(inst.m, 0);
  for (const Configuration& c : columns) ++count[c.player];
  if (std::find(count.begin(), count.end(), 0) != count.end()) {
    return std::nullopt;
  }
  for (const Configuration& c : columns) {
    if (c.resources.empty()) {
      // t <= 0: the empty configuration serves its player alone.
      sol.columns.push_back({c.player, {}, 1});
    }
  }
  if (!sol.columns.empty()) {
    std::vector<char> done(inst.m, 0);
    for (const Column& c : sol.columns) done[c.player] = 1;
    if (std::find(done.begin(), done.end(), 0) == done.end()) return sol;
  }
  const size_t cols = 1 + columns.size();
  std::vector<std::vector<Rational>> a(inst.m + inst.n,
                                       std::vector<Rational>(cols, 0));
  std::vector<Rational> b(inst.m + inst.n, 0), c(cols, 0);
  c[0] = 1;
  for (int i = 0; i < inst.m; ++i) a[i][0] = 1;
  for (int j = 0; j < inst.n; ++j) b[inst.m + j] = 1;
  for (size_t k = 0; k < columns.size(); ++k) {
    a[columns[k].player][1 + k] = -1;
    for (int j : columns[k].resources) a[inst.m + j][1 + k] = 1;
  }
  LpResult<Rational> lp = solve_lp(a, b, c);
  if (lp.status == LpStatus::kUnbounded) {
    // Only possible with empty columns for every player, handled above.
    throw Error("exact configuration LP unbounded");
  }
  if (lp.objective < 1) return std::nullopt;
  sol.columns.clear();
  for (size_t k = 0; k < columns.size(); ++k) {
    if (lp.x[1 + k] == 0) continue;
    sol.columns.push_back(
        {columns[k].player, columns[k].resources, lp.x[1 + k] / lp.objective});
  }
  return sol;
}

Rational exact_config_lp_value(const SantaInstance& inst) {
  if (inst.n > 12) {
    throw BudgetError("exact configuration LP limited to n <= 12");
  }
  std::set<Rational> values;
  for (int i = 0; i < inst.m; ++i) {
    const ResourceSet& g = inst.gamma[i];
    for (uint32_t mask = 1; mask < (1u << g.size()); ++mask) {
      ResourceSet s;
      for (size_t b = 0; b < g.size(); ++b) {
        if (mask >> b & 1) s.push_back(g[b]);
      }
      Rational v = inst.valuation->eval(s);
      if (v > 0) values.insert(v);
    }
  }
  std::vector<Rational> sorted(values.begin(), values.end());
  int lo = -1, hi = static_cast<int>(sorted.size());
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (exact_config_lp_small(inst, sorted[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo < 0 ? Rational(0) : sorted[lo];
}

}  // namespace santa
