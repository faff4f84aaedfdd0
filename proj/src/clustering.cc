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
#include "santa/clustering.h"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "santa/errors.h"
#include "santa/log.h"
#include "santa/rng.h"

namespace santa {

FatThinSplit split_fat_thin(const SantaInstance& inst, const Rational& t_star,
                            const Rational& alpha) {
  if (t_star <= 0) throw ContractError("split_fat_thin needs T* > 0");
  if (alpha < 1) throw ContractError("split_fat_thin needs alpha >= 1");
  FatThinSplit split;
  split.t_star = t_star;
  split.threshold = t_star / (100 * alpha);
  split.is_fat.assign(inst.n, 0);
  for (int j = 0; j < inst.n; ++j) {
    if (inst.singleton_value(j) >= split.threshold) {
      split.is_fat[j] = 1;
      split.fat.push_back(j);
    } else {
      split.thin.push_back(j);
    }
  }
  return split;
}

namespace {

// Player/fat-resource bipartite multigraph-free graph with exact values.
class FatGraph {
 public:
  FatGraph(int m, int n) : by_player_(m), by_resource_(n) {}

  void add(int i, int j, const Rational& x) {
    auto [it, fresh] = by_player_[i].emplace(j, x);
    if (!fresh) it->second += x;
    by_resource_[j][i] = it->second;
  }
  void erase(int i, int j) {
    by_player_[i].erase(j);
    by_resource_[j].erase(i);
  }
  void set(int i, int j, const Rational& x) {
    by_player_[i][j] = x;
    by_resource_[j][i] = x;
  }
  const Rational& value(int i, int j) const { return by_player_[i].at(j); }
  void remove_player(int i) {
    for (auto& [j, x] : by_player_[i]) by_resource_[j].erase(i);
    by_player_[i].clear();
  }
  void remove_resource(int j) {
    for (auto& [i, x] : by_resource_[j]) by_player_[i].erase(j);
    by_resource_[j].clear();
  }
  const std::map<int, Rational>& of_player(int i) const { return by_player_[i]; }
  const std::map<int, Rational>& of_resource(int j) const {
    return by_resource_[j];
  }
  int num_players() const { return static_cast<int>(by_player_.size()); }
  int num_resources() const { return static_cast<int>(by_resource_.size()); }

 private:
  std::vector<std::map<int, Rational>> by_player_;
  std::vector<std::map<int, Rational>> by_resource_;
};

// Node ids: players 0..m-1, resources m..m+n-1.
struct CycleEdge {
  int player;
  int resource;
};

// Some cycle as a closed edge walk, or empty.
std::vector<CycleEdge> find_cycle(const FatGraph& g) {
  const int m = g.num_players(), n = g.num_resources();
  std::vector<int> parent(m + n, -2), depth(m + n, 0);
  for (int root = 0; root < m; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      auto visit = [&](int v) -> std::vector<CycleEdge> {
        if (v == parent[u]) return {};
        if (parent[v] == -2) {
          parent[v] = u;
          depth[v] = depth[u] + 1;
          stack.push_back(v);
          return {};
        }
        // Non-tree edge u-v closes a cycle through their common ancestor.
        std::vector<int> left{u}, right{v};
        while (left.back() != right.back()) {
          if (depth[left.back()] >= depth[right.back()]) {
            left.push_back(parent[left.back()]);
          } else {
            right.push_back(parent[right.back()]);
          }
        }
        std::vector<int> walk(left.begin(), left.end());
        for (auto it = right.rbegin() + 1; it != right.rend(); ++it) {
          walk.push_back(*it);
        }
        std::vector<CycleEdge> cycle;
        for (size_t k = 0; k < walk.size(); ++k) {
          int a = walk[k], b = walk[(k + 1) % walk.size()];
          int p = a < m ? a : b;
          int r = (a < m ? b : a) - m;
          cycle.push_back({p, r});
        }
        return cycle;
      };
      if (u < m) {
        for (auto& [j, x] : g.of_player(u)) {
          auto c = visit(m + j);
          if (!c.empty()) return c;
        }
      } else {
        for (auto& [i, x] : g.of_resource(u - m)) {
          auto c = visit(i);
          if (!c.empty()) return c;
        }
      }
    }
  }
  return {};
}

}  // namespace

ClusterDecomposition build_clusters(const SantaInstance& inst,
                                    const FractionalSolution& sol,
                                    const FatThinSplit& split) {
  LpFeasibility feas = lp_feasibility(inst, sol);
  if (feas.min_coverage < 1 || feas.max_congestion > 1) {
    throw StructuralError("build_clusters needs a feasible solution (coverage " +
                          to_string(feas.min_coverage) + ", congestion " +
                          to_string(feas.max_congestion) + ")");
  }
  ClusterDecomposition dec;
  dec.t_star = split.t_star;
  dec.split = split;
  const int m = inst.m, n = inst.n;
  FatGraph g(m, n);
  std::vector<std::vector<Column>> thin(m);
  for (const Column& col : sol.columns) {
    if (col.x == 0) continue;
    int fat = -1;
    for (int j : col.resources) {
      if (split.is_fat[j]) {
        fat = j;
        break;
      }
    }
    if (fat >= 0) {
      g.add(col.player, fat, col.x);
    } else {
      thin[col.player].push_back(col);
    }
  }
  std::vector<char> in_q(m, 0), gone(n, 0);
  auto move_to_q = [&](int i, int j) {
    in_q[i] = 1;
    gone[j] = 1;
    dec.q_players.push_back(i);
    dec.q_resources.push_back(j);
    g.remove_player(i);
    g.remove_resource(j);
    thin[i].clear();
  };
  auto saturate = [&]() {
    for (int i = 0; i < m; ++i) {
      if (in_q[i]) continue;
      for (auto& [j, x] : g.of_player(i)) {
        if (x >= 1) {
          move_to_q(i, j);
          break;
        }
      }
    }
  };
  saturate();
  // Cycle cancelling: alternate +delta / -delta around a cycle.
  while (true) {
    std::vector<CycleEdge> cycle = find_cycle(g);
    if (cycle.empty()) break;
    Rational delta = -1;
    for (size_t k = 0; k < cycle.size(); ++k) {
      const Rational& x = g.value(cycle[k].player, cycle[k].resource);
      Rational slack = (k % 2 == 0) ? Rational(1 - x) : x;
      if (delta < 0 || slack < delta) delta = slack;
    }
    for (size_t k = 0; k < cycle.size(); ++k) {
      const auto [i, j] = cycle[k];
      Rational x = g.value(i, j) + (k % 2 == 0 ? delta : Rational(-delta));
      if (x == 0) {
        g.erase(i, j);
      } else {
        g.set(i, j, x);
      }
    }
    saturate();
  }
  // Degree one fat resources.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : split.fat) {
      if (gone[j] || g.of_resource(j).size() != 1) continue;
      move_to_q(g.of_resource(j).begin()->first, j);
      changed = true;
    }
  }
  for (int j : split.fat) {
    if (!gone[j] && g.of_resource(j).empty()) gone[j] = 1;
  }
  // Break branching resources from the deepest one up.
  while (true) {
    int target = -1, target_parent = -1, best_depth = -1;
    std::vector<int> parent(m + n, -2), depth(m + n, 0);
    for (int root = 0; root < m; ++root) {
      if (in_q[root] || parent[root] != -2) continue;
      parent[root] = -1;
      std::deque<int> queue{root};
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u >= m) {
          int j = u - m;
          if (g.of_resource(j).size() >= 3 && depth[u] > best_depth) {
            best_depth = depth[u];
            target = j;
            target_parent = parent[u];
          }
          for (auto& [i, x] : g.of_resource(j)) {
            if (parent[i] == -2) {
              parent[i] = u;
              depth[i] = depth[u] + 1;
              queue.push_back(i);
            }
          }
        } else {
          for (auto& [j, x] : g.of_player(u)) {
            if (parent[m + j] == -2) {
              parent[m + j] = u;
              depth[m + j] = depth[u] + 1;
              queue.push_back(m + j);
            }
          }
        }
      }
    }
    if (target < 0) break;
    int child = -1;
    Rational lightest;
    for (auto& [i, x] : g.of_resource(target)) {
      if (i == target_parent) continue;
      if (child < 0 || x < lightest) {
        child = i;
        lightest = x;
      }
    }
    if (lightest * 2 > 1) {
      throw StructuralError("branching fat resource without a light child");
    }
    g.erase(child, target);
  }
  // Components become clusters.
  std::vector<char> seen(m, 0);
  for (int root = 0; root < m; ++root) {
    if (in_q[root] || seen[root]) continue;
    Cluster cluster;
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      cluster.players.push_back(i);
      for (auto& [j, x] : g.of_player(i)) {
        cluster.edges.push_back({i, j});
        if (std::find(cluster.fat_resources.begin(), cluster.fat_resources.end(),
                      j) == cluster.fat_resources.end()) {
          cluster.fat_resources.push_back(j);
        }
        for (auto& [k, y] : g.of_resource(j)) {
          if (!seen[k]) {
            seen[k] = 1;
            queue.push_back(k);
          }
        }
      }
    }
    std::sort(cluster.players.begin(), cluster.players.end());
    std::sort(cluster.fat_resources.begin(), cluster.fat_resources.end());
    std::sort(cluster.edges.begin(), cluster.edges.end());
    cluster.thin_mass = 0;
    for (int i : cluster.players) {
      for (const Column& c : thin[i]) {
        cluster.thin_columns.push_back(c);
        cluster.thin_mass += c.x;
      }
    }
    if (cluster.fat_resources.size() + 1 != cluster.players.size()) {
      throw StructuralError("cluster is not a tree with one spare player");
    }
    if (cluster.thin_mass * 2 < 1) {
      throw StructuralError("cluster thin mass " + to_string(cluster.thin_mass) +
                            " below 1/2");
    }
    dec.clusters.push_back(std::move(cluster));
  }
  return dec;
}

std::vector<std::pair<int, int>> cluster_fat_matching(const Cluster& cluster,
                                                      int representative) {
  std::map<int, std::vector<int>> player_adj, resource_adj;
  for (auto [i, j] : cluster.edges) {
    player_adj[i].push_back(j);
    resource_adj[j].push_back(i);
  }
  if (std::find(cluster.players.begin(), cluster.players.end(),
                representative) == cluster.players.end()) {
    throw ContractError("representative not in cluster");
  }
  std::vector<std::pair<int, int>> out;
  std::map<int, char> seen_player{{representative, 1}}, seen_resource;
  std::deque<int> queue{representative};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j : player_adj[i]) {
      if (seen_resource[j]) continue;
      seen_resource[j] = 1;
      for (int k : resource_adj[j]) {
        if (seen_player[k]) continue;
        seen_player[k] = 1;
        out.push_back({k, j});
        queue.push_back(k);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<ResourceSet, 4> split_into_quarters(const ValuationOracle& f,
                                               const ResourceSet& c,
                                               const Rational& t_star) {
  const Rational target = t_star / 5;
  ResourceSet remaining = c;
  std::array<ResourceSet, 4> parts;
  for (int q = 0; q < 4; ++q) {
    ResourceSet part;
    std::vector<int> order;
    Rational value = 0;
    while (value < target) {
      int best = -1;
      Rational best_gain = -1;
      for (int j : remaining) {
        Rational gain = marginal(f, j, part);
        if (gain > best_gain) {
          best_gain = gain;
          best = j;
        }
      }
      if (best < 0 || best_gain <= 0) {
        throw StructuralError("quarter " + std::to_string(q + 1) +
                              " cannot reach T*/5; a fat resource leaked");
      }
      part.insert(std::upper_bound(part.begin(), part.end(), best), best);
      order.push_back(best);
      remaining.erase(std::find(remaining.begin(), remaining.end(), best));
      value = f.eval(part);
    }
    for (int j : order) {
      ResourceSet without = part;
      without.erase(std::find(without.begin(), without.end(), j));
      if (f.eval(without) >= target) {
        part = std::move(without);
        remaining.insert(std::upper_bound(remaining.begin(), remaining.end(), j), j);
      }
    }
    parts[q] = std::move(part);
  }
  return parts;
}

std::vector<QuarteredCluster> quarter_clusters(const SantaInstance& inst,
                                               const ClusterDecomposition& dec) {
  std::vector<QuarteredCluster> out;
  for (const Cluster& cluster : dec.clusters) {
    QuarteredCluster q;
    q.scale = Rational(2) / (4 * cluster.thin_mass);
    for (const Column& col : cluster.thin_columns) {
      auto parts = split_into_quarters(*inst.valuation, col.resources, dec.t_star);
      for (auto& part : parts) {
        q.columns.push_back({col.player, std::move(part), col.x * q.scale});
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

int min_sampling_ell(int n) {
  return std::max(2, 12 * ceil_log2(static_cast<uint64_t>(std::max(n, 1))));
}

ClusterDecomposition sample_cluster_configs(
    ClusterDecomposition dec, const std::vector<QuarteredCluster>& quartered,
    int ell, uint64_t seed, const SampleOptions& options) {
  const int n = static_cast<int>(dec.split.is_fat.size());
  if (ell < min_sampling_ell(n)) {
    throw ContractError("ell must be at least 12*ceil(log2 n) = " +
                        std::to_string(min_sampling_ell(n)));
  }
  if (quartered.size() != dec.clusters.size()) {
    throw ContractError("quartered solution does not match clusters");
  }
  for (size_t h = 0; h < quartered.size(); ++h) {
    Rational mass = 0;
    for (const Column& c : quartered[h].columns) mass += c.x;
    if (mass != 2) {
      throw ContractError("quartered mass of cluster " + std::to_string(h) +
                          " is " + to_string(mass) + ", expected 2");
    }
  }
  dec.ell = ell;
  std::string worst;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<int> load(n, 0);
    for (size_t h = 0; h < quartered.size(); ++h) {
      const auto& cols = quartered[h].columns;
      std::vector<double> cumulative;
      double acc = 0;
      for (const Column& c : cols) {
        acc += to_double(c.x) / 2.0;
        cumulative.push_back(acc);
      }
      Rng rng(derive_seed(seed, static_cast<uint64_t>(attempt), h));
      auto& sampled = dec.clusters[h].sampled;
      sampled.clear();
      for (int t = 0; t < ell; ++t) {
        double u = rng.uniform_unit() * acc;
        size_t k = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                   cumulative.begin();
        if (k >= cols.size()) k = cols.size() - 1;
        sampled.push_back({cols[k].player, cols[k].resources});
        for (int j : cols[k].resources) ++load[j];
      }
    }
    int over = -1;
    for (int j = 0; j < n; ++j) {
      if (load[j] > ell && (over < 0 || load[j] > load[over])) over = j;
    }
    if (over < 0) {
      dec.sample_attempts = attempt + 1;
      return dec;
    }
    worst = "resource " + std::to_string(over) + " in " +
            std::to_string(load[over]) + " draws > ell = " + std::to_string(ell);
    logger().debug("cluster sampling retry {}: {}", attempt + 1, worst);
  }
  throw CapExceededError("cluster sampling exceeded " +
                         std::to_string(options.max_attempts) +
                         " attempts; last: " + worst);
}

}  // namespace santa
