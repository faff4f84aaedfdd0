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
#include "santa/flow.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "santa/errors.h"

namespace santa {

MaxFlow::MaxFlow(int nodes) : adjacency_(nodes) {}

int MaxFlow::add_node() {
  adjacency_.emplace_back();
  return num_nodes() - 1;
}

int MaxFlow::add_edge(int from, int to, int64_t capacity) {
  if (from < 0 || to < 0 || from >= num_nodes() || to >= num_nodes()) {
    throw ContractError("edge endpoint out of range");
  }
  if (capacity < 0) throw ContractError("negative capacity");
  const int id = static_cast<int>(edges_.size() / 2);
  edges_.push_back({to, capacity, 0});
  edges_.push_back({from, 0, 0});
  adjacency_[from].push_back(2 * id);
  adjacency_[to].push_back(2 * id + 1);
  return id;
}

void MaxFlow::set_capacity(int edge, int64_t capacity) {
  if (capacity < edges_[2 * edge].flow) {
    throw ContractError("capacity below current flow");
  }
  edges_[2 * edge].capacity = capacity;
}

bool MaxFlow::build_levels(int s, int t) {
  level_.assign(num_nodes(), -1);
  std::deque<int> queue{s};
  level_[s] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int a : adjacency_[u]) {
      const Arc& arc = edges_[a];
      if (level_[arc.to] < 0 && arc.capacity - arc.flow > 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[t] >= 0;
}

int64_t MaxFlow::push(int u, int t, int64_t limit) {
  if (u == t) return limit;
  for (size_t& k = next_[u]; k < adjacency_[u].size(); ++k) {
    int a = adjacency_[u][k];
    Arc& arc = edges_[a];
    if (level_[arc.to] != level_[u] + 1 || arc.capacity - arc.flow <= 0) {
      continue;
    }
    int64_t got = push(arc.to, t, std::min(limit, arc.capacity - arc.flow));
    if (got > 0) {
      arc.flow += got;
      edges_[a ^ 1].flow -= got;
      return got;
    }
  }
  return 0;
}

int64_t MaxFlow::solve(int s, int t) {
  // Reverse arcs carry capacity 0 and flow -f, so residual = f.
  while (build_levels(s, t)) {
    next_.assign(num_nodes(), 0);
    while (int64_t f = push(s, t, std::numeric_limits<int64_t>::max())) {
      total_ += f;
    }
  }
  int64_t out = 0;
  for (int a : adjacency_[s]) out += edges_[a].flow;
  total_ = out;
  return out;
}

std::vector<char> MaxFlow::source_side(int s) const {
  std::vector<char> seen(num_nodes(), 0);
  std::deque<int> queue{s};
  seen[s] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int a : adjacency_[u]) {
      const Arc& arc = edges_[a];
      if (!seen[arc.to] && arc.capacity - arc.flow > 0) {
        seen[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

std::vector<int> bipartite_matching(int left, int right,
                                    const std::vector<std::vector<int>>& adjacency) {
  MaxFlow g(left + right + 2);
  const int s = left + right, t = s + 1;
  std::vector<std::vector<std::pair<int, int>>> arcs(left);
  for (int u = 0; u < left; ++u) {
    g.add_edge(s, u, 1);
    for (int v : adjacency[u]) {
      arcs[u].push_back({g.add_edge(u, left + v, 1), v});
    }
  }
  for (int v = 0; v < right; ++v) g.add_edge(left + v, t, 1);
  g.solve(s, t);
  std::vector<int> match(left, -1);
  for (int u = 0; u < left; ++u) {
    for (auto [e, v] : arcs[u]) {
      if (g.flow(e) > 0) match[u] = v;
    }
  }
  return match;
}

std::optional<std::vector<int64_t>> feasible_bounded_flow(
    int nodes, const std::vector<BoundedArc>& arcs, int s, int t) {
  MaxFlow g(nodes + 2);
  const int ss = nodes, tt = nodes + 1;
  std::vector<int64_t> excess(nodes, 0);
  std::vector<int> ids;
  ids.reserve(arcs.size());
  for (const BoundedArc& a : arcs) {
    if (a.lower < 0 || a.upper < a.lower) {
      throw ContractError("invalid arc bounds");
    }
    ids.push_back(g.add_edge(a.from, a.to, a.upper - a.lower));
    excess[a.to] += a.lower;
    excess[a.from] -= a.lower;
  }
  g.add_edge(t, s, std::numeric_limits<int64_t>::max() / 4);
  int64_t need = 0;
  for (int v = 0; v < nodes; ++v) {
    if (excess[v] > 0) {
      g.add_edge(ss, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      g.add_edge(v, tt, -excess[v]);
    }
  }
  if (g.solve(ss, tt) < need) return std::nullopt;
  std::vector<int64_t> flows(arcs.size());
  for (size_t k = 0; k < arcs.size(); ++k) {
    flows[k] = arcs[k].lower + g.flow(ids[k]);
  }
  return flows;
}

AssignmentNetwork build_network(const std::vector<ResourceSet>& family,
                                const std::vector<char>& in_subset,
                                std::vector<int64_t> alpha, int64_t gamma) {
  AssignmentNetwork net;
  net.alpha = std::move(alpha);
  net.gamma = gamma;
  net.configs.reserve(family.size());
  for (const ResourceSet& c : family) {
    ResourceSet restricted;
    for (int j : c) {
      if (j >= 0 && static_cast<size_t>(j) < in_subset.size() && in_subset[j]) {
        restricted.push_back(j);
      }
    }
    net.configs.push_back(std::move(restricted));
  }
  return net;
}

NetworkLayout network_layout(const AssignmentNetwork& net) {
  NetworkLayout layout;
  layout.num_configs = static_cast<int>(net.configs.size());
  for (const ResourceSet& c : net.configs) {
    layout.resources.insert(layout.resources.end(), c.begin(), c.end());
  }
  layout.resources = normalized(std::move(layout.resources));
  return layout;
}

namespace {

int resource_node(const NetworkLayout& layout, int j) {
  auto it = std::lower_bound(layout.resources.begin(), layout.resources.end(), j);
  return 2 + layout.num_configs +
         static_cast<int>(it - layout.resources.begin());
}

}  // namespace

FlowAssignment max_flow(const AssignmentNetwork& net) {
  if (net.alpha.size() != net.configs.size()) {
    throw ContractError("alpha size does not match family");
  }
  const NetworkLayout layout = network_layout(net);
  const int nodes = 2 + layout.num_configs +
                    static_cast<int>(layout.resources.size());
  MaxFlow g(nodes);
  std::vector<std::vector<std::pair<int, int>>> middle(net.configs.size());
  for (int c = 0; c < layout.num_configs; ++c) {
    if (net.alpha[c] < 0) throw ContractError("negative demand");
    g.add_edge(0, 2 + c, net.alpha[c]);
    for (int j : net.configs[c]) {
      middle[c].push_back({g.add_edge(2 + c, resource_node(layout, j), 1), j});
    }
  }
  for (size_t r = 0; r < layout.resources.size(); ++r) {
    g.add_edge(2 + layout.num_configs + static_cast<int>(r), 1, net.gamma);
  }
  FlowAssignment out;
  out.value = g.solve(0, 1);
  out.per_config.resize(net.configs.size());
  for (size_t c = 0; c < net.configs.size(); ++c) {
    for (auto [e, j] : middle[c]) {
      if (g.flow(e) > 0) out.per_config[c].push_back(j);
    }
  }
  return out;
}

int64_t cut_value(const AssignmentNetwork& net, const std::vector<char>& side) {
  const NetworkLayout layout = network_layout(net);
  int64_t value = 0;
  for (int c = 0; c < layout.num_configs; ++c) {
    const bool in_c = side[2 + c];
    if (side[0] && !in_c) value += net.alpha[c];
    if (!in_c) continue;
    for (int j : net.configs[c]) {
      if (!side[resource_node(layout, j)]) value += 1;
    }
  }
  for (size_t r = 0; r < layout.resources.size(); ++r) {
    if (side[2 + layout.num_configs + r] && !side[1]) value += net.gamma;
  }
  return value;
}

std::vector<int64_t> scaled_demand(const std::vector<int64_t>& alpha,
                                   const Rational& epsilon) {
  std::vector<int64_t> out(alpha.size());
  for (size_t c = 0; c < alpha.size(); ++c) {
    out[c] = std::max<int64_t>(
        0, floor_int64((Rational(1) - epsilon) * Rational(alpha[c])));
  }
  return out;
}

namespace {

std::optional<GoodAssignment> saturating_assignment(
    const std::vector<ResourceSet>& family, const std::vector<char>& in_subset,
    const std::vector<int64_t>& demand, int64_t gamma) {
  AssignmentNetwork net = build_network(family, in_subset, demand, gamma);
  FlowAssignment flow = max_flow(net);
  int64_t need = 0;
  for (int64_t d : demand) need += d;
  if (flow.value < need) return std::nullopt;
  GoodAssignment out;
  out.demand = demand;
  out.per_config = std::move(flow.per_config);
  int top = -1;
  for (const ResourceSet& s : out.per_config) {
    if (!s.empty()) top = std::max(top, s.back());
  }
  out.multiplicity.assign(top + 1, 0);
  for (const ResourceSet& s : out.per_config) {
    for (int j : s) ++out.multiplicity[j];
  }
  return out;
}

}  // namespace

std::optional<GoodAssignment> good_assignment(
    const std::vector<ResourceSet>& family, const std::vector<char>& in_subset,
    const std::vector<int64_t>& alpha, int64_t gamma, const Rational& epsilon) {
  if (alpha.size() != family.size()) {
    throw ContractError("alpha size does not match family");
  }
  return saturating_assignment(family, in_subset, scaled_demand(alpha, epsilon),
                               gamma);
}

bool good_assignment_exists_by_subfamilies(
    const std::vector<ResourceSet>& family, const std::vector<char>& in_subset,
    const std::vector<int64_t>& alpha, int64_t gamma, const Rational& epsilon) {
  const size_t f = family.size();
  if (f > 6) throw BudgetError("subfamily check limited to 6 configurations");
  const std::vector<int64_t> demand = scaled_demand(alpha, epsilon);
  for (uint32_t mask = 1; mask < (1u << f); ++mask) {
    std::vector<ResourceSet> sub;
    std::vector<int64_t> sub_alpha;
    int64_t need = 0;
    for (size_t c = 0; c < f; ++c) {
      if (!(mask >> c & 1)) continue;
      sub.push_back(family[c]);
      sub_alpha.push_back(alpha[c]);
      need += demand[c];
    }
    if (max_flow(build_network(sub, in_subset, sub_alpha, gamma)).value < need) {
      return false;
    }
  }
  return true;
}

double flow_lift_ratio(const std::vector<ResourceSet>& family,
                       const std::vector<char>& level_k,
                       const std::vector<char>& level_k1,
                       const std::vector<int64_t>& alpha, int64_t ell,
                       int64_t gamma) {
  std::vector<int64_t> big(alpha.size());
  for (size_t c = 0; c < alpha.size(); ++c) big[c] = ell * alpha[c];
  const int64_t upper = max_flow(build_network(family, level_k, big, gamma)).value;
  const int64_t lower =
      max_flow(build_network(family, level_k1, alpha, gamma)).value;
  if (lower == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(upper) / static_cast<double>(lower);
}

LiftResult lift_level(const std::vector<ResourceSet>& family,
                      const std::vector<char>& level_k,
                      const std::vector<int64_t>& alpha, int64_t ell,
                      int64_t gamma, int num_resources,
                      const LiftOptions& options) {
  if (alpha.size() != family.size()) {
    throw ContractError("alpha size does not match family");
  }
  if (gamma < 1 || gamma > std::max<int64_t>(ell, 1)) {
    throw ContractError("gamma must lie in [1, ell]");
  }
  LiftResult result;
  std::vector<int64_t> full(alpha.size());
  for (size_t c = 0; c < alpha.size(); ++c) {
    int64_t available = 0;
    for (int j : family[c]) {
      if (j >= 0 && static_cast<size_t>(j) < level_k.size() && level_k[j]) {
        ++available;
      }
    }
    full[c] = std::min(ell * alpha[c], available);
  }
  // The exact scaled demand first, then the (1 - 1/ln n) demand.
  if (auto a = saturating_assignment(family, level_k, full, gamma)) {
    result.requested = full;
    result.assignment = std::move(*a);
    return result;
  }
  const double ln_n = std::log(std::max(num_resources, 1));
  const Rational epsilon =
      ln_n > 1 ? rational_from_double(1.0 / ln_n) : Rational(1);
  result.requested = scaled_demand(full, epsilon);
  if (auto a = saturating_assignment(family, level_k, result.requested, gamma)) {
    result.assignment = std::move(*a);
    return result;
  }
  result.shortfall = true;
  double lo = 0.0, hi = 1.0;
  std::optional<GoodAssignment> best;
  for (int step = 0; step < options.search_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    std::vector<int64_t> demand(full.size());
    for (size_t c = 0; c < full.size(); ++c) {
      demand[c] = static_cast<int64_t>(
          std::floor(mid * static_cast<double>(result.requested[c])));
    }
    if (auto a = saturating_assignment(family, level_k, demand, gamma)) {
      lo = mid;
      best = std::move(a);
    } else {
      hi = mid;
    }
  }
  // Report the realized scale, not the search bound.
  double realized = 1.0;
  for (size_t c = 0; best && c < full.size(); ++c) {
    if (result.requested[c] > 0) {
      realized = std::min(realized, static_cast<double>(best->demand[c]) /
                                        static_cast<double>(result.requested[c]));
    }
  }
  if (!best || realized < options.sigma_floor) {
    throw ResampleNeeded("lift shortfall: sigma " + std::to_string(realized) +
                         " below floor " + std::to_string(options.sigma_floor));
  }
  result.sigma = realized;
  result.assignment = std::move(*best);
  return result;
}

}  // namespace santa
