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
#ifndef SANTA_FLOW_H_
#define SANTA_FLOW_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "santa/model.h"
#include "santa/rational.h"

namespace santa {

// Dinic max flow with integral capacities. Capacities may be raised after a
// solve; a further solve continues from the current flow.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes = 0);

  int add_node();
  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  // Returns the edge id.
  int add_edge(int from, int to, int64_t capacity);
  // Augments to a maximum flow; returns the total flow out of s.
  int64_t solve(int s, int t);
  int64_t flow(int edge) const { return edges_[2 * edge].flow; }
  int64_t capacity(int edge) const { return edges_[2 * edge].capacity; }
  // New capacity must be >= the current flow on the edge.
  void set_capacity(int edge, int64_t capacity);
  // Nodes reachable from s in the residual graph (min cut source side).
  std::vector<char> source_side(int s) const;

 private:
  struct Arc {
    int to;
    int64_t capacity;
    int64_t flow;
  };
  bool build_levels(int s, int t);
  int64_t push(int u, int t, int64_t limit);

  std::vector<Arc> edges_;  // arc 2k is edge k, arc 2k+1 its reverse
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<size_t> next_;
  int64_t total_ = 0;
};

// Maximum bipartite matching; adjacency[u] lists right vertices of u.
// Returns the matched right vertex per left vertex, or -1.
std::vector<int> bipartite_matching(int left, int right,
                                    const std::vector<std::vector<int>>& adjacency);

struct BoundedArc {
  int from = 0;
  int to = 0;
  int64_t lower = 0;
  int64_t upper = 0;
};

// Some s-t flow meeting every lower bound, via the circulation reduction.
// Returns per-arc flows, or nullopt when infeasible.
std::optional<std::vector<int64_t>> feasible_bounded_flow(
    int nodes, const std::vector<BoundedArc>& arcs, int s, int t);

// N(F, R', alpha, gamma): source -> config (alpha), config -> resource (1)
// for resources of the config inside R', resource -> sink (gamma).
struct AssignmentNetwork {
  std::vector<ResourceSet> configs;  // already restricted to R'
  std::vector<int64_t> alpha;
  int64_t gamma = 1;
};

AssignmentNetwork build_network(const std::vector<ResourceSet>& family,
                                const std::vector<char>& in_subset,
                                std::vector<int64_t> alpha, int64_t gamma);

struct FlowAssignment {
  int64_t value = 0;
  std::vector<ResourceSet> per_config;
};

FlowAssignment max_flow(const AssignmentNetwork& net);

// Value of the cut given by a source side over the network nodes.
// Layout: 0 = s, 1 = t, 2.. configs, then distinct resources in id order.
struct NetworkLayout {
  int num_configs = 0;
  std::vector<int> resources;  // node 2 + num_configs + r is resources[r]
};
NetworkLayout network_layout(const AssignmentNetwork& net);
int64_t cut_value(const AssignmentNetwork& net, const std::vector<char>& side);

struct GoodAssignment {
  std::vector<ResourceSet> per_config;
  std::vector<int64_t> demand;  // alpha'(C)
  std::vector<int> multiplicity;  // per resource id, sized to max id + 1
};

std::vector<int64_t> scaled_demand(const std::vector<int64_t>& alpha,
                                   const Rational& epsilon);

// An (alpha', gamma)-good assignment of R' to F with
// alpha'(C) = floor((1 - epsilon) alpha(C)), or nullopt.
std::optional<GoodAssignment> good_assignment(
    const std::vector<ResourceSet>& family, const std::vector<char>& in_subset,
    const std::vector<int64_t>& alpha, int64_t gamma, const Rational& epsilon);

// Subfamily form: every F' ⊆ F has max flow in N(F', R', alpha, gamma) at
// least sum of alpha'(C) over F'. |F| <= 6.
bool good_assignment_exists_by_subfamilies(
    const std::vector<ResourceSet>& family, const std::vector<char>& in_subset,
    const std::vector<int64_t>& alpha, int64_t gamma, const Rational& epsilon);

// Flow ratio maxflow(N(F, R_k, ell*alpha, gamma)) / maxflow(N(F, R_k+1,
// alpha, gamma)); +inf when the denominator is zero.
double flow_lift_ratio(const std::vector<ResourceSet>& family,
                       const std::vector<char>& level_k,
                       const std::vector<char>& level_k1,
                       const std::vector<int64_t>& alpha, int64_t ell,
                       int64_t gamma);

struct LiftOptions {
  // Minimum acceptable uniform scale sigma before ResampleNeeded.
  double sigma_floor = 0.0;
  // Binary search steps over sigma.
  int search_steps = 30;
};

struct LiftResult {
  GoodAssignment assignment;
  std::vector<int64_t> requested;  // floor((1 - eps) * ell * alpha)
  double sigma = 1.0;              // 1 when no shortfall
  bool shortfall = false;
};

// Lifts an assignment over R_{k+1} to R_k by solving the good-assignment
// problem on (F, R_k, ell*alpha, gamma) with epsilon = 1/ln n (clamped to
// [0, 1]). On shortfall, binary searches the largest sigma in (0, 1] with a
// (floor(sigma*ell*alpha), gamma)-good assignment.
LiftResult lift_level(const std::vector<ResourceSet>& family,
                      const std::vector<char>& level_k,
                      const std::vector<int64_t>& alpha, int64_t ell,
                      int64_t gamma, int num_resources,
                      const LiftOptions& options = {});

}  // namespace santa

#endif  // SANTA_FLOW_H_
