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
#ifndef SANTA_CLUSTERING_H_
#define SANTA_CLUSTERING_H_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "santa/configlp.h"
#include "santa/model.h"

namespace santa {

struct FatThinSplit {
  Rational t_star;
  Rational threshold;  // T* / (100 alpha)
  ResourceSet fat;
  ResourceSet thin;
  std::vector<char> is_fat;  // per resource
};

FatThinSplit split_fat_thin(const SantaInstance& inst, const Rational& t_star,
                            const Rational& alpha);

struct Cluster {
  std::vector<int> players;
  ResourceSet fat_resources;
  std::vector<std::pair<int, int>> edges;  // (player, fat resource), a tree
  std::vector<Column> thin_columns;        // thin columns of the members
  Rational thin_mass;
  Rational quarter_scale;                  // set by quarter_clusters
  std::vector<Configuration> sampled;      // ell draws
};

struct ClusterDecomposition {
  Rational t_star;
  FatThinSplit split;
  std::vector<Cluster> clusters;
  std::vector<int> q_players;
  std::vector<int> q_resources;  // fat resource of q_players[k]
  int ell = 0;
  int sample_attempts = 0;
};

// Steps: fat columns become singleton fat edges, cycles are cancelled,
// degree one fat resources move their player into Q, branching resources
// lose a light child edge, and the remaining trees become clusters.
ClusterDecomposition build_clusters(const SantaInstance& inst,
                                    const FractionalSolution& sol,
                                    const FatThinSplit& split);

// Fat resource for every member except the representative, by rooting the
// cluster tree at it.
std::vector<std::pair<int, int>> cluster_fat_matching(const Cluster& cluster,
                                                      int representative);

// Four disjoint minimal parts of C, each of value >= T*/5.
std::array<ResourceSet, 4> split_into_quarters(const ValuationOracle& f,
                                               const ResourceSet& c,
                                               const Rational& t_star);

struct QuarteredCluster {
  std::vector<Column> columns;  // masses sum to exactly 2
  Rational scale;               // factor applied to 4 * thin mass
};

std::vector<QuarteredCluster> quarter_clusters(const SantaInstance& inst,
                                               const ClusterDecomposition& dec);

struct SampleOptions {
  int max_attempts = 100;
};

// Draws ell configurations per cluster from the quartered masses / 2 and
// retries the whole draw while some thin resource is in > ell draws.
ClusterDecomposition sample_cluster_configs(
    ClusterDecomposition dec, const std::vector<QuarteredCluster>& quartered,
    int ell, uint64_t seed, const SampleOptions& options = {});

// Lower bound on ell for sampling: 12 * ceil(log2 n), at least 2.
int min_sampling_ell(int n);

}  // namespace santa

#endif  // SANTA_CLUSTERING_H_
