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
#ifndef SANTA_REDUCTION_H_
#define SANTA_REDUCTION_H_

#include <optional>
#include <vector>

#include "santa/clustering.h"
#include "santa/model.h"
#include "santa/submodular.h"

namespace santa {

// Players are clusters, configuration h * ell + t is dec.clusters[h].sampled[t].
// Weights are normalized marginal gains in descending singleton value order
// (ties by id), rescaled to total exactly 1 per configuration.
WeightedHypergraph build_weighted_hypergraph(const ClusterDecomposition& dec,
                                             const ValuationOracle& f,
                                             const Rational& t_star);

// Deletes weights below 1/(2n), n = h.num_resources, then floors the rest to
// powers of two. Every configuration keeps total weight at least 1/4.
WeightedHypergraph round_weights(const WeightedHypergraph& h);

// Number of players per group: ceil(log2(2n)).
int bucket_count(int num_resources);

// Player s (1-based) of group h is h * B + s - 1 and holds the resources of
// weight 2^-s (weight 1 goes to bucket 1). Configuration c * B + s - 1 is
// bucket s of weighted configuration c; empty buckets are kept.
GroupedHypergraph to_grouped(const WeightedHypergraph& h, int ell);

struct LiftedMatching {
  RelaxedMatching matching;  // alpha holds the grouped alpha
  // max over players of w(C) / w(assigned); nullopt if some player got zero.
  std::optional<Rational> weighted_alpha;
};

// Unions each group's assignment into its source configuration.
LiftedMatching lift_matching(const GroupedHypergraph& gh,
                             const RelaxedMatching& gm,
                             const WeightedHypergraph& h);

}  // namespace santa

#endif  // SANTA_REDUCTION_H_
