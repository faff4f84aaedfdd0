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
#ifndef SANTA_GENERATORS_H_
#define SANTA_GENERATORS_H_

#include <cstdint>

#include "santa/model.h"

namespace santa {

struct SantaGenParams {
  int players = 3;
  int resources = 6;
  // Probability that a resource is permitted for a player; every player
  // keeps at least one permitted resource.
  double density = 0.6;
  int max_value = 10;  // linear / budgeted values drawn from 1..max_value
  int universe = 12;   // coverage universe size
  int max_cover = 3;   // coverage elements per resource, 1..max_cover
};

SantaInstance generate_santa_linear(const SantaGenParams& p, uint64_t seed);
SantaInstance generate_santa_coverage(const SantaGenParams& p, uint64_t seed);
SantaInstance generate_santa_budgeted(const SantaGenParams& p, uint64_t seed);
SantaInstance generate_santa_matroid(const SantaGenParams& p, uint64_t seed);
// One of the four kinds, chosen by the seed.
SantaInstance generate_santa_mixed(const SantaGenParams& p, uint64_t seed);

// Linear instances with few high-value resources shared between players and
// a private block of unit-value resources per player, so that after solving
// the configuration LP most resources fall below the fat threshold.
struct ThinGenParams {
  int players = 4;
  int fat = 3;                // shared resources, value thin_per_player
  int thin_per_player = 400;  // private resources of value 1
  int fat_per_player = 2;     // permitted shared resources per player
};

// Resource ids: shared resources first, then the private blocks in player
// order.
SantaInstance generate_santa_thin(const ThinGenParams& p, uint64_t seed);

struct HypergraphGenParams {
  int groups = 3;
  int group_size = 1;
  int ell = 4;
  int resources = 12;
  int min_config = 1;
  int max_config = 4;
};

// Every group gets exactly ell consistent sets and every resource lies in
// at most ell configurations.
GroupedHypergraph generate_grouped_hypergraph(const HypergraphGenParams& p,
                                              uint64_t seed);

}  // namespace santa

#endif  // SANTA_GENERATORS_H_
