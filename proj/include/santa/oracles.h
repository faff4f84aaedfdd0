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
#ifndef SANTA_ORACLES_H_
#define SANTA_ORACLES_H_

#include <cstdint>
#include <vector>

#include "santa/model.h"

namespace santa {

struct SantaOptimum {
  Rational value;
  std::vector<ResourceSet> partition;
  int64_t nodes = 0;  // search nodes visited
};

// Max over assignments of resources to eligible players of min_i f_i(S_i),
// by depth-first search with a monotone upper bound. Resources nobody may
// take stay unassigned; others always go to someone, which loses nothing
// by monotonicity. BudgetError when the product of eligible player counts
// exceeds the budget.
SantaOptimum exact_santa_opt(const SantaInstance& inst,
                             int64_t budget = 10000000);
// Same search for per-player additive values; resources go only to players
// that value them.
SantaOptimum exact_santa_opt(const LinearSantaInstance& inst,
                             int64_t budget = 10000000);

struct MinAlpha {
  Rational alpha;
  RelaxedMatching matching;
  int64_t selections = 0;  // consistent selections enumerated
};

// Minimum achieved alpha over all consistent selections, each tested by a
// binary search over alpha_candidates(gh) with a lower-bounded flow
// (demand floor(|C| / alpha) on the source arcs). BudgetError when the
// number of selections exceeds the budget.
MinAlpha exact_min_alpha(const GroupedHypergraph& gh, int64_t budget = 100000);

// Same minimum by binary search over alpha_candidates(gh), each step a
// depth-first search over groups that drops a partial selection as soon
// as its demands are infeasible. selections counts flow tests; BudgetError
// once they exceed the budget.
MinAlpha exact_min_alpha_pruned(const GroupedHypergraph& gh,
                                int64_t budget = 1000000);

}  // namespace santa

#endif  // SANTA_ORACLES_H_
