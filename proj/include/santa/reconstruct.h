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
#ifndef SANTA_RECONSTRUCT_H_
#define SANTA_RECONSTRUCT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "santa/lll.h"
#include "santa/model.h"
#include "santa/sampling.h"

namespace santa {

// ceil(log2 ell), at least 1.
int64_t default_gamma(int64_t ell);

// Over-assignment bookkeeping when the gamma-good assignment over R_0 is
// made disjoint. over_assigned is O (resources used more than once),
// multiplicity[r] is a for O's r-th resource, residual is b (gamma minus a,
// floored at 0), lost counts demand not met after the disjoint re-solve and
// mu_bound is (2 / gamma) sum over selected K of |K ∩ O|.
struct DedupStats {
  ResourceSet over_assigned;
  std::vector<int> multiplicity;
  std::vector<int> residual;
  int64_t lost = 0;
  double mu_bound = 0;
};

struct ReconstructOptions {
  int64_t gamma = 0;         // 0 selects default_gamma(ell)
  double sigma_floor = 0.0;  // lift shortfall floor, see LiftOptions
  bool polish = true;
};

struct ReconstructResult {
  RelaxedMatching matching;
  std::vector<int> chosen;
  Rational induction_alpha;  // after the level induction and dedup
  bool polished = false;     // matching improved by the selection optimum
  int64_t gamma = 1;
  std::vector<double> level_sigma;  // per lifted level, d - 1 down to 0
  int lift_shortfalls = 0;
  int admission_halvings = 0;
  DedupStats dedup;
};

// Downward induction over R_d ... R_0: lift the current family's assignment
// one level, admit the selected configurations of that class with demand
// max(1, floor(|K ∩ R_j| / 2)) (halved on shortfall), then make the R_0
// assignment disjoint. Lift shortfall below the floor throws ResampleNeeded.
ReconstructResult reconstruct_matching(const GroupedHypergraph& gh,
                                       const ResourceHierarchy& hier,
                                       const SizeClasses& classes,
                                       const Selection& sel,
                                       const ReconstructOptions& options = {});

// Smallest alpha among alpha_candidates(gh) such that a disjoint assignment with floor(|C| / alpha)
// resources each exists, by binary search with max flow.
RelaxedMatching min_alpha_for_selection(const GroupedHypergraph& gh,
                                        const std::vector<int>& chosen);

// Largest chosen configuration first; every configuration claims all its
// resources, taking them from earlier (larger) claimants.
RelaxedMatching greedy_steal_matching(const GroupedHypergraph& gh,
                                      const std::vector<int>& chosen);

}  // namespace santa

#endif  // SANTA_RECONSTRUCT_H_
