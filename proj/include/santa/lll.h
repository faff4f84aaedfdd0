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
#ifndef SANTA_LLL_H_
#define SANTA_LLL_H_

#include <cstdint>
#include <vector>

#include "santa/model.h"
#include "santa/sampling.h"

namespace santa {

// One consistent set index per group.
struct Selection {
  std::vector<int> set_of_group;
  int rounds = 0;      // resampling rounds performed
  int resampled = 0;   // group resamples in total
};

// Selected configuration of every player.
std::vector<int> selected_configs(const GroupedHypergraph& gh,
                                  const Selection& sel);

// Probability that configuration c is selected when its group picks a
// consistent set uniformly.
std::vector<Rational> selection_probability(const GroupedHypergraph& gh);

// E[X_C^(h)] = sum over C' of class h of P[C' selected] |C' ∩ C ∩ R_h|.
Rational expected_x(const GroupedHypergraph& gh, const ResourceHierarchy& hier,
                    const SizeClasses& classes, int config, int h);

struct BadEvent {
  int config = 0;  // C, of class k
  int h = 0;       // 0 <= h <= k
  int64_t size = 0;  // |C ∩ R_h|
  Rational expected;
  double threshold = 0;
  std::vector<int> groups;  // variable set, sorted
};

// Threshold E + slack * 63 |C ∩ R_h| ln(ell) for k - 5 <= h <= k and
// E + slack * 135 |C ∩ R_h| ln(ell) / ell below; natural logarithm.
double event_threshold(const Rational& expected, int64_t size, int k, int h,
                       int64_t ell, double slack);

// Events with at least one class-h configuration meeting C ∩ R_h, ordered
// by (config, h).
std::vector<BadEvent> build_bad_events(const GroupedHypergraph& gh,
                                       const ResourceHierarchy& hier,
                                       const SizeClasses& classes,
                                       double slack);

// X_C^(h) for the current selection.
int64_t event_value(const GroupedHypergraph& gh, const ResourceHierarchy& hier,
                    const SizeClasses& classes, const std::vector<int>& chosen,
                    const BadEvent& event);

// Indices of events whose value reaches the threshold.
std::vector<int> evaluate_bad_events(const GroupedHypergraph& gh,
                                     const ResourceHierarchy& hier,
                                     const SizeClasses& classes,
                                     const Selection& sel,
                                     const std::vector<BadEvent>& events);

// Indices of events sharing a variable group with events[index].
std::vector<int> event_dependencies(const std::vector<BadEvent>& events,
                                    int index);

// Log of the weight exp(-size / ell^9 - 18 ln ell); at most -18 ln ell.
double lll_event_log_weight(int64_t size, int64_t ell);

struct LllOptions {
  int max_rounds = 10000;
  double slack = 1.0;
};

// Uniform initial selection, then resamples every group of the first fired
// event until none fires. CapExceededError lists surviving events.
Selection select_moser_tardos(const GroupedHypergraph& gh,
                              const ResourceHierarchy& hier,
                              const SizeClasses& classes, uint64_t seed,
                              const LllOptions& options = {});

struct IntersectionAudit {
  bool ok = true;          // the per (C, j) inequality
  bool claim_ok = true;    // selected C: total at most twice the constant
  int checks = 0;
  int violations = 0;
  double worst_ratio = 0;  // max lhs / rhs
  double slack = 1.0;
};

// For every C of class k and 0 <= j <= k:
//   sum_{j<=h<=k} ell^h X_C^(h) <= sum_{j<=h<=k} ell^h E[X_C^(h)]
//                                  + 1000 s ((d + ell) / ell) ln(ell) |C|,
// s = max(1, slack). For selected C also
//   sum_{0<=h<=k} ell^h X_C^(h) <= 2000 s ((d + ell) / ell) ln(ell) |C|.
IntersectionAudit selection_intersection_bound(const GroupedHypergraph& gh,
                                               const ResourceHierarchy& hier,
                                               const SizeClasses& classes,
                                               const Selection& sel,
                                               double slack = 1.0);

}  // namespace santa

#endif  // SANTA_LLL_H_
