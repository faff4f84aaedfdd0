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
#ifndef SANTA_TESTS_BRUTE_FORCE_H_
#define SANTA_TESTS_BRUTE_FORCE_H_

// Independent exhaustive references used only by tests.

#include <cstdint>
#include <functional>
#include <vector>

#include "santa/model.h"
#include "santa/submodular.h"

namespace santa::testing {

inline ResourceSet subset_of(const ResourceSet& ground, uint32_t mask) {
  ResourceSet s;
  for (size_t b = 0; b < ground.size(); ++b) {
    if (mask >> b & 1) s.push_back(ground[b]);
  }
  return s;
}

// max f(S) over S ⊆ ground with cost(S) <= budget (or < budget if strict).
inline Rational best_knapsack_value(const ValuationOracle& f,
                                    const ResourceSet& ground,
                                    const std::vector<Rational>& costs,
                                    const Rational& budget, bool strict) {
  Rational best = 0;
  for (uint32_t mask = 0; mask < (1u << ground.size()); ++mask) {
    ResourceSet s = subset_of(ground, mask);
    Rational c = 0;
    for (int j : s) c += costs[j];
    if (strict ? !(c < budget) : c > budget) continue;
    Rational v = f.eval(s);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace santa::testing

#endif  // SANTA_TESTS_BRUTE_FORCE_H_
