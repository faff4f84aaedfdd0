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
#ifndef SANTA_SAMPLING_H_
#define SANTA_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "santa/model.h"
#include "santa/rational.h"

namespace santa {

// ell^e saturated at INT64_MAX.
int64_t saturating_pow(int64_t ell, int e);

// max(ell, 300000 * ceil(log2 n)^3), saturated at INT64_MAX.
int64_t theory_ell(int64_t ell, int n);

// Class 0 for |C| < ell^4, class k >= 1 for ell^(k+3) <= |C| < ell^(k+4).
// d is the largest class present (0 when every configuration is in class 0).
struct SizeClasses {
  int64_t ell = 2;
  int d = 0;
  std::vector<int> class_of;                // per configuration
  std::vector<std::vector<int>> members;    // per class 0..d
};

SizeClasses size_classes(const GroupedHypergraph& gh, int64_t ell);

// R_0 ⊇ R_1 ⊇ ... ⊇ R_d stored as the deepest level of each resource.
struct ResourceHierarchy {
  int64_t ell = 2;
  int d = 0;
  uint64_t seed = 0;
  std::vector<int> depth;  // resource j lies in R_0..R_depth[j]

  bool contains(int level, int resource) const {
    return depth[resource] >= level;
  }
  std::vector<char> level_mask(int level) const;
  ResourceSet level(int level) const;
};

// Every resource of R_k survives into R_{k+1} with probability 1/ell.
ResourceHierarchy sample_hierarchy(int num_resources, int64_t ell, int d,
                                   uint64_t seed);

struct PropertyWitness {
  int level = 0;
  int config = 0;
  Rational value;  // the checked quantity
  Rational low;    // lower bound, or 0 when one-sided
  Rational high;
};

struct PropertyCheck {
  bool ok = true;
  int checked = 0;
  std::vector<PropertyWitness> violations;  // capped at 16
};

// |R_k ∩ C| within [1/2, 3/2] * ell^-k |C| for every k and C of class >= k.
PropertyCheck check_size_property(const GroupedHypergraph& gh,
                                  const ResourceHierarchy& hier,
                                  const SizeClasses& classes);

// sum over C' of class k of |C' ∩ C ∩ R_k| is at most
// (10 / ell^k) (|C| + sum over C' of class k of |C' ∩ C|),
// for every k and C of class >= k.
PropertyCheck check_overlap_property(const GroupedHypergraph& gh,
                                     const ResourceHierarchy& hier,
                                     const SizeClasses& classes);

enum class Tail { kUpper, kLower };

// Sum of independent variables in [0, a] with mean mu:
// upper P[X >= (1 + delta) mu] <= exp(-min(delta, delta^2) mu / (3a)),
// lower P[X <= (1 - delta) mu] <= exp(-delta^2 mu / (2a)).
double chernoff_tail(double mu, double delta, double a, Tail side);

struct HierarchyDraw {
  ResourceHierarchy hierarchy;
  int tries = 0;
  PropertyCheck size;
  PropertyCheck overlap;
};

// Redraws with derived seeds until both properties hold; CapExceededError
// with the last witnesses after max_tries.
HierarchyDraw resample_until_good(const GroupedHypergraph& gh,
                                  const SizeClasses& classes, int max_tries,
                                  uint64_t seed);

}  // namespace santa

#endif  // SANTA_SAMPLING_H_
