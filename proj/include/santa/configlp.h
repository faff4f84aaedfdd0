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
#ifndef SANTA_CONFIGLP_H_
#define SANTA_CONFIGLP_H_

#include <optional>
#include <vector>

#include "santa/model.h"
#include "santa/rational.h"

namespace santa {

// (1 - 1/e) / 2 in double and as the exact rational of that double.
double lp_approx_factor();
const Rational& lp_approx_factor_rational();

struct Column {
  int player = 0;
  ResourceSet resources;
  Rational x;
};

struct FractionalSolution {
  Rational target;  // T; every column has f(C) >= c*T
  std::vector<Column> columns;
};

struct DualPoint {
  std::vector<Rational> y;  // per player
  std::vector<Rational> z;  // per resource
};

struct SeparateOptions {
  // Knapsack enumeration depth; negative picks by |Γ_i| (3, 1 or 0).
  int knapsack_depth = -1;
};

int auto_knapsack_depth(size_t ground_size);

// First player (by id) with a set S ⊆ Γ_i, z(S) < y_i and f(S) >= c*T.
std::optional<Configuration> separate(const SantaInstance& inst,
                                      const DualPoint& dual, const Rational& t,
                                      const SeparateOptions& options = {});

struct ConfigLpOptions {
  int grid_steps = 40;
  // Bisection also stops once hi / lo <= 1 + tol.
  double tol = 1e-9;
  int max_rounds = 300;  // column generation rounds per target
  int knapsack_depth = -1;
};

struct ConfigLpResult {
  Rational t_star;  // c * T for the largest certified target T
  Rational t_certified;
  FractionalSolution solution;
  bool iteration_cap_hit = false;
  int lp_solves = 0;
  int columns_generated = 0;
};

ConfigLpResult solve_config_lp(const SantaInstance& inst,
                               const ConfigLpOptions& options = {});

struct LpFeasibility {
  Rational min_coverage;    // min over players of sum of x
  Rational max_congestion;  // max over resources of sum of x
  bool columns_valid = true;
};

LpFeasibility lp_feasibility(const SantaInstance& inst,
                             const FractionalSolution& sol);

// Exact LP over all configurations of value >= T. Refuses n > 12 with
// BudgetError. Returns a solution with coverage >= 1 and congestion <= 1.
std::optional<FractionalSolution> exact_config_lp_small(const SantaInstance& inst,
                                                        const Rational& t);
// Largest T for which exact_config_lp_small is feasible.
Rational exact_config_lp_value(const SantaInstance& inst);

// Max over perfect matchings of players to distinct singletons in Γ_i of
// the minimum singleton value; 0 when no such matching with positive values
// exists.
Rational bottleneck_singleton_value(const SantaInstance& inst);

}  // namespace santa

#endif  // SANTA_CONFIGLP_H_
