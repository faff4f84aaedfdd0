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
#ifndef SANTA_SUBMODULAR_H_
#define SANTA_SUBMODULAR_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "santa/rational.h"

namespace santa {

using ResourceSet = std::vector<int>;  // sorted, distinct ids

enum class ValuationKind { kLinear, kCoverage, kBudgetedAdditive, kMatroidRank };

std::string to_string(ValuationKind kind);

// Value oracle for a set function over the ground set {0, ..., size-1}.
// Built-in kinds are monotone submodular with f(empty) = 0; subclasses used
// in tests may violate this, which validate_instance reports.
class ValuationOracle {
 public:
  virtual ~ValuationOracle() = default;

  virtual ValuationKind kind() const = 0;
  virtual int ground_size() const = 0;
  // f(S) for distinct ids in S. Unknown ids throw StructuralError.
  Rational eval(std::span<const int> set) const;

 protected:
  virtual Rational eval_checked(std::span<const int> set) const = 0;
};

using OracleHandle = std::shared_ptr<const ValuationOracle>;

// f(S) = sum of values.
class LinearOracle : public ValuationOracle {
 public:
  explicit LinearOracle(std::vector<Rational> values);
  ValuationKind kind() const override { return ValuationKind::kLinear; }
  int ground_size() const override { return static_cast<int>(values_.size()); }
  const std::vector<Rational>& values() const { return values_; }

 protected:
  Rational eval_checked(std::span<const int> set) const override;

 private:
  std::vector<Rational> values_;
};

// f(S) = weight of the union of the universe subsets owned by S. Empty
// weights mean unit weight per universe element.
class CoverageOracle : public ValuationOracle {
 public:
  CoverageOracle(int universe, std::vector<std::vector<int>> sets,
                 std::vector<Rational> weights = {});
  ValuationKind kind() const override { return ValuationKind::kCoverage; }
  int ground_size() const override { return static_cast<int>(sets_.size()); }
  int universe() const { return universe_; }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const std::vector<Rational>& weights() const { return weights_; }

 protected:
  Rational eval_checked(std::span<const int> set) const override;

 private:
  int universe_;
  std::vector<std::vector<int>> sets_;
  std::vector<Rational> weights_;
};

// f(S) = min(cap, sum of values).
class BudgetedAdditiveOracle : public ValuationOracle {
 public:
  BudgetedAdditiveOracle(std::vector<Rational> values, Rational cap);
  ValuationKind kind() const override {
    return ValuationKind::kBudgetedAdditive;
  }
  int ground_size() const override { return static_cast<int>(values_.size()); }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& cap() const { return cap_; }

 protected:
  Rational eval_checked(std::span<const int> set) const override;

 private:
  std::vector<Rational> values_;
  Rational cap_;
};

// Rank of a partition matroid: sum over parts of min(capacity, |S ∩ part|).
class MatroidRankOracle : public ValuationOracle {
 public:
  MatroidRankOracle(std::vector<int> part_of, std::vector<int> capacity);
  ValuationKind kind() const override { return ValuationKind::kMatroidRank; }
  int ground_size() const override {
    return static_cast<int>(part_of_.size());
  }
  const std::vector<int>& part_of() const { return part_of_; }
  const std::vector<int>& capacity() const { return capacity_; }

 protected:
  Rational eval_checked(std::span<const int> set) const override;

 private:
  std::vector<int> part_of_;
  std::vector<int> capacity_;
};

Rational eval(const ValuationOracle& f, std::span<const int> set);

// f(S + j) - f(S). Throws ContractError if j is in S.
Rational marginal(const ValuationOracle& f, int j, std::span<const int> set);

struct KnapsackOptions {
  // Seeds of this size get a greedy completion; smaller sets are candidates
  // on their own. 3 gives the (1 - 1/e) guarantee.
  int enumeration_depth = 3;
};

// Maximizes f(S) subject to sum of costs[j] over S <= budget, over S inside
// ground. costs is indexed by element id and must cover the ground set.
ResourceSet knapsack_max(const ValuationOracle& f, const ResourceSet& ground,
                         std::span<const Rational> costs,
                         const Rational& budget,
                         const KnapsackOptions& options = {});
ResourceSet knapsack_max(const ValuationOracle& f,
                         std::span<const Rational> costs,
                         const Rational& budget,
                         const KnapsackOptions& options = {});

// Same objective with the strict constraint sum < budget. Elements with
// cost >= budget are dropped first; zero cost elements are kept.
ResourceSet strict_knapsack_max(const ValuationOracle& f,
                                const ResourceSet& ground,
                                std::span<const Rational> costs,
                                const Rational& budget,
                                const KnapsackOptions& options = {});
ResourceSet strict_knapsack_max(const ValuationOracle& f,
                                std::span<const Rational> costs,
                                const Rational& budget,
                                const KnapsackOptions& options = {});

ResourceSet full_ground(int size);

}  // namespace santa

#endif  // SANTA_SUBMODULAR_H_
