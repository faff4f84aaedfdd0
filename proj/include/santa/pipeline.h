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
#ifndef SANTA_PIPELINE_H_
#define SANTA_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "santa/clustering.h"
#include "santa/configlp.h"
#include "santa/lll.h"
#include "santa/model.h"
#include "santa/reconstruct.h"
#include "santa/sampling.h"

namespace santa {

enum class Profile { kTheory, kPractical };

std::string to_string(Profile profile);
// "theory" or "practical"; ContractError otherwise.
Profile parse_profile(const std::string& name);

struct PipelineOptions {
  Profile profile = Profile::kPractical;
  uint64_t seed = 1;
  // Sampling ell for Santa inputs, raised to min_sampling_ell(n); hierarchy
  // ell for hypergraph inputs, 0 picks the hypergraph's ell.
  int64_t ell = 0;
  int64_t gamma = 0;  // 0 selects default_gamma
  double slack = 1.0;
  int max_rounds = 10000;
  Rational fat_alpha = 1;
  // Fresh hierarchy, selection and reconstruction attempts.
  int max_attempts = 20;
  int hierarchy_tries = 100;
  double sigma_floor = 0.0;
  ConfigLpOptions lp;
};

struct StageTime {
  std::string stage;
  double seconds = 0;
};

struct MatchingReport {
  int64_t ell = 2;  // hierarchy ell after the profile is applied
  int d = 0;
  int64_t gamma = 1;
  int attempts = 0;         // attempts started
  int hierarchy_tries = 0;  // draws over all attempts
  int lll_failures = 0;     // attempts dropped at the round cap
  int audit_failures = 0;   // attempts dropped by the intersection audit
  int lift_failures = 0;    // attempts dropped by ResampleNeeded
  int mt_rounds = 0;
  int mt_resampled = 0;
  IntersectionAudit audit;
  Rational induction_alpha;
  bool polished = false;
  int lift_shortfalls = 0;
  int admission_halvings = 0;
};

struct MatchingRun {
  RelaxedMatching matching;  // verified against the input
  MatchingReport report;
  std::vector<StageTime> timings;
};

// Size classes, hierarchy resampling, Moser–Tardos selection, audit and
// reconstruction. A failed attempt restarts with derived seeds; after
// max_attempts the last error is rethrown as CapExceededError naming the
// stage.
MatchingRun solve_grouped_matching(const GroupedHypergraph& gh,
                                   const PipelineOptions& options);

struct SantaAssembly {
  std::vector<ResourceSet> partition;
  Rational value;             // min_i f_i(S_i) after the top-up
  Rational value_before_top_up;
  std::vector<int> representatives;  // per cluster
};

// Cluster representatives keep their matched thin resources, the other
// members take fat resources from the cluster tree, Q players take their
// recorded fat resources, and unassigned resources go one by one to the
// eligible player of least current value. wm chooses configuration
// h * ell + t for cluster h. StructuralError if a player is left without a
// role or the parts collide.
SantaAssembly assemble_santa_solution(const SantaInstance& inst,
                                      const ClusterDecomposition& dec,
                                      const RelaxedMatching& wm);

struct SantaReport {
  Rational t_star;
  Rational t_certified;
  bool lp_cap_hit = false;
  int lp_solves = 0;
  int fat = 0;
  int thin = 0;
  int clusters = 0;
  int q_players = 0;
  int64_t sampling_ell = 0;
  int sample_attempts = 0;
  std::optional<MatchingReport> matching;
  Rational grouped_alpha;
  std::optional<Rational> weighted_alpha;
  Rational value_before_top_up;
};

struct SantaRun {
  std::vector<ResourceSet> partition;
  Rational value;
  SantaReport report;
  std::vector<StageTime> timings;
};

// Configuration LP, fat/thin split, clusters, quartering, sampling,
// weighted and grouped hypergraphs, matching, lift and assembly. With
// T* = 0 or no clusters the matching stages are skipped.
SantaRun solve_santa(const SantaInstance& inst, const PipelineOptions& options);

}  // namespace santa

#endif  // SANTA_PIPELINE_H_
