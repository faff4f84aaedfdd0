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
#include "santa/pipeline.h"

#include <algorithm>
#include <chrono>

#include "santa/errors.h"
#include "santa/log.h"
#include "santa/reduction.h"
#include "santa/rng.h"

namespace santa {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTime>& out) : out_(out) {}

  void mark(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back(
        {stage, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTime>& out_;
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

// Each unassigned resource goes to the eligible player of least value.
void top_up(const SantaInstance& inst, std::vector<ResourceSet>& partition) {
  std::vector<char> owned(inst.n, 0);
  for (const auto& s : partition) {
    for (int j : s) owned[j] = 1;
  }
  std::vector<std::vector<int>> eligible(inst.n);
  for (int i = 0; i < inst.m; ++i) {
    for (int j : inst.gamma[i]) eligible[j].push_back(i);
  }
  std::vector<Rational> value(inst.m);
  for (int i = 0; i < inst.m; ++i) value[i] = inst.utility(i, partition[i]);
  for (int j = 0; j < inst.n; ++j) {
    if (owned[j] || eligible[j].empty()) continue;
    int best = eligible[j].front();
    for (int i : eligible[j]) {
      if (value[i] < value[best]) best = i;
    }
    partition[best].push_back(j);
    partition[best] = normalized(std::move(partition[best]));
    value[best] = inst.utility(best, partition[best]);
  }
}

}  // namespace

std::string to_string(Profile profile) {
  return profile == Profile::kTheory ? "theory" : "practical";
}

Profile parse_profile(const std::string& name) {
  if (name == "theory") return Profile::kTheory;
  if (name == "practical") return Profile::kPractical;
  throw ContractError("unknown profile '" + name + "'");
}

MatchingRun solve_grouped_matching(const GroupedHypergraph& gh,
                                   const PipelineOptions& options) {
  if (auto v = validate_hypergraph(gh); !v.empty()) {
    throw StructuralError("invalid hypergraph: " + v.front());
  }
  MatchingRun run;
  StageClock clock(run.timings);
  MatchingReport& rep = run.report;
  int64_t ell = std::max<int64_t>(2, options.ell > 0 ? options.ell : gh.ell);
  if (options.profile == Profile::kTheory) {
    ell = theory_ell(ell, gh.num_resources);
  }
  rep.ell = ell;
  const SizeClasses classes = size_classes(gh, ell);
  rep.d = classes.d;
  rep.gamma = options.gamma > 0 ? options.gamma : default_gamma(ell);
  if (options.slack != 1.0) {
    logger().info("event thresholds relaxed by slack {}", options.slack);
  }
  clock.mark("size_classes");

  ReconstructOptions ro;
  ro.gamma = rep.gamma;
  ro.sigma_floor = options.sigma_floor;
  std::string last_stage = "none";
  std::string last_error;
  for (int a = 0; a < options.max_attempts; ++a) {
    ++rep.attempts;
    HierarchyDraw draw;
    try {
      draw = resample_until_good(gh, classes, options.hierarchy_tries,
                                 derive_seed(options.seed, 1, a));
    } catch (const CapExceededError& e) {
      rep.hierarchy_tries += options.hierarchy_tries;
      last_stage = "hierarchy";
      last_error = e.what();
      continue;
    }
    rep.hierarchy_tries += draw.tries;
    clock.mark("hierarchy");

    Selection sel;
    try {
      LllOptions lo;
      lo.max_rounds = options.max_rounds;
      lo.slack = options.slack;
      sel = select_moser_tardos(gh, draw.hierarchy, classes,
                                derive_seed(options.seed, 2, a), lo);
    } catch (const CapExceededError& e) {
      ++rep.lll_failures;
      last_stage = "moser_tardos";
      last_error = e.what();
      continue;
    }
    rep.mt_rounds += sel.rounds;
    rep.mt_resampled += sel.resampled;
    clock.mark("moser_tardos");

    IntersectionAudit audit = selection_intersection_bound(
        gh, draw.hierarchy, classes, sel, options.slack);
    if (!audit.ok) {
      ++rep.audit_failures;
      last_stage = "intersection_audit";
      last_error = std::to_string(audit.violations) + " violations";
      continue;
    }
    rep.audit = audit;
    clock.mark("audit");

    ReconstructResult rec;
    try {
      rec = reconstruct_matching(gh, draw.hierarchy, classes, sel, ro);
    } catch (const ResampleNeeded& e) {
      ++rep.lift_failures;
      last_stage = "reconstruct";
      last_error = e.what();
      continue;
    }
    clock.mark("reconstruct");
    VerifyResult v = verify_relaxed_matching(gh, rec.matching);
    if (!v.ok) {
      throw StructuralError("reconstruct: invalid matching: " + v.violation);
    }
    rep.induction_alpha = rec.induction_alpha;
    rep.polished = rec.polished;
    rep.lift_shortfalls = rec.lift_shortfalls;
    rep.admission_halvings = rec.admission_halvings;
    run.matching = std::move(rec.matching);
    return run;
  }
  throw CapExceededError("stage " + last_stage + " failed " +
                         std::to_string(options.max_attempts) +
                         " attempts: " + last_error);
}

SantaAssembly assemble_santa_solution(const SantaInstance& inst,
                                      const ClusterDecomposition& dec,
                                      const RelaxedMatching& wm) {
  SantaAssembly out;
  out.partition.assign(inst.m, {});
  std::vector<char> has_role(inst.m, 0);
  std::vector<int> owner(inst.n, -1);
  auto give = [&](int player, int j) {
    if (owner[j] >= 0) {
      throw StructuralError("assemble: resource " + std::to_string(j) +
                            " given to players " + std::to_string(owner[j]) +
                            " and " + std::to_string(player));
    }
    owner[j] = player;
    out.partition[player].push_back(j);
  };
  auto claim = [&](int player) {
    if (has_role[player]) {
      throw StructuralError("assemble: player " + std::to_string(player) +
                            " has two roles");
    }
    has_role[player] = 1;
  };
  if (!dec.clusters.empty() &&
      wm.chosen.size() != dec.clusters.size()) {
    throw ContractError("assemble: matching does not cover the clusters");
  }
  for (size_t h = 0; h < dec.clusters.size(); ++h) {
    const Cluster& cl = dec.clusters[h];
    const int64_t t = wm.chosen[h] - static_cast<int64_t>(h) * dec.ell;
    if (t < 0 || t >= static_cast<int64_t>(cl.sampled.size())) {
      throw ContractError("assemble: cluster " + std::to_string(h) +
                          " chose a configuration of another cluster");
    }
    const int rep = cl.sampled[t].player;
    out.representatives.push_back(rep);
    claim(rep);
    for (int j : wm.assigned[h]) give(rep, j);
    for (const auto& [player, j] : cluster_fat_matching(cl, rep)) {
      claim(player);
      give(player, j);
    }
  }
  for (size_t k = 0; k < dec.q_players.size(); ++k) {
    claim(dec.q_players[k]);
    give(dec.q_players[k], dec.q_resources[k]);
  }
  for (int i = 0; i < inst.m; ++i) {
    if (!has_role[i]) {
      throw StructuralError("assemble: player " + std::to_string(i) +
                            " is in no cluster and not in Q");
    }
  }
  for (auto& s : out.partition) s = normalized(std::move(s));
  PartitionCheck before = check_partition(inst, out.partition);
  if (!before.ok) throw StructuralError("assemble: " + before.violation);
  out.value_before_top_up = before.min_value;
  top_up(inst, out.partition);
  out.value = check_partition(inst, out.partition).min_value;
  return out;
}

SantaRun solve_santa(const SantaInstance& inst,
                     const PipelineOptions& options) {
  if (auto v = validate_instance(inst); !v.empty()) {
    throw StructuralError("invalid instance: " + v.front());
  }
  SantaRun run;
  StageClock clock(run.timings);
  SantaReport& rep = run.report;
  const ConfigLpResult lp = solve_config_lp(inst, options.lp);
  rep.t_star = lp.t_star;
  rep.t_certified = lp.t_certified;
  rep.lp_cap_hit = lp.iteration_cap_hit;
  rep.lp_solves = lp.lp_solves;
  clock.mark("config_lp");

  if (lp.t_star <= 0 || inst.m == 0) {
    run.partition.assign(inst.m, {});
    top_up(inst, run.partition);
    run.value = inst.m > 0 ? check_partition(inst, run.partition).min_value
                           : Rational(0);
    rep.value_before_top_up = 0;
    clock.mark("assemble");
    return run;
  }

  const FatThinSplit split = split_fat_thin(inst, lp.t_star, options.fat_alpha);
  ClusterDecomposition dec = build_clusters(inst, lp.solution, split);
  rep.fat = static_cast<int>(split.fat.size());
  rep.thin = static_cast<int>(split.thin.size());
  rep.clusters = static_cast<int>(dec.clusters.size());
  rep.q_players = static_cast<int>(dec.q_players.size());
  clock.mark("clusters");

  RelaxedMatching wm;
  if (!dec.clusters.empty()) {
    const int floor_ell = min_sampling_ell(inst.n);
    const int64_t ell = std::max<int64_t>(options.ell, floor_ell);
    rep.sampling_ell = ell;
    const auto quartered = quarter_clusters(inst, dec);
    dec = sample_cluster_configs(std::move(dec), quartered,
                                 static_cast<int>(ell),
                                 derive_seed(options.seed, 3));
    rep.sample_attempts = dec.sample_attempts;
    clock.mark("sampling");

    const WeightedHypergraph wh =
        build_weighted_hypergraph(dec, *inst.valuation, lp.t_star);
    const WeightedHypergraph rh = round_weights(wh);
    const GroupedHypergraph gh = to_grouped(rh, static_cast<int>(ell));
    clock.mark("hypergraphs");

    PipelineOptions mo = options;
    mo.ell = ell;
    mo.seed = derive_seed(options.seed, 4);
    MatchingRun mr = solve_grouped_matching(gh, mo);
    clock.mark("matching");
    rep.matching = mr.report;
    rep.grouped_alpha = mr.matching.alpha;
    LiftedMatching lifted = lift_matching(gh, mr.matching, rh);
    rep.weighted_alpha = lifted.weighted_alpha;
    wm = std::move(lifted.matching);
    clock.mark("lift");
  }

  SantaAssembly as = assemble_santa_solution(inst, dec, wm);
  run.partition = std::move(as.partition);
  run.value = as.value;
  rep.value_before_top_up = as.value_before_top_up;
  clock.mark("assemble");
  return run;
}

}  // namespace santa
