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
// Command-line front end: generate, solve, verify and oracle.
//
// Exit codes: 0 ok, 1 violation or stage failure, 2 parse or usage error,
// 3 oracle budget refusal.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "santa/errors.h"
#include "santa/generators.h"
#include "santa/io.h"
#include "santa/oracles.h"
#include "santa/pipeline.h"

namespace santa {
namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kParse = 2;
constexpr int kBudget = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct GenerateArgs {
  std::string kind;
  std::string out;
  uint64_t seed = 1;
  int players = 4;
  int resources = 8;
  int ell = 4;
  int groups = 3;
  int group_size = 2;
  double density = 0.6;
  int max_value = 10;
  int min_config = 1;
  int max_config = 4;
  int fat = 3;
  int thin = 400;
};

int run_generate(const GenerateArgs& a) {
  Json j;
  const std::string& k = a.kind;
  if (k.rfind("santa-", 0) == 0 && k != "santa-thin") {
    SantaGenParams p;
    p.players = a.players;
    p.resources = a.resources;
    p.density = a.density;
    p.max_value = a.max_value;
    if (p.players < 1 || p.resources < p.players || p.density <= 0 ||
        p.density > 1 || p.max_value < 1) {
      throw CLI::ValidationError("generate", "invalid santa parameters");
    }
    if (k == "santa-linear") {
      j = to_json(generate_santa_linear(p, a.seed));
    } else if (k == "santa-coverage") {
      j = to_json(generate_santa_coverage(p, a.seed));
    } else if (k == "santa-budgeted") {
      j = to_json(generate_santa_budgeted(p, a.seed));
    } else if (k == "santa-matroid") {
      j = to_json(generate_santa_matroid(p, a.seed));
    } else {
      throw CLI::ValidationError("generate", "unknown kind " + k);
    }
  } else if (k == "santa-thin") {
    ThinGenParams p;
    p.players = a.players;
    p.fat = a.fat;
    p.thin_per_player = a.thin;
    if (p.players < 1 || p.fat < 1 || p.thin_per_player < 1) {
      throw CLI::ValidationError("generate", "invalid thin parameters");
    }
    j = to_json(generate_santa_thin(p, a.seed));
  } else if (k == "hypergraph-regular" || k == "hypergraph-grouped") {
    HypergraphGenParams p;
    const bool regular = k == "hypergraph-regular";
    p.groups = regular ? a.players : a.groups;
    p.group_size = regular ? 1 : a.group_size;
    p.ell = a.ell;
    p.resources = a.resources;
    p.min_config = a.min_config;
    p.max_config = a.max_config;
    if (p.groups < 1 || p.group_size < 1 || p.ell < 1 || p.resources < 1 ||
        p.min_config < 1 || p.max_config < p.min_config) {
      throw CLI::ValidationError("generate", "invalid hypergraph parameters");
    }
    j = to_json(generate_grouped_hypergraph(p, a.seed));
  } else {
    throw CLI::ValidationError("generate", "unknown kind " + k);
  }
  emit(a.out, dump_json(j));
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string out;
  std::string report;
  std::string profile = "practical";
  std::string fat_alpha = "1";
  uint64_t seed = 1;
  int64_t gamma = 0;
  int64_t ell = 0;
  double slack = 1.0;
  double tol = 1e-9;
  int max_rounds = 10000;
  bool timings = false;
};

int run_solve(const SolveArgs& a) {
  const InstanceFile inst = instance_from_json(read_json_file(a.instance));
  PipelineOptions o;
  o.profile = parse_profile(a.profile);
  o.seed = a.seed;
  o.gamma = a.gamma;
  o.ell = a.ell;
  o.slack = a.slack;
  o.max_rounds = a.max_rounds;
  o.fat_alpha = parse_rational(a.fat_alpha);
  o.lp.tol = a.tol;
  Json report;
  SolutionFile sol;
  if (inst.type == InstanceType::kSanta) {
    SantaRun run = solve_santa(inst.santa, o);
    sol = santa_solution(inst.santa, run.partition);
    report = report_to_json(run, a.timings);
  } else {
    MatchingRun run = solve_grouped_matching(inst.hypergraph, o);
    sol = matching_solution(run.matching);
    report = report_to_json(run, a.timings);
  }
  report["profile"] = to_string(o.profile);
  report["seed"] = a.seed;
  emit(a.out, dump_json(to_json(sol)));
  if (!a.report.empty()) {
    emit(a.report, dump_json(report));
  } else if (!a.out.empty() && a.out != "-") {
    std::cout << dump_json(report);
  }
  return kOk;
}

int run_verify(const std::string& instance, const std::string& solution) {
  const InstanceFile inst = instance_from_json(read_json_file(instance));
  const SolutionFile sol = solution_from_json(read_json_file(solution));
  const SolutionCheck c = check_solution(inst, sol);
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["ok"] = c.ok;
  out["violations"] = c.violations;
  out["recomputed_alpha"] =
      c.recomputed_alpha ? rational_to_json(*c.recomputed_alpha) : Json(nullptr);
  out["recomputed_value"] =
      c.recomputed_value ? rational_to_json(*c.recomputed_value) : Json(nullptr);
  std::cout << dump_json(out);
  return c.ok ? kOk : kViolation;
}

int run_oracle(const std::string& instance, std::string which,
               int64_t budget, const std::string& out) {
  const InstanceFile inst = instance_from_json(read_json_file(instance));
  const bool santa = inst.type == InstanceType::kSanta;
  if (which.empty()) which = santa ? "opt" : "min-alpha";
  SolutionFile sol;
  if (which == "opt") {
    if (!santa) throw CLI::ValidationError("oracle", "opt needs a santa instance");
    SantaOptimum o = budget > 0 ? exact_santa_opt(inst.santa, budget)
                                : exact_santa_opt(inst.santa);
    sol = santa_solution(inst.santa, o.partition);
  } else if (which == "min-alpha" || which == "min-alpha-pruned") {
    if (santa) {
      throw CLI::ValidationError("oracle", which + " needs a hypergraph");
    }
    MinAlpha m;
    if (which == "min-alpha") {
      m = budget > 0 ? exact_min_alpha(inst.hypergraph, budget)
                     : exact_min_alpha(inst.hypergraph);
    } else {
      m = budget > 0 ? exact_min_alpha_pruned(inst.hypergraph, budget)
                     : exact_min_alpha_pruned(inst.hypergraph);
    }
    sol = matching_solution(m.matching);
  } else {
    throw CLI::ValidationError("oracle", "unknown oracle " + which);
  }
  emit(out, dump_json(to_json(sol)));
  return kOk;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Santa Claus allocation and relaxed hypergraph matching"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "write a random instance");
  gen->add_option("kind", g.kind,
                  "santa-linear, santa-coverage, santa-budgeted, "
                  "santa-matroid, santa-thin, hypergraph-regular, "
                  "hypergraph-grouped")
      ->required();
  gen->add_option("-o,--out", g.out, "output file (default stdout)");
  gen->add_option("--seed", g.seed);
  gen->add_option("--players", g.players);
  gen->add_option("--resources", g.resources);
  gen->add_option("--ell", g.ell);
  gen->add_option("--groups", g.groups);
  gen->add_option("--group-size", g.group_size);
  gen->add_option("--density", g.density);
  gen->add_option("--max-value", g.max_value);
  gen->add_option("--min-config", g.min_config);
  gen->add_option("--max-config", g.max_config);
  gen->add_option("--fat", g.fat, "santa-thin: shared resources");
  gen->add_option("--thin", g.thin, "santa-thin: private resources per player");

  SolveArgs s;
  auto* solve = app.add_subcommand("solve", "run the pipeline");
  solve->add_option("instance", s.instance)->required();
  solve->add_option("-o,--out", s.out, "solution file (default stdout)");
  solve->add_option("--report", s.report, "report file");
  solve->add_option("--profile", s.profile)
      ->check(CLI::IsMember({"theory", "practical"}));
  solve->add_option("--seed", s.seed);
  solve->add_option("--gamma", s.gamma);
  solve->add_option("--ell", s.ell);
  solve->add_option("--slack", s.slack);
  solve->add_option("--tol", s.tol);
  solve->add_option("--max-rounds", s.max_rounds);
  solve->add_option("--fat-alpha", s.fat_alpha);
  solve->add_flag("--timings", s.timings, "include stage timings");

  std::string v_instance, v_solution;
  auto* verify = app.add_subcommand("verify", "check a solution file");
  verify->add_option("instance", v_instance)->required();
  verify->add_option("solution", v_solution)->required();

  std::string o_instance, o_which, o_out;
  int64_t o_budget = 0;
  auto* oracle = app.add_subcommand("oracle", "exact optimum with witness");
  oracle->add_option("instance", o_instance)->required();
  oracle->add_option("--which", o_which, "opt, min-alpha or min-alpha-pruned");
  oracle->add_option("--budget", o_budget, "enumeration budget");
  oracle->add_option("-o,--out", o_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  try {
    if (*gen) return run_generate(g);
    if (*solve) return run_solve(s);
    if (*verify) return run_verify(v_instance, v_solution);
    return run_oracle(o_instance, o_which, o_budget, o_out);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const StructuralError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const ContractError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kViolation;
  }
}

}  // namespace
}  // namespace santa

int main(int argc, char** argv) { return santa::main_impl(argc, argv); }
