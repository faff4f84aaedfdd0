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
#include "santa/io.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "santa/errors.h"

namespace santa {
namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(rational_to_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(rational_from_json(v));
  return out;
}

std::vector<int> ints_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  std::vector<int> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw ParseError("expected an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> int_lists_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (const Json& v : j) out.push_back(ints_from_json(v));
  return out;
}

Json valuation_to_json(const ValuationOracle& f) {
  Json out;
  out["kind"] = to_string(f.kind());
  if (const auto* l = dynamic_cast<const LinearOracle*>(&f)) {
    out["values"] = rationals_to_json(l->values());
  } else if (const auto* c = dynamic_cast<const CoverageOracle*>(&f)) {
    out["universe"] = c->universe();
    out["sets"] = c->sets();
    if (!c->weights().empty()) out["weights"] = rationals_to_json(c->weights());
  } else if (const auto* b = dynamic_cast<const BudgetedAdditiveOracle*>(&f)) {
    out["values"] = rationals_to_json(b->values());
    out["cap"] = rational_to_json(b->cap());
  } else if (const auto* m = dynamic_cast<const MatroidRankOracle*>(&f)) {
    out["part_of"] = m->part_of();
    out["capacity"] = m->capacity();
  } else {
    throw ContractError("valuation has no file representation");
  }
  return out;
}

OracleHandle valuation_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "linear") {
    return std::make_shared<LinearOracle>(rationals_from_json(field(j, "values")));
  }
  if (kind == "coverage") {
    std::vector<Rational> weights;
    if (j.contains("weights")) weights = rationals_from_json(j.at("weights"));
    return std::make_shared<CoverageOracle>(field(j, "universe").get<int>(),
                                            int_lists_from_json(field(j, "sets")),
                                            std::move(weights));
  }
  if (kind == "budgeted-additive") {
    return std::make_shared<BudgetedAdditiveOracle>(
        rationals_from_json(field(j, "values")),
        rational_from_json(field(j, "cap")));
  }
  if (kind == "matroid-rank") {
    return std::make_shared<MatroidRankOracle>(
        ints_from_json(field(j, "part_of")), ints_from_json(field(j, "capacity")));
  }
  throw ParseError("unknown valuation kind '" + kind + "'");
}

Json sets_to_json(const std::vector<ResourceSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

Json timings_to_json(const std::vector<StageTime>& timings) {
  Json out = Json::array();
  for (const auto& t : timings) {
    out.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  }
  return out;
}

Json matching_report_to_json(const MatchingReport& r) {
  return {{"ell", r.ell},
          {"d", r.d},
          {"gamma", r.gamma},
          {"attempts", r.attempts},
          {"hierarchy_tries", r.hierarchy_tries},
          {"lll_failures", r.lll_failures},
          {"audit_failures", r.audit_failures},
          {"lift_failures", r.lift_failures},
          {"mt_rounds", r.mt_rounds},
          {"mt_resampled", r.mt_resampled},
          {"audit",
           {{"ok", r.audit.ok},
            {"claim_ok", r.audit.claim_ok},
            {"checks", r.audit.checks},
            {"violations", r.audit.violations},
            {"worst_ratio", r.audit.worst_ratio},
            {"slack", r.audit.slack}}},
          {"induction_alpha", rational_to_json(r.induction_alpha)},
          {"polished", r.polished},
          {"lift_shortfalls", r.lift_shortfalls},
          {"admission_halvings", r.admission_halvings}};
}

}  // namespace

Json rational_to_json(const Rational& value) {
  if (denominator(value) == 1) {
    const Integer num = numerator(value);
    if (num >= INT64_MIN && num <= INT64_MAX) {
      return static_cast<int64_t>(num);
    }
  }
  return to_string(value);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      const uint64_t u = j.get<uint64_t>();
      if (u > static_cast<uint64_t>(INT64_MAX)) return parse_rational(std::to_string(u));
    }
    return Rational(j.get<int64_t>());
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw ParseError("non-finite number");
    return rational_from_double(d);
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("expected a number or a \"p/q\" string");
}

Json to_json(const SantaInstance& inst) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["type"] = "santa";
  out["players"] = inst.m;
  out["resources"] = inst.n;
  out["gamma"] = sets_to_json(inst.gamma);
  out["valuation"] = valuation_to_json(*inst.valuation);
  return out;
}

Json to_json(const GroupedHypergraph& gh) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["type"] = "hypergraph";
  out["players"] = gh.num_players;
  out["resources"] = gh.num_resources;
  out["ell"] = gh.ell;
  Json configs = Json::array();
  for (const Configuration& c : gh.configurations) {
    configs.push_back({{"player", c.player}, {"resources", c.resources}});
  }
  out["configurations"] = configs;
  Json groups = Json::array();
  for (const Group& g : gh.groups) {
    groups.push_back({{"players", g.players},
                      {"consistent_sets", g.consistent_sets}});
  }
  out["groups"] = groups;
  return out;
}

InstanceFile instance_from_json(const Json& j) {
  InstanceFile out;
  try {
    const std::string type = field(j, "type").get<std::string>();
    const int players = field(j, "players").get<int>();
    const int resources = field(j, "resources").get<int>();
    if (players < 0 || resources < 0) throw ParseError("negative size");
    if (type == "santa") {
      out.type = InstanceType::kSanta;
      out.santa.m = players;
      out.santa.n = resources;
      for (auto& g : int_lists_from_json(field(j, "gamma"))) {
        out.santa.gamma.push_back(normalized(std::move(g)));
      }
      out.santa.valuation = valuation_from_json(field(j, "valuation"));
    } else if (type == "hypergraph") {
      out.type = InstanceType::kHypergraph;
      std::vector<Configuration> configs;
      const Json& cj = field(j, "configurations");
      if (!cj.is_array()) throw ParseError("configurations must be an array");
      for (const Json& c : cj) {
        configs.push_back({field(c, "player").get<int>(),
                           normalized(ints_from_json(field(c, "resources")))});
      }
      for (const Configuration& c : configs) {
        if (c.player < 0 || c.player >= players) {
          throw StructuralError("configuration player out of range");
        }
      }
      if (j.contains("groups")) {
        GroupedHypergraph& gh = out.hypergraph;
        gh.num_players = players;
        gh.num_resources = resources;
        gh.configurations = std::move(configs);
        for (const Json& g : j.at("groups")) {
          gh.groups.push_back({ints_from_json(field(g, "players")),
                               int_lists_from_json(field(g, "consistent_sets"))});
        }
        gh.ell = j.contains("ell") ? j.at("ell").get<int>() : 1;
      } else {
        out.hypergraph = make_ungrouped(players, resources, std::move(configs));
        if (j.contains("ell")) {
          out.hypergraph.ell = std::max(out.hypergraph.ell, j.at("ell").get<int>());
        }
      }
    } else {
      throw ParseError("unknown instance type '" + type + "'");
    }
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  const auto v = out.type == InstanceType::kSanta
                     ? validate_instance(out.santa)
                     : validate_hypergraph(out.hypergraph);
  if (!v.empty()) throw StructuralError("invalid instance: " + v.front());
  return out;
}

Json to_json(const SolutionFile& s) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["chosen"] = s.chosen ? Json(*s.chosen) : Json(nullptr);
  out["assigned"] = sets_to_json(s.assigned);
  out["alpha"] = s.alpha ? rational_to_json(*s.alpha) : Json(nullptr);
  out["value"] = s.value ? rational_to_json(*s.value) : Json(nullptr);
  return out;
}

SolutionFile solution_from_json(const Json& j) {
  SolutionFile out;
  try {
    if (const Json& c = field(j, "chosen"); !c.is_null()) {
      out.chosen = ints_from_json(c);
    }
    out.assigned = int_lists_from_json(field(j, "assigned"));
    if (j.contains("alpha") && !j.at("alpha").is_null()) {
      out.alpha = rational_from_json(j.at("alpha"));
    }
    if (j.contains("value") && !j.at("value").is_null()) {
      out.value = rational_from_json(j.at("value"));
    }
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return out;
}

SolutionFile santa_solution(const SantaInstance& inst,
                            const std::vector<ResourceSet>& partition) {
  SolutionFile out;
  out.assigned = partition;
  out.value = check_partition(inst, partition).min_value;
  return out;
}

SolutionFile matching_solution(const RelaxedMatching& m) {
  SolutionFile out;
  out.chosen = m.chosen;
  out.assigned = m.assigned;
  out.alpha = m.alpha;
  return out;
}

SolutionCheck check_solution(const InstanceFile& inst, const SolutionFile& s) {
  SolutionCheck out;
  auto fail = [&](std::string v) {
    out.ok = false;
    out.violations.push_back(std::move(v));
  };
  if (inst.type == InstanceType::kSanta) {
    PartitionCheck pc = check_partition(inst.santa, s.assigned);
    if (!pc.ok) {
      fail(pc.violation);
      return out;
    }
    out.recomputed_value = pc.min_value;
    if (s.value && *s.value != pc.min_value) {
      fail("value claim " + to_string(*s.value) + " but recomputed " +
           to_string(pc.min_value));
    }
    return out;
  }
  const GroupedHypergraph& gh = inst.hypergraph;
  if (!s.chosen) {
    fail("missing chosen configurations");
    return out;
  }
  if (static_cast<int>(s.chosen->size()) != gh.num_players ||
      static_cast<int>(s.assigned.size()) != gh.num_players) {
    fail("chosen/assigned length does not match player count");
    return out;
  }
  RelaxedMatching m{*s.chosen, s.assigned, 1};
  try {
    for (int c : m.chosen) {
      if (c < 0 || c >= static_cast<int>(gh.configurations.size())) {
        throw StructuralError("chosen configuration index out of range");
      }
    }
    const Rational alpha = achieved_alpha(gh, m.chosen, m.assigned);
    out.recomputed_alpha = alpha;
    m.alpha = s.alpha ? *s.alpha : alpha;
    VerifyResult v = verify_relaxed_matching(gh, m);
    if (!v.ok) fail(v.violation);
  } catch (const StructuralError& e) {
    fail(e.what());
    return out;
  }
  if (s.alpha && out.recomputed_alpha && *s.alpha != *out.recomputed_alpha) {
    fail("alpha claim " + to_string(*s.alpha) + " but recomputed " +
         to_string(*out.recomputed_alpha));
  }
  return out;
}

Json report_to_json(const SantaRun& run, bool timings) {
  const SantaReport& r = run.report;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["type"] = "santa";
  out["t_star"] = rational_to_json(r.t_star);
  out["t_certified"] = rational_to_json(r.t_certified);
  out["lp_cap_hit"] = r.lp_cap_hit;
  out["lp_solves"] = r.lp_solves;
  out["fat"] = r.fat;
  out["thin"] = r.thin;
  out["clusters"] = r.clusters;
  out["q_players"] = r.q_players;
  out["sampling_ell"] = r.sampling_ell;
  out["sample_attempts"] = r.sample_attempts;
  out["matching"] =
      r.matching ? matching_report_to_json(*r.matching) : Json(nullptr);
  out["grouped_alpha"] =
      r.matching ? rational_to_json(r.grouped_alpha) : Json(nullptr);
  out["weighted_alpha"] =
      r.weighted_alpha ? rational_to_json(*r.weighted_alpha) : Json(nullptr);
  out["value_before_top_up"] = rational_to_json(r.value_before_top_up);
  out["value"] = rational_to_json(run.value);
  if (timings) out["timings"] = timings_to_json(run.timings);
  return out;
}

Json report_to_json(const MatchingRun& run, bool timings) {
  Json out = matching_report_to_json(run.report);
  out["schema_version"] = kSchemaVersion;
  out["type"] = "hypergraph";
  out["alpha"] = rational_to_json(run.matching.alpha);
  if (timings) out["timings"] = timings_to_json(run.timings);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace santa
