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
#ifndef SANTA_IO_H_
#define SANTA_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "santa/model.h"
#include "santa/pipeline.h"

namespace santa {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Integers as JSON numbers, other values as "p/q" strings. Parsing also
// accepts decimal strings and finite JSON floats (exact binary value).
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& j);

enum class InstanceType { kSanta, kHypergraph };

struct InstanceFile {
  InstanceType type = InstanceType::kSanta;
  SantaInstance santa;
  GroupedHypergraph hypergraph;
};

// Santa: {"type": "santa", "players", "resources", "gamma", "valuation"}.
// Hypergraph: {"type": "hypergraph", "players", "resources",
// "configurations", "groups"?, "ell"?}; without groups every player is its
// own group.
Json to_json(const SantaInstance& inst);
Json to_json(const GroupedHypergraph& gh);
// ParseError on schema violations, StructuralError on invalid content.
InstanceFile instance_from_json(const Json& j);

// {"chosen", "assigned", "alpha", "value"}; chosen and alpha are null for
// Santa solutions, value is null for hypergraph solutions.
struct SolutionFile {
  std::optional<std::vector<int>> chosen;
  std::vector<ResourceSet> assigned;
  std::optional<Rational> alpha;
  std::optional<Rational> value;
};

Json to_json(const SolutionFile& s);
SolutionFile solution_from_json(const Json& j);

SolutionFile santa_solution(const SantaInstance& inst,
                            const std::vector<ResourceSet>& partition);
SolutionFile matching_solution(const RelaxedMatching& m);

struct SolutionCheck {
  bool ok = true;
  std::vector<std::string> violations;
  std::optional<Rational> recomputed_alpha;
  std::optional<Rational> recomputed_value;
};

// Partition or relaxed matching checks, plus equality of the claimed alpha
// or value with the recomputed one.
SolutionCheck check_solution(const InstanceFile& inst, const SolutionFile& s);

Json report_to_json(const SantaRun& run, bool timings);
Json report_to_json(const MatchingRun& run, bool timings);

// ParseError when the file cannot be read or is not JSON.
Json read_json_file(const std::string& path);
// Two-space indented text with a trailing newline.
std::string dump_json(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace santa

#endif  // SANTA_IO_H_
