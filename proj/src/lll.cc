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
#include "santa/lll.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "santa/errors.h"
#include "santa/log.h"
#include "santa/rng.h"

namespace santa {
namespace {

std::vector<std::vector<int>> incidence(const GroupedHypergraph& gh) {
  std::vector<std::vector<int>> out(gh.num_resources);
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    for (int j : gh.configurations[c].resources) {
      out[j].push_back(static_cast<int>(c));
    }
  }
  return out;
}

int64_t overlap_in_level(const ResourceSet& a, const ResourceSet& b,
                         const ResourceHierarchy& hier, int h) {
  int64_t count = 0;
  for (int j : intersect(a, b)) count += hier.contains(h, j);
  return count;
}

void draw_group(const GroupedHypergraph& gh, int g, Rng& rng, Selection& sel) {
  sel.set_of_group[g] = static_cast<int>(
      rng.uniform_index(gh.groups[g].consistent_sets.size()));
}

}  // namespace

std::vector<int> selected_configs(const GroupedHypergraph& gh,
                                  const Selection& sel) {
  return chosen_from_sets(gh, sel.set_of_group);
}

std::vector<Rational> selection_probability(const GroupedHypergraph& gh) {
  std::vector<Rational> out(gh.configurations.size(), Rational(0));
  for (const Group& group : gh.groups) {
    const int sets = static_cast<int>(group.consistent_sets.size());
    for (const auto& s : group.consistent_sets) {
      for (int c : s) out[c] += Rational(1, sets);
    }
  }
  return out;
}

Rational expected_x(const GroupedHypergraph& gh, const ResourceHierarchy& hier,
                    const SizeClasses& classes, int config, int h) {
  const auto prob = selection_probability(gh);
  const ResourceSet& c = gh.configurations.at(config).resources;
  Rational total = 0;
  if (h < static_cast<int>(classes.members.size())) {
    for (int other : classes.members[h]) {
      total += prob[other] *
               overlap_in_level(gh.configurations[other].resources, c, hier, h);
    }
  }
  return total;
}

double event_threshold(const Rational& expected, int64_t size, int k, int h,
                       int64_t ell, double slack) {
  const double lg = std::log(static_cast<double>(ell));
  const double extra = h >= k - 5 ? 63.0 * size * lg
                                  : 135.0 * size * lg / static_cast<double>(ell);
  return to_double(expected) + slack * extra;
}

std::vector<BadEvent> build_bad_events(const GroupedHypergraph& gh,
                                       const ResourceHierarchy& hier,
                                       const SizeClasses& classes,
                                       double slack) {
  const auto inc = incidence(gh);
  const auto prob = selection_probability(gh);
  const std::vector<int> group_of = gh.group_index();
  std::vector<BadEvent> events;
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    const ResourceSet& res = gh.configurations[c].resources;
    const int k = classes.class_of[c];
    for (int h = 0; h <= k; ++h) {
      BadEvent e;
      e.config = static_cast<int>(c);
      e.h = h;
      std::vector<int64_t> hits(gh.configurations.size(), 0);
      std::vector<int> touched;
      for (int j : res) {
        if (!hier.contains(h, j)) continue;
        ++e.size;
        for (int other : inc[j]) {
          if (classes.class_of[other] != h) continue;
          if (hits[other]++ == 0) touched.push_back(other);
        }
      }
      if (touched.empty()) continue;
      e.expected = 0;
      for (int other : touched) {
        e.expected += prob[other] * hits[other];
        e.groups.push_back(group_of[gh.configurations[other].player]);
      }
      std::sort(e.groups.begin(), e.groups.end());
      e.groups.erase(std::unique(e.groups.begin(), e.groups.end()),
                     e.groups.end());
      e.threshold = event_threshold(e.expected, e.size, k, h, hier.ell, slack);
      events.push_back(std::move(e));
    }
  }
  return events;
}

int64_t event_value(const GroupedHypergraph& gh, const ResourceHierarchy& hier,
                    const SizeClasses& classes, const std::vector<int>& chosen,
                    const BadEvent& event) {
  const ResourceSet& c = gh.configurations[event.config].resources;
  int64_t x = 0;
  for (int cfg : chosen) {
    if (classes.class_of[cfg] != event.h) continue;
    x += overlap_in_level(gh.configurations[cfg].resources, c, hier, event.h);
  }
  return x;
}

std::vector<int> evaluate_bad_events(const GroupedHypergraph& gh,
                                     const ResourceHierarchy& hier,
                                     const SizeClasses& classes,
                                     const Selection& sel,
                                     const std::vector<BadEvent>& events) {
  const auto inc = incidence(gh);
  std::vector<char> selected(gh.configurations.size(), 0);
  for (int c : selected_configs(gh, sel)) selected[c] = 1;
  std::vector<int> fired;
  for (size_t e = 0; e < events.size(); ++e) {
    const BadEvent& ev = events[e];
    int64_t x = 0;
    for (int j : gh.configurations[ev.config].resources) {
      if (!hier.contains(ev.h, j)) continue;
      for (int other : inc[j]) {
        x += selected[other] && classes.class_of[other] == ev.h;
      }
    }
    if (static_cast<double>(x) >= ev.threshold) fired.push_back(static_cast<int>(e));
  }
  return fired;
}

std::vector<int> event_dependencies(const std::vector<BadEvent>& events,
                                    int index) {
  std::vector<int> out;
  const auto& mine = events[index].groups;
  for (size_t e = 0; e < events.size(); ++e) {
    if (static_cast<int>(e) == index) continue;
    const auto& other = events[e].groups;
    std::vector<int> both;
    std::set_intersection(mine.begin(), mine.end(), other.begin(), other.end(),
                          std::back_inserter(both));
    if (!both.empty()) out.push_back(static_cast<int>(e));
  }
  return out;
}

double lll_event_log_weight(int64_t size, int64_t ell) {
  const double l = static_cast<double>(ell);
  return -static_cast<double>(size) / std::pow(l, 9) - 18.0 * std::log(l);
}

Selection select_moser_tardos(const GroupedHypergraph& gh,
                              const ResourceHierarchy& hier,
                              const SizeClasses& classes, uint64_t seed,
                              const LllOptions& options) {
  if (options.slack != 1.0) {
    logger().info("bad event thresholds use slack {}", options.slack);
  }
  Rng rng(seed);
  Selection sel;
  sel.set_of_group.assign(gh.groups.size(), 0);
  for (size_t g = 0; g < gh.groups.size(); ++g) {
    draw_group(gh, static_cast<int>(g), rng, sel);
  }
  const std::vector<BadEvent> events =
      build_bad_events(gh, hier, classes, options.slack);
  for (int round = 0;; ++round) {
    std::vector<int> fired = evaluate_bad_events(gh, hier, classes, sel, events);
    if (fired.empty()) return sel;
    if (round >= options.max_rounds) {
      std::string what = "Moser-Tardos exceeded " +
                         std::to_string(options.max_rounds) + " rounds; " +
                         std::to_string(fired.size()) + " events fire:";
      for (size_t k = 0; k < std::min<size_t>(fired.size(), 8); ++k) {
        const BadEvent& e = events[fired[k]];
        what += " (C" + std::to_string(e.config) + ", h" + std::to_string(e.h) +
                ")";
      }
      throw CapExceededError(what);
    }
    for (int g : events[fired.front()].groups) {
      draw_group(gh, g, rng, sel);
      ++sel.resampled;
    }
    ++sel.rounds;
  }
}

IntersectionAudit selection_intersection_bound(const GroupedHypergraph& gh,
                                               const ResourceHierarchy& hier,
                                               const SizeClasses& classes,
                                               const Selection& sel,
                                               double slack) {
  IntersectionAudit audit;
  audit.slack = slack;
  const double s = std::max(1.0, slack);
  const long double l = static_cast<long double>(hier.ell);
  const long double unit = 1000.0L * s * (classes.d + l) / l * std::log(l);
  const auto inc = incidence(gh);
  const auto prob = selection_probability(gh);
  const std::vector<int> chosen = selected_configs(gh, sel);
  std::vector<char> selected(gh.configurations.size(), 0);
  for (int c : chosen) selected[c] = 1;
  for (size_t c = 0; c < gh.configurations.size(); ++c) {
    const ResourceSet& res = gh.configurations[c].resources;
    const int k = classes.class_of[c];
    std::vector<long double> x(k + 1, 0), ex(k + 1, 0);
    for (int j : res) {
      for (int other : inc[j]) {
        const int h = classes.class_of[other];
        if (h > k || !hier.contains(h, j)) continue;
        ex[h] += to_double(prob[other]);
        if (selected[other]) x[h] += 1;
      }
    }
    const long double size = static_cast<long double>(res.size());
    long double lhs = 0, rhs = 0;
    for (int j = k; j >= 0; --j) {
      const long double scale = std::pow(l, static_cast<long double>(j));
      lhs += scale * x[j];
      rhs += scale * ex[j];
      const long double bound = rhs + unit * size;
      ++audit.checks;
      if (bound > 0) {
        audit.worst_ratio =
            std::max(audit.worst_ratio, static_cast<double>(lhs / bound));
      }
      if (lhs > bound * (1 + 1e-12L)) {
        audit.ok = false;
        ++audit.violations;
      }
    }
    if (selected[c] && lhs > 2 * unit * size * (1 + 1e-12L)) {
      audit.claim_ok = false;
    }
  }
  return audit;
}

}  // namespace santa
