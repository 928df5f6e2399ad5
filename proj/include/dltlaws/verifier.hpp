/* Copyright 2026 The dltlaws Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dltlaws/errors.hpp"
#include "dltlaws/format.hpp"
#include "dltlaws/gantt.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

enum class Rule {
  Volume,           // communication length matches the load implied by computation
  LinkDiscipline,   // sequential root link (model 1) or all links start at 0
  StartDiscipline,  // computation starts when the protocol allows it
  Starvation,       // simultaneous start: data arrives no slower than it is consumed
  EqualFinish,      // every participating node stops at the makespan
};

inline std::string_view to_string(Rule r) noexcept {
  switch (r) {
    case Rule::Volume: return "volume";
    case Rule::LinkDiscipline: return "link-discipline";
    case Rule::StartDiscipline: return "start-discipline";
    case Rule::Starvation: return "starvation";
    case Rule::EqualFinish: return "equal-finish";
  }
  return "unknown";
}

struct Violation {
  Rule rule;
  std::size_t node;
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;
  double measured_makespan = 0.0;
  double measured_speedup = 0.0;

  [[nodiscard]] bool flags(Rule r) const {
    return std::any_of(violations.begin(), violations.end(),
                       [r](const Violation& v) { return v.rule == r; });
  }
};

/// Relative tolerance for every time comparison, scaled by the makespan.
inline constexpr double kVerifyTolerance = 1e-9;

namespace detail {

inline void require_interval(const Interval& iv, std::size_t node, std::string_view what) {
  if (!std::isfinite(iv.start) || !std::isfinite(iv.end) || iv.start < 0.0 || iv.end < iv.start) {
    throw malformed_schedule_error("node " + std::to_string(node) + ": invalid " +
                                   std::string(what) + " interval");
  }
}

// Entries indexed by node id, after structural checks.
inline std::vector<GanttEntry> indexed_entries(const Platform& p, const GanttRecord& g) {
  const std::size_t count = p.size() + 1;
  if (g.nodes.size() != count) {
    throw malformed_schedule_error("gantt has " + std::to_string(g.nodes.size()) +
                                   " entries, platform has " + std::to_string(count) + " nodes");
  }
  std::vector<GanttEntry> by_id(count);
  std::vector<bool> seen(count, false);
  for (const auto& e : g.nodes) {
    if (e.node >= count) throw malformed_schedule_error("unknown node id " + std::to_string(e.node));
    if (seen[e.node]) throw malformed_schedule_error("duplicate node id " + std::to_string(e.node));
    seen[e.node] = true;
    require_interval(e.computation, e.node, "computation");
    if (e.node == 0 && e.communication) {
      throw malformed_schedule_error("root must not have a communication interval");
    }
    if (e.node != 0) {
      if (!e.communication) {
        throw malformed_schedule_error("node " + std::to_string(e.node) + " lacks a communication interval");
      }
      require_interval(*e.communication, e.node, "communication");
    }
    by_id[e.node] = e;
  }
  return by_id;
}

}  // namespace detail

/// Replays a timing diagram against the protocol's rules. Load shares are
/// inferred from computation lengths, so the volume rule cross-checks the
/// communication intervals rather than restating them.
inline VerificationReport verify(const Platform& p, Protocol protocol, const GanttRecord& g) {
  validate(p);
  const auto nodes = detail::indexed_entries(p, g);

  VerificationReport rep;
  double makespan = 0.0;
  for (const auto& e : nodes) makespan = std::max(makespan, e.computation.end);
  if (!(makespan > 0.0)) throw malformed_schedule_error("schedule has zero makespan");
  rep.measured_makespan = makespan;
  rep.measured_speedup = p.omega0 * p.t_cp / makespan;

  const double tol = kVerifyTolerance * makespan;
  auto add = [&rep](Rule r, std::size_t node, std::string detail) {
    rep.violations.push_back({r, node, std::move(detail)});
  };
  auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  std::vector<double> alphas(nodes.size());
  alphas[0] = nodes[0].computation.length() / (p.omega0 * p.t_cp);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    alphas[i] = nodes[i].computation.length() / (p.children[i - 1].omega * p.t_cp);
  }

  // (a) volume
  long double total = 0.0L;
  for (double a : alphas) total += a;
  if (std::abs(static_cast<double>(total) - 1.0) > kVerifyTolerance) {
    add(Rule::Volume, 0, "load shares sum to " + format_double(static_cast<double>(total)));
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double expected = alphas[i] * p.children[i - 1].z * p.t_cm;
    const double actual = nodes[i].communication->length();
    if (!near(actual, expected)) {
      add(Rule::Volume, i,
          "communication lasts " + format_double(actual) + " s, load implies " + format_double(expected) + " s");
    }
  }

  // (b) link discipline
  double link_free = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Interval comm = *nodes[i].communication;
    if (protocol == Protocol::Model1Sequential) {
      if (comm.start < link_free - tol) {
        add(Rule::LinkDiscipline, i,
            "transmission starts at " + format_double(comm.start) + " while the root link is busy until " +
                format_double(link_free));
      } else if (comm.start > link_free + tol) {
        add(Rule::LinkDiscipline, i,
            "root link idles from " + format_double(link_free) + " to " + format_double(comm.start));
      }
      link_free = std::max(link_free, comm.end);
    } else if (!near(comm.start, 0.0)) {
      add(Rule::LinkDiscipline, i, "concurrent link starts at " + format_double(comm.start) + " instead of 0");
    }
  }

  // (c) start discipline
  if (!near(nodes[0].computation.start, 0.0)) {
    add(Rule::StartDiscipline, 0, "root starts computing at " + format_double(nodes[0].computation.start));
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Interval comm = *nodes[i].communication;
    const double allowed = protocol == Protocol::Model2StaggeredStart ? comm.end : comm.start;
    if (!near(nodes[i].computation.start, allowed)) {
      add(Rule::StartDiscipline, i,
          "computation starts at " + format_double(nodes[i].computation.start) + ", protocol requires " +
              format_double(allowed));
    }
  }

  // (d) starvation, for protocols that compute while data streams in
  if (protocol != Protocol::Model2StaggeredStart) {
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double comp = nodes[i].computation.length();
      const double comm = nodes[i].communication->length();
      if (comp <= tol) continue;
      if (comm > comp + tol) {
        add(Rule::Starvation, i,
            "data arrives over " + format_double(comm) + " s but is consumed in " + format_double(comp) + " s");
      }
    }
  }

  // (e) equal finish among participating nodes
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].computation.length() <= tol) continue;
    if (!near(nodes[i].computation.end, makespan)) {
      add(Rule::EqualFinish, i,
          "finishes at " + format_double(nodes[i].computation.end) + ", makespan is " + format_double(makespan));
    }
  }

  rep.ok = rep.violations.empty();
  return rep;
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  auto violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"rule", to_string(v.rule)}, {"node", v.node}, {"detail", v.detail}});
  }
  j = nlohmann::json{{"ok", r.ok},
                     {"measured_makespan", r.measured_makespan},
                     {"measured_speedup", r.measured_speedup},
                     {"violations", std::move(violations)}};
}

}  // namespace dlt
