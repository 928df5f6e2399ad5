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
#include <cstdio>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dltlaws/errors.hpp"
#include "dltlaws/partition.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

struct Interval {
  double start = 0.0;
  double end = 0.0;

  [[nodiscard]] double length() const noexcept { return end - start; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One band of the timing diagram. Node 0 is the root and has no
/// communication interval.
struct GanttEntry {
  std::size_t node = 0;
  std::optional<Interval> communication;
  Interval computation;

  friend bool operator==(const GanttEntry&, const GanttEntry&) = default;
};

struct GanttRecord {
  std::vector<GanttEntry> nodes;

  friend bool operator==(const GanttRecord&, const GanttRecord&) = default;
};

/// Lays the partition out in time.
///   Model 1: the root link carries one transmission at a time, in child
///            order; a child computes from the moment its data starts arriving.
///   Model 2: all links start at 0; a child computes once its data is in.
///   Model 3: all links start at 0; a child computes from time 0.
/// The root computes over [0, alpha_0*omega0*T_cp] in every model.
inline GanttRecord gantt(const Platform& p, Protocol protocol, const Partition& partition) {
  if (partition.alphas.size() != p.size() + 1) {
    throw malformed_schedule_error("partition size does not match platform");
  }
  GanttRecord rec;
  rec.nodes.reserve(p.size() + 1);
  rec.nodes.push_back({0, std::nullopt, {0.0, partition.alphas[0] * p.omega0 * p.t_cp}});
  double link_free = 0.0;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const auto& c = p.children[i - 1];
    const double alpha = partition.alphas[i];
    const double comm = alpha * c.z * p.t_cm;
    const double comp = alpha * c.omega * p.t_cp;
    GanttEntry e{i, Interval{}, Interval{}};
    switch (protocol) {
      case Protocol::Model1Sequential:
        e.communication = Interval{link_free, link_free + comm};
        e.computation = {link_free, link_free + comp};
        link_free += comm;
        break;
      case Protocol::Model2StaggeredStart:
        e.communication = Interval{0.0, comm};
        e.computation = {comm, comm + comp};
        break;
      case Protocol::Model3SimultaneousStart:
        e.communication = Interval{0.0, comm};
        e.computation = {0.0, comp};
        break;
    }
    rec.nodes.push_back(e);
  }
  return rec;
}

// JSON form: [{"node": 0, "computation": [s, e]}, {"node": 1, "communication": [s, e], "computation": [s, e]}, ...]

inline void to_json(nlohmann::json& j, const GanttRecord& rec) {
  j = nlohmann::json::array();
  for (const auto& e : rec.nodes) {
    nlohmann::json entry{{"node", e.node}, {"computation", {e.computation.start, e.computation.end}}};
    if (e.communication) {
      entry["communication"] = {e.communication->start, e.communication->end};
    }
    j.push_back(std::move(entry));
  }
}

inline GanttRecord gantt_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw malformed_schedule_error("gantt JSON must be an array of node entries");
  auto interval = [](const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw malformed_schedule_error("interval must be a [start, end] pair of numbers");
    }
    return Interval{v[0].get<double>(), v[1].get<double>()};
  };
  GanttRecord rec;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("node") || !entry.contains("computation")) {
      throw malformed_schedule_error("gantt entry needs 'node' and 'computation'");
    }
    if (!entry["node"].is_number_unsigned()) {
      throw malformed_schedule_error("gantt node id must be a non-negative integer");
    }
    GanttEntry e;
    e.node = entry["node"].get<std::size_t>();
    e.computation = interval(entry["computation"]);
    if (entry.contains("communication")) e.communication = interval(entry["communication"]);
    rec.nodes.push_back(e);
  }
  return rec;
}

namespace detail {
inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}
}  // namespace detail

/// Horizontal timeline, one band per node; communication in blue over the
/// upper half of the band, computation in orange over the lower half.
inline std::string to_svg(const GanttRecord& rec, Protocol protocol) {
  constexpr double kLeft = 90.0;
  constexpr double kPlotWidth = 680.0;
  constexpr double kBand = 28.0;
  constexpr double kTop = 40.0;
  double horizon = 0.0;
  for (const auto& e : rec.nodes) {
    horizon = std::max(horizon, e.computation.end);
    if (e.communication) horizon = std::max(horizon, e.communication->end);
  }
  if (!(horizon > 0.0)) horizon = 1.0;
  const double sx = kPlotWidth / horizon;
  const double height = kTop + kBand * static_cast<double>(rec.nodes.size()) + 40.0;
  const double axis_y = kTop + kBand * static_cast<double>(rec.nodes.size()) + 8.0;
  using detail::svg_num;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(kLeft + kPlotWidth + 30.0)
     << "\" height=\"" << svg_num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<text x=\"" << svg_num(kLeft) << "\" y=\"20\">" << to_string(protocol)
     << " (blue: communication, orange: computation)</text>\n";
  for (std::size_t row = 0; row < rec.nodes.size(); ++row) {
    const auto& e = rec.nodes[row];
    const double y = kTop + kBand * static_cast<double>(row);
    os << "<text x=\"8\" y=\"" << svg_num(y + kBand * 0.6) << "\">"
       << (e.node == 0 ? std::string("root") : "P" + std::to_string(e.node)) << "</text>\n";
    if (e.communication) {
      os << "<rect class=\"comm\" x=\"" << svg_num(kLeft + e.communication->start * sx) << "\" y=\""
         << svg_num(y + 2.0) << "\" width=\"" << svg_num(e.communication->length() * sx)
         << "\" height=\"" << svg_num(kBand / 2.0 - 3.0) << "\" fill=\"#4c78a8\"/>\n";
    }
    os << "<rect class=\"comp\" x=\"" << svg_num(kLeft + e.computation.start * sx) << "\" y=\""
       << svg_num(y + kBand / 2.0) << "\" width=\"" << svg_num(e.computation.length() * sx)
       << "\" height=\"" << svg_num(kBand / 2.0 - 3.0) << "\" fill=\"#f58518\"/>\n";
  }
  os << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(axis_y) << "\" x2=\""
     << svg_num(kLeft + kPlotWidth) << "\" y2=\"" << svg_num(axis_y) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << svg_num(kLeft) << "\" y=\"" << svg_num(axis_y + 16.0) << "\">0</text>\n";
  os << "<text x=\"" << svg_num(kLeft + kPlotWidth) << "\" y=\"" << svg_num(axis_y + 16.0)
     << "\" text-anchor=\"end\">T = " << svg_num(horizon) << " s</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dlt
