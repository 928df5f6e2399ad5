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
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dltlaws/amdahl.hpp"
#include "dltlaws/closed_form.hpp"
#include "dltlaws/format.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

using SpeedupFn = std::function<DltSpeedup(const Platform&, Protocol)>;

inline DltSpeedup default_speedup(const Platform& p, Protocol protocol) { return speedup(p, protocol); }

struct ChildCountRange {
  std::size_t first = 1;
  std::size_t last = kTable1Children;
};

struct FractionGrid {
  double step = 0.05;
};

struct SweepSpec {
  Table1Kind kind = Table1Kind::Heterogeneous;
  std::vector<Protocol> protocols{std::begin(kAllProtocols), std::end(kAllProtocols)};
  std::variant<ChildCountRange, FractionGrid> variable = ChildCountRange{};
  double f = 0.8;           // held fixed while n varies
  std::size_t n = 20;       // held fixed while f varies
};

struct SweepRow {
  double x = 0.0;                 // n or f
  std::vector<double> speedups;   // integrated speedup, one per SweepSpec::protocols entry
  double amdahl_ref = 0.0;        // amdahl(f, n + 1): root plus children
};

struct SweepResult {
  bool over_fraction = false;
  std::vector<Protocol> protocols;
  std::vector<SweepRow> rows;
};

/// Points i*step for i = 0.. while <= 1. When 1/step is integral the points
/// are computed as i/steps so the grid ends exactly on 1.
inline std::vector<double> fraction_points(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw domain_error("fraction grid step must lie in (0,1]");
  std::vector<double> pts;
  const double steps = 1.0 / step;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) < 1e-9) {
    const auto count = static_cast<std::size_t>(rounded);
    for (std::size_t i = 0; i <= count; ++i) pts.push_back(static_cast<double>(i) / rounded);
  } else {
    for (std::size_t i = 0; static_cast<double>(i) * step <= 1.0; ++i) pts.push_back(static_cast<double>(i) * step);
  }
  return pts;
}

/// Integrated speedup of every requested protocol on the reference platform,
/// over child count or parallel fraction.
inline SweepResult run_sweep(const SweepSpec& spec, const SpeedupFn& speedup_fn = default_speedup) {
  if (spec.protocols.empty()) throw domain_error("sweep needs at least one protocol");
  SweepResult out;
  out.protocols = spec.protocols;

  auto row_at = [&](double f, std::size_t n, double x) {
    const Platform p = make_table1_platform(spec.kind, n);
    SweepRow row{x, {}, amdahl(f, static_cast<double>(n) + 1.0)};
    for (Protocol protocol : spec.protocols) {
      row.speedups.push_back(integrated_speedup(f, speedup_fn(p, protocol)).value);
    }
    return row;
  };

  if (const auto* range = std::get_if<ChildCountRange>(&spec.variable)) {
    if (range->first > range->last || range->last > kTable1Children) {
      throw domain_error("child-count range must satisfy first <= last <= 50");
    }
    validate_fraction(spec.f);
    for (std::size_t n = range->first; n <= range->last; ++n) {
      out.rows.push_back(row_at(spec.f, n, static_cast<double>(n)));
    }
  } else {
    out.over_fraction = true;
    if (spec.n > kTable1Children) throw domain_error("fixed child count must be <= 50");
    for (double f : fraction_points(std::get<FractionGrid>(spec.variable).step)) {
      out.rows.push_back(row_at(f, spec.n, f));
    }
  }
  return out;
}

/// Header `n|f,model1,model2,model3,amdahl_ref` (only the swept models),
/// shortest round-trip decimals, '\n' line ends.
inline std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  os << (r.over_fraction ? "f" : "n");
  for (Protocol p : r.protocols) os << ",model" << model_number(p);
  os << ",amdahl_ref\n";
  for (const auto& row : r.rows) {
    if (r.over_fraction) {
      os << format_double(row.x);
    } else {
      os << static_cast<std::size_t>(row.x);
    }
    for (double s : row.speedups) os << ',' << format_double(s);
    os << ',' << format_double(row.amdahl_ref) << '\n';
  }
  return os.str();
}

/// The four reference sweeps: n-sweeps at f = 0.8 (3: heterogeneous,
/// 4: homogeneous) and f-sweeps at n = 20 (5: heterogeneous, 6: homogeneous).
inline SweepSpec figure_spec(int figure, double f_step = 0.05) {
  SweepSpec s;
  switch (figure) {
    case 3: s.kind = Table1Kind::Heterogeneous; break;
    case 4: s.kind = Table1Kind::Homogeneous; break;
    case 5: s.kind = Table1Kind::Heterogeneous; s.variable = FractionGrid{f_step}; break;
    case 6: s.kind = Table1Kind::Homogeneous; s.variable = FractionGrid{f_step}; break;
    default: throw domain_error("reference figures are 3, 4, 5 and 6");
  }
  return s;
}

struct AnchorResult {
  std::string id;
  std::string description;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct AnchorOptions {
  SpeedupFn speedup = default_speedup;
  double f_step = 0.05;  // grid for the curve-wide anchors
};

/// Regression anchors for the published numbers and curve relations.
/// Point anchors are evaluated at their exact (f, n), never read off a grid.
inline std::vector<AnchorResult> check_anchors(const AnchorOptions& opt = {}) {
  std::vector<AnchorResult> out;
  const auto& fn = opt.speedup;
  auto point = [&](Table1Kind kind, Protocol protocol, std::size_t n, double f) {
    return integrated_speedup(f, fn(make_table1_platform(kind, n), protocol)).value;
  };
  auto within = [&](std::string id, std::string description, double expected, double actual, double tol) {
    out.push_back({std::move(id), std::move(description), expected, actual, tol,
                   std::abs(actual - expected) <= tol, ""});
  };

  within("a", "homogeneous, model 2, n=30, f=0.8", 4.25,
         point(Table1Kind::Homogeneous, Protocol::Model2StaggeredStart, 30, 0.8), 0.01);
  within("b", "heterogeneous, model 2, n=30, f=0.8", 3.86,
         point(Table1Kind::Heterogeneous, Protocol::Model2StaggeredStart, 30, 0.8), 0.05);

  {
    double worst = 0.0;
    std::string where;
    for (std::size_t n = 0; n <= kTable1Children; ++n) {
      for (double f : fraction_points(opt.f_step)) {
        const double s = point(Table1Kind::Homogeneous, Protocol::Model3SimultaneousStart, n, f);
        const double ref = amdahl(f, static_cast<double>(n) + 1.0);
        const double rel = std::abs(s - ref) / ref;
        if (rel > worst) {
          worst = rel;
          where = "n=" + std::to_string(n) + " f=" + format_double(f);
        }
      }
    }
    out.push_back({"c", "homogeneous model 3 coincides with amdahl(f, n+1)", 0.0, worst, 1e-9, worst <= 1e-9,
                   where.empty() ? "" : "largest deviation at " + where});
  }

  for (auto [protocol, tag] : {std::pair{Protocol::Model2StaggeredStart, "model2"},
                               std::pair{Protocol::Model3SimultaneousStart, "model3"}}) {
    within(std::string("d.") + tag + ".f0.8", std::string("homogeneous, ") + tag + ", n=20, f=0.8 near 4.2", 4.2,
           point(Table1Kind::Homogeneous, protocol, 20, 0.8), 0.7);
    within(std::string("d.") + tag + ".f0.9", std::string("homogeneous, ") + tag + ", n=20, f=0.9 near 6.8", 6.8,
           point(Table1Kind::Homogeneous, protocol, 20, 0.9), 0.7);
  }

  {
    std::size_t violations = 0;
    std::string detail;
    for (int fig : {3, 4, 5, 6}) {
      const SweepResult r = run_sweep(figure_spec(fig, opt.f_step), fn);
      for (const auto& row : r.rows) {
        const double m1 = row.speedups[0], m2 = row.speedups[1], m3 = row.speedups[2];
        const double slack = 1e-12 * m3;
        if (m3 + slack < m2 || m2 + slack < m1) {
          ++violations;
          if (!detail.empty()) detail += "; ";
          detail += "fig" + std::to_string(fig) + (r.over_fraction ? " f=" : " n=") +
                    (r.over_fraction ? format_double(row.x) : std::to_string(static_cast<std::size_t>(row.x))) +
                    " (m1=" + format_double(m1) + " m2=" + format_double(m2) + " m3=" + format_double(m3) + ")";
        }
      }
    }
    out.push_back({"e", "model3 >= model2 >= model1 at every sweep point", 0.0, static_cast<double>(violations), 0.0,
                   violations == 0, detail});
  }
  return out;
}

inline bool all_pass(const std::vector<AnchorResult>& anchors) {
  return std::all_of(anchors.begin(), anchors.end(), [](const AnchorResult& a) { return a.pass; });
}

inline void to_json(nlohmann::json& j, const AnchorResult& a) {
  j = nlohmann::json{{"id", a.id},
                     {"description", a.description},
                     {"expected", a.expected},
                     {"actual", a.actual},
                     {"tolerance", a.tolerance},
                     {"pass", a.pass},
                     {"detail", a.detail}};
}

}  // namespace dlt
