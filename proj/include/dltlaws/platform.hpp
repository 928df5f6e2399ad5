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
#include <compare>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dltlaws/errors.hpp"

namespace dlt {

/// One child of the star: inverse compute speed and inverse link speed.
struct NodeSpec {
  double omega = 0.0;
  double z = 0.0;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Single-level tree (star) network. The root computes its own share and
/// feeds every child over a dedicated link. Total load is normalized to 1.
struct Platform {
  double omega0 = 0.0;
  std::vector<NodeSpec> children;
  double t_cp = 0.0;  // whole load computes in omega * t_cp seconds
  double t_cm = 0.0;  // whole load transmits in z * t_cm seconds

  [[nodiscard]] std::size_t size() const noexcept { return children.size(); }

  /// Copy holding only the first `n` children.
  [[nodiscard]] Platform truncated(std::size_t n) const {
    if (n > children.size()) {
      throw std::out_of_range("platform has " + std::to_string(children.size()) +
                              " children, cannot take " + std::to_string(n));
    }
    Platform p = *this;
    p.children.resize(n);
    return p;
  }

  friend bool operator==(const Platform&, const Platform&) = default;
};

inline bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

inline void validate(const Platform& p) {
  if (!positive_finite(p.omega0)) throw domain_error("omega0 must be positive");
  if (!positive_finite(p.t_cp)) throw domain_error("t_cp must be positive");
  if (!positive_finite(p.t_cm)) throw domain_error("t_cm must be positive");
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    const auto& c = p.children[i];
    if (!positive_finite(c.omega) || !positive_finite(c.z)) {
      throw domain_error("child " + std::to_string(i + 1) +
                         " must have positive omega and z");
    }
  }
}

enum class Protocol {
  Model1Sequential = 1,
  Model2StaggeredStart = 2,
  Model3SimultaneousStart = 3,
};

inline constexpr Protocol kAllProtocols[] = {Protocol::Model1Sequential,
                                             Protocol::Model2StaggeredStart,
                                             Protocol::Model3SimultaneousStart};

inline int model_number(Protocol p) noexcept { return static_cast<int>(p); }

inline Protocol protocol_from_number(int model) {
  switch (model) {
    case 1: return Protocol::Model1Sequential;
    case 2: return Protocol::Model2StaggeredStart;
    case 3: return Protocol::Model3SimultaneousStart;
    default: throw domain_error("model must be 1, 2 or 3, got " + std::to_string(model));
  }
}

inline std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Model1Sequential: return "model1-sequential";
    case Protocol::Model2StaggeredStart: return "model2-staggered-start";
    case Protocol::Model3SimultaneousStart: return "model3-simultaneous-start";
  }
  return "unknown";
}

/// Growth of the parallel fraction with processor count: scale(n) = 1
/// (Amdahl), n (Gustafson) or n^gamma.
class ScalingLaw {
 public:
  enum class Kind { Amdahl, Gustafson, PowerLaw };

  static ScalingLaw amdahl() { return ScalingLaw(Kind::Amdahl, 0.0); }
  static ScalingLaw gustafson() { return ScalingLaw(Kind::Gustafson, 1.0); }
  static ScalingLaw power_law(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw domain_error("power-law gamma must lie in [0,1]");
    }
    return ScalingLaw(Kind::PowerLaw, gamma);
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }

  [[nodiscard]] double scale(double n) const {
    switch (kind_) {
      case Kind::Amdahl: return 1.0;
      case Kind::Gustafson: return n;
      case Kind::PowerLaw: return std::pow(n, gamma_);
    }
    return 1.0;
  }

  [[nodiscard]] std::string name() const {
    switch (kind_) {
      case Kind::Amdahl: return "amdahl";
      case Kind::Gustafson: return "gustafson";
      case Kind::PowerLaw: return "power";
    }
    return "unknown";
  }

  friend bool operator==(const ScalingLaw&, const ScalingLaw&) = default;

 private:
  ScalingLaw(Kind kind, double gamma) : kind_(kind), gamma_(gamma) {}

  Kind kind_;
  double gamma_;
};

struct Workload {
  double f = 0.0;  // parallelizable fraction
};

inline void validate_fraction(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw domain_error("parallel fraction f must lie in [0,1]");
  }
}

inline void validate(const Workload& w) { validate_fraction(w.f); }

enum class Table1Kind { Heterogeneous, Homogeneous };

inline constexpr std::size_t kTable1Children = 50;

/// Reference platform with the first `n` children of the 50-entry parameter
/// lists: omega0 = 4.2, T_cp = 2, T_cm = 1.5; heterogeneous children step
/// omega and z by 0.2 from (4.2, 2.2), homogeneous children are all (4.2, 2.2).
inline Platform make_table1_platform(Table1Kind kind, std::size_t n) {
  if (n > kTable1Children) {
    throw std::out_of_range("reference platform has at most 50 children, got " +
                            std::to_string(n));
  }
  Platform p{4.2, {}, 2.0, 1.5};
  p.children.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Tenths as integers so the last entries land exactly on 14 and 12.
    const double step = kind == Table1Kind::Heterogeneous ? 2.0 * static_cast<double>(i) : 0.0;
    p.children.push_back({(42.0 + step) / 10.0, (22.0 + step) / 10.0});
  }
  return p;
}

struct OrderedPlatform {
  Platform platform;
  std::vector<std::size_t> permutation;  // new position -> original index (0-based)
};

/// Sorts children by z ascending; ties by omega, then original index.
inline OrderedPlatform order_children(const Platform& platform) {
  std::vector<std::size_t> perm(platform.children.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const auto& ch = platform.children;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (ch[a].z != ch[b].z) return ch[a].z < ch[b].z;
    return ch[a].omega < ch[b].omega;
  });
  OrderedPlatform out{platform, perm};
  for (std::size_t i = 0; i < perm.size(); ++i) out.platform.children[i] = ch[perm[i]];
  return out;
}

/// Parameters of a platform whose children are all identical.
struct HomogeneousParams {
  double omega0 = 0.0;
  double omega = 0.0;
  double z = 0.0;
  double t_cp = 0.0;
  double t_cm = 0.0;
};

inline std::optional<HomogeneousParams> homogeneous_params(const Platform& p) {
  if (p.children.empty()) return std::nullopt;
  const NodeSpec first = p.children.front();
  for (const auto& c : p.children) {
    if (c != first) return std::nullopt;
  }
  return HomogeneousParams{p.omega0, first.omega, first.z, p.t_cp, p.t_cm};
}

// JSON schema: {"omega0": .., "t_cp": .., "t_cm": .., "children": [{"omega": .., "z": ..}, ...]}

inline void to_json(nlohmann::json& j, const NodeSpec& c) {
  j = nlohmann::json{{"omega", c.omega}, {"z", c.z}};
}

inline void to_json(nlohmann::json& j, const Platform& p) {
  j = nlohmann::json{{"omega0", p.omega0},
                     {"t_cp", p.t_cp},
                     {"t_cm", p.t_cm},
                     {"children", p.children}};
}

inline Platform platform_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw domain_error("platform JSON must be an object");
  Platform p;
  try {
    p.omega0 = j.at("omega0").get<double>();
    p.t_cp = j.at("t_cp").get<double>();
    p.t_cm = j.at("t_cm").get<double>();
    for (const auto& c : j.at("children")) {
      p.children.push_back({c.at("omega").get<double>(), c.at("z").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("invalid platform JSON: ") + e.what());
  }
  validate(p);
  return p;
}

inline std::optional<Platform> builtin_platform(std::string_view name) {
  if (name == "table1-hetero") return make_table1_platform(Table1Kind::Heterogeneous, kTable1Children);
  if (name == "table1-homo") return make_table1_platform(Table1Kind::Homogeneous, kTable1Children);
  return std::nullopt;
}

}  // namespace dlt
