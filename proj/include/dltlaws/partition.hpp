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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dltlaws/closed_form.hpp"
#include "dltlaws/errors.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

/// Optimal split of the unit load. alphas[0] is the root's share; the root
/// computes from time 0 to the makespan, so makespan = alphas[0]*omega0*T_cp.
struct Partition {
  std::vector<double> alphas;
  double makespan = 0.0;
  Protocol protocol = Protocol::Model1Sequential;
};

namespace detail {

inline void check_feasible(const Platform& p, Protocol protocol) {
  // The closed forms carry the feasibility rules; reuse them.
  switch (protocol) {
    case Protocol::Model1Sequential: (void)speedup_model1(p); break;
    case Protocol::Model2StaggeredStart: validate(p); break;
    case Protocol::Model3SimultaneousStart: (void)speedup_model3(p); break;
  }
}

inline Partition normalized(std::vector<double> weights, const Platform& p, Protocol protocol) {
  long double total = 0.0L;
  for (double w : weights) total += w;
  for (double& w : weights) w = static_cast<double>(w / total);
  const double makespan = weights[0] * p.omega0 * p.t_cp;
  return {std::move(weights), makespan, protocol};
}

}  // namespace detail

/// Equal-finish-time fractions from the per-protocol recursion, children in
/// the given order. Unnormalized shares relative to alpha_0 = 1 are built
/// first and divided by their sum once.
inline Partition partition_recursive(const Platform& p, Protocol protocol) {
  detail::check_feasible(p, protocol);
  const std::size_t n = p.size();
  std::vector<double> w(n + 1);
  w[0] = 1.0;
  const double root_time = p.omega0 * p.t_cp;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& c = p.children[i - 1];
    switch (protocol) {
      case Protocol::Model1Sequential:
        if (i == 1) {
          w[i] = p.omega0 / c.omega;
        } else {
          const auto& prev = p.children[i - 2];
          w[i] = w[i - 1] * (prev.omega * p.t_cp - prev.z * p.t_cm) / (c.omega * p.t_cp);
        }
        break;
      case Protocol::Model2StaggeredStart:
        w[i] = root_time / (c.omega * p.t_cp + c.z * p.t_cm);
        break;
      case Protocol::Model3SimultaneousStart:
        w[i] = p.omega0 / c.omega;
        break;
    }
  }
  return detail::normalized(std::move(w), p, protocol);
}

/// Same contract as partition_recursive, obtained by assembling the
/// (n+1)x(n+1) system {sum alpha = 1; finish_i(alpha) = alpha_0*omega0*T_cp}
/// and solving it with partially pivoted LU.
inline Partition partition_linear_solve(const Platform& p, Protocol protocol) {
  detail::check_feasible(p, protocol);
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  a.row(0).setOnes();
  b(0) = 1.0;
  const double root_time = p.omega0 * p.t_cp;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const auto& c = p.children[static_cast<std::size_t>(i - 1)];
    a(i, 0) = -root_time;
    switch (protocol) {
      case Protocol::Model1Sequential:
        // Child i waits for the transmissions of children 1..i-1.
        for (Eigen::Index l = 1; l < i; ++l) {
          a(i, l) = p.children[static_cast<std::size_t>(l - 1)].z * p.t_cm;
        }
        a(i, i) = c.omega * p.t_cp;
        break;
      case Protocol::Model2StaggeredStart:
        a(i, i) = c.z * p.t_cm + c.omega * p.t_cp;
        break;
      case Protocol::Model3SimultaneousStart:
        a(i, i) = c.omega * p.t_cp;
        break;
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-14)) {
    throw numeric_error("equal-finish-time system is singular or ill-conditioned");
  }
  const Eigen::VectorXd x = lu.solve(b);
  std::vector<double> alphas(x.data(), x.data() + x.size());
  for (double& v : alphas) {
    if (v < 0.0 && v > -1e-15) v = 0.0;  // round-off around idle children
  }
  const double makespan = alphas[0] * root_time;
  return {std::move(alphas), makespan, protocol};
}

/// T(1)/T(n) = omega0*T_cp / makespan.
inline DltSpeedup speedup_from_partition(const Partition& partition, const Platform& p) {
  const double value = p.omega0 * p.t_cp / partition.makespan;
  return {value, partition.protocol, static_cast<double>(partition.alphas.size() - 1)};
}

inline void to_json(nlohmann::json& j, const Partition& part) {
  j = nlohmann::json{{"model", model_number(part.protocol)},
                     {"protocol", to_string(part.protocol)},
                     {"alphas", part.alphas},
                     {"makespan", part.makespan}};
}

}  // namespace dlt
