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
#include <string>

#include "dltlaws/errors.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

/// Divisible-load speedup of a star network: single-root time over the
/// optimal makespan with `children` workers plus the root.
struct DltSpeedup {
  double value = 1.0;
  Protocol protocol = Protocol::Model1Sequential;
  double children = 0.0;  // integral except for homogeneous closed forms
};

namespace detail {

inline void require_simultaneous_start_feasible(const Platform& p, std::size_t i, Protocol protocol) {
  const auto& c = p.children[i];
  if (c.z * p.t_cm > c.omega * p.t_cp) {
    throw infeasible_protocol_error(
        i + 1, std::string(to_string(protocol)) + ": child " + std::to_string(i + 1) +
                   " receives data slower than it computes (z*T_cm > omega*T_cp)");
  }
}

inline void require_count(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw domain_error("processor count must be >= 0");
}

inline void validate(const HomogeneousParams& h) {
  if (!positive_finite(h.omega0) || !positive_finite(h.omega) || !positive_finite(h.z) ||
      !positive_finite(h.t_cp) || !positive_finite(h.t_cm)) {
    throw domain_error("homogeneous parameters must all be positive");
  }
}

}  // namespace detail

/// Sequential distribution. The root feeds one child at a time in the given
/// order; each child computes while its data streams in. Every child must
/// satisfy z*T_cm <= omega*T_cp, otherwise the chain ratio q turns negative
/// (children 1..n-1) or the last child would outrun its data.
inline DltSpeedup speedup_model1(const Platform& p) {
  validate(p);
  const std::size_t n = p.size();
  DltSpeedup out{1.0, Protocol::Model1Sequential, static_cast<double>(n)};
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = p.children[i];
    if (c.omega * p.t_cp - c.z * p.t_cm < 0.0) {
      throw infeasible_protocol_error(
          i + 1, "model1-sequential: child " + std::to_string(i + 1) +
                     " has omega*T_cp < z*T_cm, load chain ratio would be negative");
    }
  }
  long double sum = 1.0L;
  long double chain = 1.0L;
  for (std::size_t i = 1; i < n; ++i) {
    const auto& prev = p.children[i - 1];
    const long double q = (static_cast<long double>(prev.omega) * p.t_cp -
                           static_cast<long double>(prev.z) * p.t_cm) /
                          (static_cast<long double>(p.children[i].omega) * p.t_cp);
    chain *= q;
    sum += chain;
  }
  out.value = static_cast<double>(1.0L + static_cast<long double>(p.omega0) / p.children[0].omega * sum);
  return out;
}

/// Identical children, sigma = z*T_cm/(omega*T_cp) in (0, 1]:
/// S = 1 + (omega0/omega) * (1 - (1-sigma)^n) / sigma. Real n is accepted.
inline DltSpeedup speedup_model1_homogeneous(const HomogeneousParams& h, double n) {
  detail::validate(h);
  detail::require_count(n);
  const double sigma = h.z * h.t_cm / (h.omega * h.t_cp);
  if (sigma > 1.0) {
    throw infeasible_protocol_error(1, "model1-sequential: sigma = z*T_cm/(omega*T_cp) exceeds 1");
  }
  const double value = 1.0 + (h.omega0 / h.omega) * (1.0 - std::pow(1.0 - sigma, n)) / sigma;
  return {value, Protocol::Model1Sequential, n};
}

/// Concurrent distribution, staggered start: 1 + omega0*T_cp * sum 1/(omega_i*T_cp + z_i*T_cm).
inline DltSpeedup speedup_model2(const Platform& p) {
  validate(p);
  long double sum = 0.0L;
  for (const auto& c : p.children) {
    sum += 1.0L / (static_cast<long double>(c.omega) * p.t_cp + static_cast<long double>(c.z) * p.t_cm);
  }
  const long double value = 1.0L + static_cast<long double>(p.omega0) * p.t_cp * sum;
  return {static_cast<double>(value), Protocol::Model2StaggeredStart, static_cast<double>(p.size())};
}

/// 1 + k*n with k = omega0*T_cp/(omega*T_cp + z*T_cm); real n accepted.
inline DltSpeedup speedup_model2_homogeneous(const HomogeneousParams& h, double n) {
  detail::validate(h);
  detail::require_count(n);
  const double k = h.omega0 * h.t_cp / (h.omega * h.t_cp + h.z * h.t_cm);
  return {1.0 + k * n, Protocol::Model2StaggeredStart, n};
}

/// Concurrent distribution, simultaneous start: 1 + omega0 * sum 1/omega_i.
/// Each child must receive data at least as fast as it consumes it.
inline DltSpeedup speedup_model3(const Platform& p) {
  validate(p);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    detail::require_simultaneous_start_feasible(p, i, Protocol::Model3SimultaneousStart);
    sum += 1.0L / p.children[i].omega;
  }
  const long double value = 1.0L + static_cast<long double>(p.omega0) * sum;
  return {static_cast<double>(value), Protocol::Model3SimultaneousStart, static_cast<double>(p.size())};
}

/// 1 + k*n with k = omega0/omega; real n accepted.
inline DltSpeedup speedup_model3_homogeneous(const HomogeneousParams& h, double n) {
  detail::validate(h);
  detail::require_count(n);
  if (h.z * h.t_cm > h.omega * h.t_cp) {
    throw infeasible_protocol_error(
        1, "model3-simultaneous-start: children receive data slower than they compute");
  }
  return {1.0 + h.omega0 / h.omega * n, Protocol::Model3SimultaneousStart, n};
}

inline DltSpeedup speedup_homogeneous(const HomogeneousParams& h, double n, Protocol protocol) {
  switch (protocol) {
    case Protocol::Model1Sequential: return speedup_model1_homogeneous(h, n);
    case Protocol::Model2StaggeredStart: return speedup_model2_homogeneous(h, n);
    case Protocol::Model3SimultaneousStart: return speedup_model3_homogeneous(h, n);
  }
  throw domain_error("unknown protocol");
}

/// Orders children by link speed, then evaluates the protocol's closed form.
inline DltSpeedup speedup(const Platform& platform, Protocol protocol) {
  const Platform p = order_children(platform).platform;
  switch (protocol) {
    case Protocol::Model1Sequential: return speedup_model1(p);
    case Protocol::Model2StaggeredStart: return speedup_model2(p);
    case Protocol::Model3SimultaneousStart: return speedup_model3(p);
  }
  throw domain_error("unknown protocol");
}

}  // namespace dlt
