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

#include "dltlaws/closed_form.hpp"
#include "dltlaws/errors.hpp"
#include "dltlaws/platform.hpp"

namespace dlt {

namespace detail {
inline void require_processors(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw domain_error("processor count must be >= 1");
}
}  // namespace detail

/// Single- and n-processor solution times with no overlap between the serial
/// and parallel parts.
struct SerialTimes {
  double t1 = 0.0;
  double tn = 0.0;
  double ts = 0.0;

  [[nodiscard]] double speedup() const { return t1 / tn; }
};

inline SerialTimes serial_times(double f, double ts, double n) {
  validate_fraction(f);
  detail::require_processors(n);
  if (!positive_finite(ts)) throw domain_error("serial time must be positive");
  return {ts, (1.0 - f) * ts + f * ts / n, ts};
}

inline double amdahl(double f, double n) {
  validate_fraction(f);
  detail::require_processors(n);
  return 1.0 / ((1.0 - f) + f / n);
}

inline double gustafson(double f, double n) {
  validate_fraction(f);
  detail::require_processors(n);
  return (1.0 - f) + n * f;
}

/// Parallel part grows by scale(n); the ratio of the grown problem's serial
/// time to its n-processor time. Lies between Amdahl and Gustafson.
inline double scaled_speedup(double f, double n, const ScalingLaw& law) {
  validate_fraction(f);
  detail::require_processors(n);
  switch (law.kind()) {
    case ScalingLaw::Kind::Amdahl: return amdahl(f, n);
    case ScalingLaw::Kind::Gustafson: return gustafson(f, n);
    case ScalingLaw::Kind::PowerLaw: break;
  }
  const double grown = f * law.scale(n);
  return ((1.0 - f) + grown) / ((1.0 - f) + grown / n);
}

struct IntegratedSpeedup {
  double value = 1.0;
  ScalingLaw law = ScalingLaw::amdahl();
  DltSpeedup dlt;
};

namespace detail {
inline void require_dlt(const DltSpeedup& dlt) {
  if (!(dlt.value >= 1.0) || !std::isfinite(dlt.value)) {
    throw domain_error("DLT speedup must be >= 1");
  }
}
}  // namespace detail

/// Amdahl's law with the processor count replaced by the facility's DLT
/// speedup: 1 / ((1-f) + f/S_DLT).
inline IntegratedSpeedup integrated_speedup(double f, const DltSpeedup& dlt) {
  validate_fraction(f);
  detail::require_dlt(dlt);
  return {1.0 / ((1.0 - f) + f / dlt.value), ScalingLaw::amdahl(), dlt};
}

/// (1-f) + f*S_DLT.
inline IntegratedSpeedup integrated_gustafson(double f, const DltSpeedup& dlt) {
  validate_fraction(f);
  detail::require_dlt(dlt);
  return {(1.0 - f) + f * dlt.value, ScalingLaw::gustafson(), dlt};
}

/// Any scaling law evaluated at n = S_DLT.
inline IntegratedSpeedup integrated_scaled(double f, const DltSpeedup& dlt, const ScalingLaw& law) {
  switch (law.kind()) {
    case ScalingLaw::Kind::Amdahl: return integrated_speedup(f, dlt);
    case ScalingLaw::Kind::Gustafson: return integrated_gustafson(f, dlt);
    case ScalingLaw::Kind::PowerLaw: break;
  }
  detail::require_dlt(dlt);
  return {scaled_speedup(f, dlt.value, law), law, dlt};
}

/// (1-f)*ts + f*ts/S_DLT.
inline double integrated_makespan(double f, double ts, const DltSpeedup& dlt) {
  validate_fraction(f);
  detail::require_dlt(dlt);
  if (!positive_finite(ts)) throw domain_error("serial time must be positive");
  return (1.0 - f) * ts + f * ts / dlt.value;
}

/// The other substitution order: the pure Amdahl speedup over `n_children`
/// processors becomes the (real-valued) child count of the homogeneous
/// closed form.
inline double reverse_substitution(double f, std::size_t n_children, const HomogeneousParams& h,
                                   Protocol protocol) {
  const double effective = amdahl(f, static_cast<double>(n_children));
  return speedup_homogeneous(h, effective, protocol).value;
}

inline double reverse_substitution(double f, std::size_t n_children, const Platform& platform,
                                   Protocol protocol) {
  const auto h = homogeneous_params(platform);
  if (!h) {
    throw unsupported_mode_error(
        "reverse substitution needs a homogeneous platform (identical children)");
  }
  return reverse_substitution(f, n_children, *h, protocol);
}

}  // namespace dlt
