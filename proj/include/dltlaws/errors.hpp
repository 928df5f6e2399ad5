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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlt {

/// A parameter lies outside the mathematical domain of a law (f outside
/// [0,1], n < 1, non-positive speed, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The platform violates a protocol's feasibility condition. `index()` is the
/// 1-based position of the offending child.
class infeasible_protocol_error : public std::runtime_error {
 public:
  infeasible_protocol_error(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}

  [[nodiscard]] std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Requested evaluation mode is not defined for the given inputs.
class unsupported_mode_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gantt record that cannot be interpreted (missing node, negative
/// interval, ...).
class malformed_schedule_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dlt
