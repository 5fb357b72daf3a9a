// Copyright 2026 The qshield Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qshield {

/// Input violates a documented precondition (dimensions, parameter ranges,
/// normalization).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative routine failed to converge or produced an out-of-range value.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A post-selected branch has probability at or below the degeneracy
/// threshold, so the conditional state is undefined.
class DegenerateOutcome : public std::runtime_error {
  public:
    DegenerateOutcome(const std::string& what, double probability)
        : std::runtime_error(what), probability_(probability) {}
    double probability() const noexcept { return probability_; }

  private:
    double probability_;
};

/// Sweep configuration is malformed; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qshield
