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

#include <iosfwd>
#include <string>
#include <vector>

namespace qshield {

/// Regression constant: onset of sudden death for sqrt(3/8)|00> + sqrt(5/8)|11>
/// under symmetric damping, found by bisection on N_d(D) > 0.
inline constexpr double kEsdOnsetDamping = 0.7745966685;

struct VerifyOptions {
    /// Added to every simulated damping value; the closed forms and the
    /// expected values are left untouched. Used to confirm the checks bite.
    double damping_perturbation = 0.0;
};

struct CheckOutcome {
    std::string name;
    bool passed;
    double measured;
    double expected;
    std::string criterion;
    double millis;
};

/// Bisection for the smallest D with zero damped negativity, on [lo, hi].
double find_esd_onset(double lo, double hi, double damping_perturbation = 0.0);

std::vector<CheckOutcome> run_golden_checks(const VerifyOptions& options = {});

/// One line per check; returns true when every check passed.
bool print_report(const std::vector<CheckOutcome>& checks, std::ostream& out);

} // namespace qshield
