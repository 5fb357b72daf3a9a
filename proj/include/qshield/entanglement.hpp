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

#include "qshield/channels.hpp"

namespace qshield {

inline constexpr double kNormalizationTolerance = 1e-12;
/// PT eigenvalues in (-1e-10, 0) count as zero.
inline constexpr double kNegativityClamp = 1e-10;

/// alpha|00> + beta|11> + gamma|22>, normalized within 1e-12.
class PureState {
  public:
    PureState(Complex alpha, Complex beta, Complex gamma);

    /// (|00> + |11> + |22>) / sqrt(3)
    static PureState maximally_entangled();

    Complex alpha() const noexcept { return alpha_; }
    Complex beta() const noexcept { return beta_; }
    Complex gamma() const noexcept { return gamma_; }

    /// |Psi><Psi| in the composite basis, |jk> at index 3j + k.
    DensityMatrix density() const;

    friend bool operator==(const PureState&, const PureState&) = default;

  private:
    Complex alpha_;
    Complex beta_;
    Complex gamma_;
};

DensityMatrix make_state(Complex alpha, Complex beta, Complex gamma);

/// (||rho^T_B||_1 - 1) / 2, the absolute sum of negative PT eigenvalues.
double negativity(const DensityMatrix& rho);

/// n_protected / n_initial; rejects n_initial <= 0.
double negativity_ratio(double n_protected, double n_initial);

} // namespace qshield
