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

#include "qshield/entanglement.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qshield/errors.hpp"

namespace qshield {

PureState::PureState(Complex alpha, Complex beta, Complex gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
    const double norm = std::norm(alpha) + std::norm(beta) + std::norm(gamma);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormalizationTolerance) {
        throw InvalidInput("PureState: |alpha|^2+|beta|^2+|gamma|^2 = " +
                           std::to_string(norm) + ", expected 1");
    }
}

PureState PureState::maximally_entangled() {
    const double a = 1.0 / std::sqrt(3.0);
    return PureState(a, a, a);
}

DensityMatrix PureState::density() const {
    std::array<Complex, 9> v{};
    v[0] = alpha_;
    v[4] = beta_;
    v[8] = gamma_;
    return DensityMatrix(ComplexMatrix::outer(v));
}

DensityMatrix make_state(Complex alpha, Complex beta, Complex gamma) {
    return PureState(alpha, beta, gamma).density();
}

double negativity(const DensityMatrix& rho) {
    if (rho.dim() != 9) {
        throw InvalidInput("negativity: expected a two-qutrit state");
    }
    const auto eig = hermitian_eigen(partial_transpose_b(rho.matrix()));
    double sum = 0.0;
    for (double lambda : eig.eigenvalues) {
        if (lambda <= -kNegativityClamp) {
            sum -= lambda;
        }
    }
    return sum;
}

double negativity_ratio(double n_protected, double n_initial) {
    if (!(n_initial > 0.0)) {
        throw InvalidInput("negativity_ratio: initial negativity must be positive");
    }
    return n_protected / n_initial;
}

} // namespace qshield
