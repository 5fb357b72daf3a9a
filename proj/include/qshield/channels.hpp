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

#include <vector>

#include "qshield/linalg.hpp"

namespace qshield {

inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kCompletenessTolerance = 1e-9;
/// Post-selection probabilities at or below this are treated as degenerate.
inline constexpr double kDegenerateProbability = 1e-12;

/**
 * Validated one-qutrit (3x3) or two-qutrit (9x9) density matrix.
 *
 * Two-qutrit states use the 0-based composite index 3j+k for |j,k>, i.e.
 * the 1-based element rho_{mn} of the usual printed basis lives at
 * (m-1, n-1) here.
 */
class DensityMatrix {
  public:
    /// Checks Hermiticity (1e-9, max-norm), unit trace (1e-9) and smallest
    /// eigenvalue >= -1e-9. Throws InvalidInput otherwise.
    explicit DensityMatrix(ComplexMatrix matrix);

    std::size_t dim() const noexcept { return matrix_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        return matrix_(r, c);
    }

    friend bool operator==(const DensityMatrix&,
                           const DensityMatrix&) = default;

  private:
    ComplexMatrix matrix_;
};

/// Amplitude damping of a V-configuration qutrit: g1 is the decay
/// probability of |1> -> |0>, g2 of |2> -> |0>.
struct DampingParams {
    double g1 = 0.0;
    double g2 = 0.0;
    friend bool operator==(const DampingParams&, const DampingParams&) = default;
};

/// Null-result weak measurement strengths, p on |1>, q on |2>. Both < 1.
struct WeakMeasurementParams {
    double p = 0.0;
    double q = 0.0;
    friend bool operator==(const WeakMeasurementParams&,
                           const WeakMeasurementParams&) = default;
};

/// Reversing measurement strengths; both < 1.
struct ReversalParams {
    double pr = 0.0;
    double qr = 0.0;
    friend bool operator==(const ReversalParams&,
                           const ReversalParams&) = default;
};

void validate(const DampingParams& params);
void validate(const WeakMeasurementParams& params);
void validate(const ReversalParams& params);

/// Trace-preserving CP map given by square Kraus operators of equal size.
class KrausChannel {
  public:
    /// Throws InvalidInput on empty/mismatched operators or when
    /// sum E^dagger E deviates from I by more than 1e-9.
    explicit KrausChannel(std::vector<ComplexMatrix> operators);

    const std::vector<ComplexMatrix>& operators() const noexcept {
        return operators_;
    }
    std::size_t dim() const noexcept { return operators_.front().rows(); }

  private:
    std::vector<ComplexMatrix> operators_;
};

/// One post-selected measurement element M; requires sigma_max(M) <= 1 + 1e-9.
class SelectiveOperation {
  public:
    explicit SelectiveOperation(ComplexMatrix op);

    const ComplexMatrix& matrix() const noexcept { return op_; }
    double largest_singular_value() const;

    /// M / sigma_max(M): the same conditional map with the largest
    /// attainable success probability.
    SelectiveOperation rescaled_to_unit_norm() const;

  private:
    ComplexMatrix op_;
};

struct SelectiveOutcome {
    DensityMatrix state;
    double probability;
};

/// E0 = diag(1, sqrt(1-g1), sqrt(1-g2)), E1 = sqrt(g1)|0><1|,
/// E2 = sqrt(g2)|0><2|. The two decay paths feed distinguishable
/// environment modes.
KrausChannel amplitude_damping_kraus(const DampingParams& params);

/// M3 = diag(1, sqrt(1-p), sqrt(1-q)), the no-click branch.
SelectiveOperation weak_measurement_operator(const WeakMeasurementParams& params);

/// M_r = diag(sqrt((1-pr)(1-qr)), sqrt(1-qr), sqrt(1-pr)).
SelectiveOperation reversal_operator(const ReversalParams& params);

/// Cyclic permutation F|0>=|1>, F|1>=|2>, F|2>=|0>.
ComplexMatrix trit_flip();

/// sum_{j,k} (A_j x B_k) rho (A_j x B_k)^dagger on a 9x9 state.
DensityMatrix apply_channel_both(const DensityMatrix& rho,
                                 const KrausChannel& channel_a,
                                 const KrausChannel& channel_b);

/// Applies M = mA x mB, returns the renormalized state and tr(M rho M^dagger).
/// Throws DegenerateOutcome when the probability is <= 1e-12.
SelectiveOutcome apply_selective_both(const DensityMatrix& rho,
                                      const SelectiveOperation& op_a,
                                      const SelectiveOperation& op_b);

} // namespace qshield
