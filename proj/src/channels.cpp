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

#include "qshield/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshield/errors.hpp"

namespace qshield {

namespace {

void require_unit_interval(double value, const char* name, bool allow_one) {
    const bool ok = std::isfinite(value) && value >= 0.0 &&
                    (allow_one ? value <= 1.0 : value < 1.0);
    if (!ok) {
        throw InvalidInput(std::string(name) + " = " + std::to_string(value) +
                           (allow_one ? " outside [0, 1]" : " outside [0, 1)"));
    }
}

void require_3x3(const ComplexMatrix& m, const char* what) {
    if (m.rows() != 3 || m.cols() != 3) {
        throw InvalidInput(std::string(what) + ": expected 3x3 operator");
    }
}

void require_9x9(const DensityMatrix& rho, const char* what) {
    if (rho.dim() != 9) {
        throw InvalidInput(std::string(what) + ": expected a two-qutrit state");
    }
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != 3 && matrix_.rows() != 9) {
        throw InvalidInput("DensityMatrix: dimension must be 3 or 9");
    }
    if (!matrix_.is_square()) {
        throw InvalidInput("DensityMatrix: matrix is not square");
    }
    if (!is_hermitian(matrix_)) {
        throw InvalidInput("DensityMatrix: not Hermitian");
    }
    const Complex tr = trace(matrix_);
    if (std::abs(tr - Complex{1.0}) > kTraceTolerance) {
        throw InvalidInput("DensityMatrix: trace " + std::to_string(tr.real()) +
                           " != 1");
    }
    const double smallest = hermitian_eigen(matrix_).eigenvalues.front();
    if (smallest < -kPsdTolerance) {
        throw InvalidInput("DensityMatrix: negative eigenvalue " +
                           std::to_string(smallest));
    }
}

void validate(const DampingParams& params) {
    require_unit_interval(params.g1, "damping g1", true);
    require_unit_interval(params.g2, "damping g2", true);
}

void validate(const WeakMeasurementParams& params) {
    require_unit_interval(params.p, "weak measurement p", false);
    require_unit_interval(params.q, "weak measurement q", false);
}

void validate(const ReversalParams& params) {
    require_unit_interval(params.pr, "reversal pr", false);
    require_unit_interval(params.qr, "reversal qr", false);
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
    if (operators_.empty()) {
        throw InvalidInput("KrausChannel: no operators");
    }
    const std::size_t n = operators_.front().rows();
    ComplexMatrix sum = ComplexMatrix::zeros(n, n);
    for (const auto& op : operators_) {
        if (!op.is_square() || op.rows() != n) {
            throw InvalidInput("KrausChannel: operators must share one square dimension");
        }
        sum = sum + dagger(op) * op;
    }
    const double err = max_abs_diff(sum, ComplexMatrix::identity(n));
    if (err > kCompletenessTolerance) {
        throw InvalidInput("KrausChannel: completeness violated by " +
                           std::to_string(err));
    }
}

SelectiveOperation::SelectiveOperation(ComplexMatrix op) : op_(std::move(op)) {
    if (!op_.is_square()) {
        throw InvalidInput("SelectiveOperation: operator is not square");
    }
    const double sigma = largest_singular_value();
    if (sigma > 1.0 + 1e-9) {
        throw InvalidInput("SelectiveOperation: largest singular value " +
                           std::to_string(sigma) + " exceeds 1");
    }
}

double SelectiveOperation::largest_singular_value() const {
    const auto eig = hermitian_eigen(hermitian_part(dagger(op_) * op_));
    return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

SelectiveOperation SelectiveOperation::rescaled_to_unit_norm() const {
    const double sigma = largest_singular_value();
    if (sigma <= 0.0) {
        throw DegenerateOutcome("SelectiveOperation: zero operator", 0.0);
    }
    return SelectiveOperation(scale(op_, 1.0 / sigma));
}

KrausChannel amplitude_damping_kraus(const DampingParams& params) {
    validate(params);
    const double g1 = params.g1;
    const double g2 = params.g2;
    ComplexMatrix e0 =
        ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - g1), std::sqrt(1.0 - g2)});
    ComplexMatrix e1{{0.0, std::sqrt(g1), 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    ComplexMatrix e2{{0.0, 0.0, std::sqrt(g2)}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    return KrausChannel({std::move(e0), std::move(e1), std::move(e2)});
}

SelectiveOperation weak_measurement_operator(const WeakMeasurementParams& params) {
    validate(params);
    return SelectiveOperation(ComplexMatrix::diagonal(
        {1.0, std::sqrt(1.0 - params.p), std::sqrt(1.0 - params.q)}));
}

SelectiveOperation reversal_operator(const ReversalParams& params) {
    validate(params);
    const double pr = params.pr;
    const double qr = params.qr;
    return SelectiveOperation(ComplexMatrix::diagonal(
        {std::sqrt((1.0 - pr) * (1.0 - qr)), std::sqrt(1.0 - qr),
         std::sqrt(1.0 - pr)}));
}

ComplexMatrix trit_flip() {
    return ComplexMatrix{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
}

DensityMatrix apply_channel_both(const DensityMatrix& rho,
                                 const KrausChannel& channel_a,
                                 const KrausChannel& channel_b) {
    require_9x9(rho, "apply_channel_both");
    if (channel_a.dim() != 3 || channel_b.dim() != 3) {
        throw InvalidInput("apply_channel_both: channels must act on qutrits");
    }
    ComplexMatrix out = ComplexMatrix::zeros(9, 9);
    for (const auto& ea : channel_a.operators()) {
        for (const auto& eb : channel_b.operators()) {
            const ComplexMatrix k = kron(ea, eb);
            out = out + k * rho.matrix() * dagger(k);
        }
    }
    return DensityMatrix(hermitian_part(out));
}

SelectiveOutcome apply_selective_both(const DensityMatrix& rho,
                                      const SelectiveOperation& op_a,
                                      const SelectiveOperation& op_b) {
    require_9x9(rho, "apply_selective_both");
    require_3x3(op_a.matrix(), "apply_selective_both");
    require_3x3(op_b.matrix(), "apply_selective_both");
    const ComplexMatrix m = kron(op_a.matrix(), op_b.matrix());
    const ComplexMatrix unnormalized = hermitian_part(m * rho.matrix() * dagger(m));
    const double raw = trace(unnormalized).real();
    if (raw < -1e-12 || raw > 1.0 + 1e-9 || !std::isfinite(raw)) {
        throw NumericalFailure("apply_selective_both: probability " +
                               std::to_string(raw) + " out of range");
    }
    const double probability = std::clamp(raw, 0.0, 1.0);
    if (probability <= kDegenerateProbability) {
        throw DegenerateOutcome("apply_selective_both: outcome probability " +
                                    std::to_string(probability) +
                                    " is degenerate",
                                probability);
    }
    return {DensityMatrix(scale(unnormalized, 1.0 / raw)), probability};
}

} // namespace qshield
