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

#include "qshield/protection.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qshield/errors.hpp"

namespace qshield {

namespace {

void require_range(double value, const char* name, bool allow_one) {
    const bool ok = std::isfinite(value) && value >= 0.0 &&
                    (allow_one ? value <= 1.0 : value < 1.0);
    if (!ok) {
        throw InvalidInput(std::string(name) + " = " + std::to_string(value) +
                           (allow_one ? " outside [0, 1]" : " outside [0, 1)"));
    }
}

SelectiveOperation reversal_for(const ReversalParams& rev) {
    return reversal_operator(rev).rescaled_to_unit_norm();
}

// Nonzero elements of the state after weak measurement p (q = p), symmetric
// damping D and reversal pr, all identical on both qutrits. p = 0 gives the
// damping + reversal state, and p = pr = 0 the damped state.
DensityMatrix symmetric_closed_form(const PureState& state, double p, double d,
                                    double pr) {
    const Complex a = state.alpha();
    const Complex b = state.beta();
    const Complex g = state.gamma();
    const double a2 = std::norm(a);
    const double b2 = std::norm(b);
    const double g2 = std::norm(g);
    const double w = 1.0 - p;
    const double u = 1.0 - pr;
    const double keep = 1.0 - d;

    const double c = u * u * a2 +
                     w * w * (keep * keep + 2.0 * d * keep * u + d * d * u * u) *
                         (b2 + g2);
    if (c <= kDegenerateProbability) {
        throw DegenerateOutcome("closed form: normalization " +
                                    std::to_string(c) + " is degenerate",
                                c);
    }

    std::array<Complex, 81> e{};
    auto set = [&](int r, int col, Complex v) { e[r * 9 + col] = v / c; };
    auto set_pair = [&](int r, int col, Complex v) {
        set(r, col, v);
        set(col, r, std::conj(v));
    };

    set(0, 0, u * u * (a2 + w * w * d * d * (b2 + g2)));
    set(1, 1, w * w * d * keep * u * b2);
    set(3, 3, w * w * d * keep * u * b2);
    set(2, 2, w * w * d * keep * u * g2);
    set(6, 6, w * w * d * keep * u * g2);
    set(4, 4, w * w * keep * keep * b2);
    set(8, 8, w * w * keep * keep * g2);
    set_pair(0, 4, w * keep * u * a * std::conj(b));
    set_pair(0, 8, w * keep * u * a * std::conj(g));
    set_pair(4, 8, w * w * keep * keep * b * std::conj(g));

    return DensityMatrix(
        ComplexMatrix(9, 9, std::vector<Complex>(e.begin(), e.end())));
}

double excited_weight(const PureState& state) {
    return std::norm(state.beta()) + std::norm(state.gamma());
}

} // namespace

void validate(const AsymmetricConfig& cfg) {
    validate(cfg.damp_a);
    validate(cfg.damp_b);
    validate(cfg.wm_a);
    validate(cfg.wm_b);
}

ReversalParams optimal_reversal_scheme1(const DampingParams& damp) {
    validate(damp);
    ReversalParams rev{damp.g1, damp.g2};
    validate(rev);
    return rev;
}

ReversalParams optimal_reversal_scheme2(const DampingParams& damp,
                                        const WeakMeasurementParams& wm) {
    validate(damp);
    validate(wm);
    ReversalParams rev{wm.p + damp.g1 * (1.0 - wm.p),
                       wm.q + damp.g2 * (1.0 - wm.q)};
    validate(rev);
    return rev;
}

SchemeResult run_scheme1(const PureState& state, const DampingParams& damp,
                         const ReversalParams& rev) {
    return run_scheme1_general(state, AsymmetricConfig{damp, damp, {}, {}}, rev,
                               rev);
}

SchemeResult run_scheme2(const PureState& state, const WeakMeasurementParams& wm,
                         const DampingParams& damp, const ReversalParams& rev) {
    return run_scheme2_general(state, AsymmetricConfig{damp, damp, wm, wm}, rev,
                               rev);
}

SchemeResult run_scheme1_general(const PureState& state,
                                 const AsymmetricConfig& cfg) {
    return run_scheme1_general(state, cfg, optimal_reversal_scheme1(cfg.damp_a),
                               optimal_reversal_scheme1(cfg.damp_b));
}

SchemeResult run_scheme1_general(const PureState& state,
                                 const AsymmetricConfig& cfg,
                                 const ReversalParams& rev_a,
                                 const ReversalParams& rev_b) {
    const KrausChannel channel_a = amplitude_damping_kraus(cfg.damp_a);
    const KrausChannel channel_b = amplitude_damping_kraus(cfg.damp_b);
    const SelectiveOperation reverse_a = reversal_for(rev_a);
    const SelectiveOperation reverse_b = reversal_for(rev_b);

    const DensityMatrix initial = state.density();
    DensityMatrix damped = apply_channel_both(initial, channel_a, channel_b);
    SelectiveOutcome reversed = apply_selective_both(damped, reverse_a, reverse_b);

    return SchemeResult{negativity(initial),
                        negativity(damped),
                        negativity(reversed.state),
                        reversed.probability,
                        std::move(damped),
                        std::move(reversed.state)};
}

SchemeResult run_scheme2_general(const PureState& state,
                                 const AsymmetricConfig& cfg) {
    return run_scheme2_general(state, cfg,
                               optimal_reversal_scheme2(cfg.damp_a, cfg.wm_a),
                               optimal_reversal_scheme2(cfg.damp_b, cfg.wm_b));
}

SchemeResult run_scheme2_general(const PureState& state,
                                 const AsymmetricConfig& cfg,
                                 const ReversalParams& rev_a,
                                 const ReversalParams& rev_b) {
    const KrausChannel channel_a = amplitude_damping_kraus(cfg.damp_a);
    const KrausChannel channel_b = amplitude_damping_kraus(cfg.damp_b);
    const SelectiveOperation weak_a = weak_measurement_operator(cfg.wm_a);
    const SelectiveOperation weak_b = weak_measurement_operator(cfg.wm_b);
    const SelectiveOperation reverse_a = reversal_for(rev_a);
    const SelectiveOperation reverse_b = reversal_for(rev_b);

    const DensityMatrix initial = state.density();
    DensityMatrix damped = apply_channel_both(initial, channel_a, channel_b);

    const SelectiveOutcome weak = apply_selective_both(initial, weak_a, weak_b);
    const DensityMatrix weak_damped =
        apply_channel_both(weak.state, channel_a, channel_b);
    SelectiveOutcome reversed =
        apply_selective_both(weak_damped, reverse_a, reverse_b);

    return SchemeResult{negativity(initial),
                        negativity(damped),
                        negativity(reversed.state),
                        weak.probability * reversed.probability,
                        std::move(damped),
                        std::move(reversed.state)};
}

double success_probability_scheme1(const PureState& state, double damping) {
    require_range(damping, "D", false);
    const double d = damping;
    const double keep = 1.0 - d;
    return keep * keep *
           (1.0 + excited_weight(state) * (2.0 * d + d * d));
}

double success_probability_scheme2(const PureState& state, double damping,
                                   double weak_strength) {
    require_range(damping, "D", false);
    require_range(weak_strength, "p", false);
    const double d = damping;
    const double pbar = 1.0 - weak_strength;
    const double keep = 1.0 - d;
    return keep * keep * pbar * pbar *
           (1.0 + excited_weight(state) *
                      (2.0 * d * pbar + d * d * pbar * pbar));
}

DensityMatrix closed_form_rho_d(const PureState& state, double damping) {
    require_range(damping, "D", true);
    return symmetric_closed_form(state, 0.0, damping, 0.0);
}

DensityMatrix closed_form_rho_r(const PureState& state, double damping,
                                double reversal) {
    require_range(damping, "D", false);
    require_range(reversal, "pr", false);
    return symmetric_closed_form(state, 0.0, damping, reversal);
}

DensityMatrix closed_form_rho_wr(const PureState& state, double weak_strength,
                                 double damping, double reversal) {
    require_range(weak_strength, "p", false);
    require_range(damping, "D", false);
    require_range(reversal, "pr", false);
    return symmetric_closed_form(state, weak_strength, damping, reversal);
}

} // namespace qshield
