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
#include "qshield/entanglement.hpp"

namespace qshield {

/// Per-qutrit parameters for the asymmetric schemes. Qutrit A carries
/// (d1, D1) as dampA.{g1,g2}, qutrit B carries (d2, D2).
struct AsymmetricConfig {
    DampingParams damp_a;
    DampingParams damp_b;
    WeakMeasurementParams wm_a;
    WeakMeasurementParams wm_b;
    friend bool operator==(const AsymmetricConfig&,
                           const AsymmetricConfig&) = default;
};

void validate(const AsymmetricConfig& cfg);

struct SchemeResult {
    double n_initial;
    double n_damped;
    double n_protected;
    /// Product of every post-selection probability along the pipeline.
    double success_probability;
    /// Initial state through the damping channel alone (unprotected baseline).
    DensityMatrix state_damped;
    DensityMatrix state_protected;
};

/// pr = g1, qr = g2. Rejects g1 or g2 equal to 1.
ReversalParams optimal_reversal_scheme1(const DampingParams& damp);

/// pr = p + g1 (1-p), qr = q + g2 (1-q).
ReversalParams optimal_reversal_scheme2(const DampingParams& damp,
                                        const WeakMeasurementParams& wm);

// The reversal is applied as reversal_operator(rev).rescaled_to_unit_norm()
// in every pipeline below. The rescaling leaves the conditional state
// unchanged and makes the success probability maximal; for pr = qr it is
// diag(sqrt(1-pr), 1, 1).

/// damping (both qutrits) -> reversal (both qutrits)
SchemeResult run_scheme1(const PureState& state, const DampingParams& damp,
                         const ReversalParams& rev);

/// weak measurement -> damping -> reversal, identical on both qutrits
SchemeResult run_scheme2(const PureState& state, const WeakMeasurementParams& wm,
                         const DampingParams& damp, const ReversalParams& rev);

/// Per-qutrit damping with per-qutrit optimal reversal. Weak measurement
/// fields of cfg are ignored.
SchemeResult run_scheme1_general(const PureState& state,
                                 const AsymmetricConfig& cfg);
SchemeResult run_scheme1_general(const PureState& state,
                                 const AsymmetricConfig& cfg,
                                 const ReversalParams& rev_a,
                                 const ReversalParams& rev_b);

SchemeResult run_scheme2_general(const PureState& state,
                                 const AsymmetricConfig& cfg);
SchemeResult run_scheme2_general(const PureState& state,
                                 const AsymmetricConfig& cfg,
                                 const ReversalParams& rev_a,
                                 const ReversalParams& rev_b);

/// (1-D)^2 [1 + (|beta|^2+|gamma|^2)(2D + D^2)], D in [0,1).
double success_probability_scheme1(const PureState& state, double damping);

/// (1-D)^2 pbar^2 [1 + (|beta|^2+|gamma|^2)(2D pbar + D^2 pbar^2)].
double success_probability_scheme2(const PureState& state, double damping,
                                   double weak_strength);

/// Symmetric damping D on both levels of both qutrits, written out element
/// by element. D in [0,1].
DensityMatrix closed_form_rho_d(const PureState& state, double damping);

/// Damping D then reversal of strength pr (qr = pr), normalized by
/// C1 = (1-pr)^2|a|^2 + [(1-D)^2 + 2D(1-D)(1-pr) + D^2(1-pr)^2](|b|^2+|g|^2).
DensityMatrix closed_form_rho_r(const PureState& state, double damping,
                                double reversal);

/// Weak measurement p (q = p), damping D, reversal pr; normalized by
/// C2 = (1-pr)^2|a|^2 + (1-p)^2[(1-D)^2 + 2D(1-D)(1-pr) + D^2(1-pr)^2](|b|^2+|g|^2).
DensityMatrix closed_form_rho_wr(const PureState& state, double weak_strength,
                                 double damping, double reversal);

} // namespace qshield
