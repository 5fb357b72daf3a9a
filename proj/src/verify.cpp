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

#include "qshield/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>

#include "qshield/protection.hpp"

namespace qshield {

namespace {

struct Measurement {
    bool passed;
    double measured;
    double expected;
    std::string criterion;
};

CheckOutcome timed(std::string name, const std::function<Measurement()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Measurement m;
    try {
        m = body();
    } catch (const std::exception& e) {
        m = {false, std::nan(""), std::nan(""), std::string("error: ") + e.what()};
    }
    const auto stop = std::chrono::steady_clock::now();
    return {std::move(name), m.passed, m.measured, m.expected, std::move(m.criterion),
            std::chrono::duration<double, std::milli>(stop - start).count()};
}

PureState esd_state() { return PureState(std::sqrt(3.0 / 8.0), std::sqrt(5.0 / 8.0), 0.0); }

double damped_negativity(const PureState& state, double d) {
    const KrausChannel ch = amplitude_damping_kraus({d, d});
    return negativity(apply_channel_both(state.density(), ch, ch));
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return xs;
}

// Six simplex points (|a|^2, |b|^2, |g|^2) with assorted phases.
std::vector<PureState> simplex_states() {
    const double w[6][3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {3.0 / 8, 5.0 / 8, 0.0},
                            {0.5, 0.3, 0.2},             {0.1, 0.6, 0.3},
                            {0.7, 0.0, 0.3},             {0.25, 0.25, 0.5}};
    std::vector<PureState> out;
    for (int i = 0; i < 6; ++i) {
        const double phase = 0.7 * i;
        out.emplace_back(std::sqrt(w[i][0]), std::polar(std::sqrt(w[i][1]), phase),
                         std::polar(std::sqrt(w[i][2]), -0.5 * phase));
    }
    return out;
}

} // namespace

double find_esd_onset(double lo, double hi, double damping_perturbation) {
    const PureState state = esd_state();
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (damped_negativity(state, mid + damping_perturbation) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

std::vector<CheckOutcome> run_golden_checks(const VerifyOptions& options) {
    const double dp = options.damping_perturbation;
    const PureState maximal = PureState::maximally_entangled();
    const PureState esd = esd_state();
    std::vector<CheckOutcome> checks;

    checks.push_back(timed("N_d(max-entangled, D=0.8)", [&] {
        const double n = damped_negativity(maximal, 0.8 + dp);
        return Measurement{std::abs(n - 0.04) <= 0.005, n, 0.04, "|N - 0.04| <= 0.005"};
    }));

    checks.push_back(timed("scheme one keeps N_r finite as D -> 1", [&] {
        bool bound = true;
        for (double d : grid(0.0, 0.99, 200)) {
            const double dd = d + dp;
            const auto r = run_scheme1(maximal, {dd, dd}, {dd, dd});
            bound = bound && r.n_protected >= r.n_damped - 1e-12;
        }
        const auto end = run_scheme1(maximal, {0.99 + dp, 0.99 + dp}, {0.99 + dp, 0.99 + dp});
        const double ratio = end.n_protected / end.n_damped;
        return Measurement{bound && ratio > 10.0, ratio, 10.0,
                           "N_r/N_d > 10 at D=0.99 and N_r >= N_d on 200-point grid"};
    }));

    checks.push_back(timed("sudden-death onset D*", [&] {
        const double onset = find_esd_onset(0.5, 0.8, dp);
        bool dead = onset <= 0.8;
        for (double d : grid(0.0, 0.99, 200)) {
            if (d < onset) {
                continue;
            }
            const auto r = run_scheme1(esd, {d + dp, d + dp}, {d + dp, d + dp});
            dead = dead && r.n_damped <= 1e-9 && r.n_protected <= 1e-9;
        }
        return Measurement{dead && std::abs(onset - kEsdOnsetDamping) <= 1e-6, onset,
                           kEsdOnsetDamping,
                           "D* <= 0.8, matches regression constant within 1e-6, N_d = N_r = 0 beyond"};
    }));

    for (const auto& [label, state] :
         {std::pair{"maximally entangled", maximal}, std::pair{"sqrt(3/8),sqrt(5/8),0", esd}}) {
        checks.push_back(timed(std::string("scheme two recovery, ") + label, [&] {
            const double d = 0.8 + dp;
            const WeakMeasurementParams wm{0.999, 0.999};
            const auto r = run_scheme2(state, wm, {d, d},
                                       optimal_reversal_scheme2({0.8, 0.8}, wm));
            const double ratio = r.n_protected / r.n_initial;
            return Measurement{ratio >= 0.99, ratio, 0.99, "N_wr/N_i >= 0.99 at D=0.8, p=0.999"};
        }));
    }

    checks.push_back(timed("closed forms vs pipeline (6x6x6 grid)", [&] {
        double worst = 0.0;
        const auto ds = grid(0.0, 0.9, 6);
        const auto ps = grid(0.0, 0.9, 6);
        for (const auto& state : simplex_states()) {
            for (double d : ds) {
                const KrausChannel ch = amplitude_damping_kraus({d + dp, d + dp});
                const DensityMatrix damped = apply_channel_both(state.density(), ch, ch);
                worst = std::max(worst, max_abs_diff(damped.matrix(),
                                                     closed_form_rho_d(state, d).matrix()));
                const auto r1 = run_scheme1(state, {d + dp, d + dp}, {d, d});
                worst = std::max(worst, max_abs_diff(r1.state_protected.matrix(),
                                                     closed_form_rho_r(state, d, d).matrix()));
                for (double p : ps) {
                    const WeakMeasurementParams wm{p, p};
                    const ReversalParams rev = optimal_reversal_scheme2({d, d}, wm);
                    const auto r2 = run_scheme2(state, wm, {d + dp, d + dp}, rev);
                    worst = std::max(worst,
                                     max_abs_diff(r2.state_protected.matrix(),
                                                  closed_form_rho_wr(state, p, d, rev.pr).matrix()));
                }
            }
        }
        return Measurement{worst <= 1e-12, worst, 0.0, "max entrywise deviation <= 1e-12"};
    }));

    checks.push_back(timed("success probabilities vs pipeline traces", [&] {
        double worst = 0.0;
        for (const auto& state : simplex_states()) {
            for (double d : grid(0.0, 0.9, 6)) {
                const auto r1 = run_scheme1(state, {d + dp, d + dp}, {d, d});
                worst = std::max(worst, std::abs(r1.success_probability -
                                                 success_probability_scheme1(state, d)));
                for (double p : grid(0.0, 0.9, 6)) {
                    const WeakMeasurementParams wm{p, p};
                    const auto r2 = run_scheme2(state, wm, {d + dp, d + dp},
                                                optimal_reversal_scheme2({d, d}, wm));
                    worst = std::max(worst, std::abs(r2.success_probability -
                                                     success_probability_scheme2(state, d, p)));
                }
            }
        }
        const double p1 = success_probability_scheme1(maximal, 0.999);
        const double p2 = success_probability_scheme2(maximal, 0.8, 0.999);
        return Measurement{worst <= 1e-12 && p1 < 0.01 && p2 < 0.01, worst, 0.0,
                           "max deviation <= 1e-12; P1(D=0.999) and P2(p=0.999) < 0.01"};
    }));

    checks.push_back(timed("reversal = F M3 F M3 F (10x10 grid)", [] {
        double worst = 0.0;
        const ComplexMatrix f = trit_flip();
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double p = 0.1 * i;
                const double q = 0.1 * j;
                const ComplexMatrix m3 = weak_measurement_operator({p, q}).matrix();
                worst = std::max(worst, max_abs_diff(f * m3 * f * m3 * f,
                                                     reversal_operator({p, q}).matrix()));
            }
        }
        return Measurement{worst <= 1e-12, worst, 0.0, "max deviation <= 1e-12"};
    }));

    return checks;
}

bool print_report(const std::vector<CheckOutcome>& checks, std::ostream& out) {
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        char line[512];
        std::snprintf(line, sizeof line, "[%s] %-44s measured=%-14.8g expected=%-10.6g %8.3f ms  (%s)\n",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.expected,
                      c.millis, c.criterion.c_str());
        out << line;
    }
    out << (all ? "all checks passed\n" : "verification FAILED\n");
    return all;
}

} // namespace qshield
