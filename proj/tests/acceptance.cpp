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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qshield/channels.hpp"
#include "qshield/entanglement.hpp"
#include "qshield/protection.hpp"
#include "qshield/sweep.hpp"
#include "qshield/verify.hpp"

#ifndef QSHIELD_CONFIG_DIR
#define QSHIELD_CONFIG_DIR "configs"
#endif

using namespace qshield;

namespace {

struct Verdict {
    bool passed;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const PureState kMaximal = PureState::maximally_entangled();
const PureState kEsdProne(std::sqrt(3.0 / 8.0), std::sqrt(5.0 / 8.0), 0.0);

std::vector<double> d_grid() {
    std::vector<double> xs(200);
    for (int i = 0; i < 200; ++i) {
        xs[static_cast<std::size_t>(i)] = 0.99 * i / 199.0;
    }
    return xs;
}

std::vector<double> six(double hi) {
    std::vector<double> xs(6);
    for (int i = 0; i < 6; ++i) {
        xs[static_cast<std::size_t>(i)] = hi * i / 5.0;
    }
    return xs;
}

// Six states spread over the amplitude simplex, with phases.
std::vector<PureState> six_states() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PureState> states{kMaximal, kEsdProne};
    while (states.size() < 6) {
        const double w0 = u(rng), w1 = u(rng), w2 = u(rng);
        const double t = w0 + w1 + w2;
        states.emplace_back(std::sqrt(w0 / t), std::polar(std::sqrt(w1 / t), 6.0 * u(rng)),
                            std::polar(std::sqrt(w2 / t), 6.0 * u(rng)));
    }
    return states;
}

Verdict golden_value() {
    const auto start = Clock::now();
    const auto ch = amplitude_damping_kraus({0.8, 0.8});
    const double nd = negativity(apply_channel_both(kMaximal.density(), ch, ch));
    const double ms = millis_since(start);
    const bool ok = std::abs(nd - 0.04) <= 0.005 && ms < 1.0;
    return {ok, fmt("N_d=%.10f target 0.04 +/- 0.005, %.3f ms (limit 1 ms)", nd, ms)};
}

Verdict finite_reversal() {
    bool dominated = true;
    double n_d = 0.0, n_r = 0.0;
    for (double d : d_grid()) {
        const auto r = run_scheme1(kMaximal, {d, d}, optimal_reversal_scheme1({d, d}));
        dominated = dominated && r.n_protected >= r.n_damped - 1e-12;
        n_d = r.n_damped;
        n_r = r.n_protected;
    }
    return {dominated && n_r > 10.0 * n_d,
            fmt("D=0.99: N_r=%.6f, N_d=%.3e, N_r/N_d=%.1f (> 10); N_r >= N_d on 200 points: %s", n_r, n_d,
                n_r / n_d, dominated ? "yes" : "no")};
}

Verdict esd_existence() {
    const double onset = find_esd_onset(0.0, 0.99);
    bool dead = true;
    int points = 0;
    for (double d : d_grid()) {
        if (d < onset) {
            continue;
        }
        const auto r = run_scheme1(kEsdProne, {d, d}, optimal_reversal_scheme1({d, d}));
        dead = dead && r.n_damped <= 1e-9 && r.n_protected <= 1e-9;
        ++points;
    }
    const bool ok = onset <= 0.8 && std::abs(onset - kEsdOnsetDamping) <= 1e-9 && dead && points > 0;
    return {ok, fmt("D*=%.10f (regression %.10f, <= 0.8); N_d = N_r = 0 on all %d grid points beyond: %s", onset,
                    kEsdOnsetDamping, points, dead ? "yes" : "no")};
}

Verdict full_recovery() {
    const WeakMeasurementParams wm{0.999, 0.999};
    const auto rev = optimal_reversal_scheme2({0.8, 0.8}, wm);
    const auto a = run_scheme2(kMaximal, wm, {0.8, 0.8}, rev);
    const auto b = run_scheme2(kEsdProne, wm, {0.8, 0.8}, rev);
    const double ra = negativity_ratio(a.n_protected, a.n_initial);
    const double rb = negativity_ratio(b.n_protected, b.n_initial);
    return {ra >= 0.99 && rb >= 0.99,
            fmt("N_wr/N_i at D=0.8, p=0.999: maximal %.6f, (sqrt(3/8), sqrt(5/8), 0) %.6f (>= 0.99)", ra, rb)};
}

Verdict closed_forms() {
    const auto start = Clock::now();
    double worst = 0.0;
    double worst_slot = 0.0;
    int cases = 0;
    for (const auto& s : six_states()) {
        for (double d : six(0.95)) {
            for (double x : six(0.95)) {
                const auto s1 = run_scheme1(s, {d, d}, {x, x});
                worst = std::max(worst, max_abs_diff(s1.state_damped.matrix(), closed_form_rho_d(s, d).matrix()));
                worst = std::max(worst,
                                 max_abs_diff(s1.state_protected.matrix(), closed_form_rho_r(s, d, x).matrix()));

                const WeakMeasurementParams wm{x, x};
                const double pr = optimal_reversal_scheme2({d, d}, wm).pr;
                const auto s2 = run_scheme2(s, wm, {d, d}, {pr, pr});
                const auto rho = closed_form_rho_wr(s, x, d, pr);
                worst = std::max(worst, max_abs_diff(s2.state_protected.matrix(), rho.matrix()));

                // Corrected gamma-decay population slots (0,2) and (2,0).
                const double a2 = std::norm(s.alpha());
                const double bg = std::norm(s.beta()) + std::norm(s.gamma());
                const double u = 1.0 - pr;
                const double w = (1 - x) * (1 - x);
                const double c2 = u * u * a2 + w * ((1 - d) * (1 - d) + 2 * d * (1 - d) * u + d * d * u * u) * bg;
                const double slot = w * d * (1 - d) * u * std::norm(s.gamma()) / c2;
                worst_slot = std::max({worst_slot, std::abs(rho(2, 2) - slot), std::abs(rho(6, 6) - slot)});
                cases += 3;
            }
        }
    }
    const double ms = millis_since(start);
    const bool ok = worst <= 1e-12 && worst_slot <= 1e-12 && ms < 1000.0;
    return {ok, fmt("%d state comparisons, max deviation %.3e, rho33/rho77 slot deviation %.3e (<= 1e-12), "
                    "%.1f ms (limit 1000 ms)",
                    cases, worst, worst_slot, ms)};
}

Verdict success_probabilities() {
    double worst = 0.0;
    for (const auto& s : six_states()) {
        for (double d : six(0.95)) {
            for (double p : six(0.95)) {
                const WeakMeasurementParams wm{p, p};
                const double p1 = run_scheme1(s, {d, d}, {d, d}).success_probability;
                const double p2 = run_scheme2(s, wm, {d, d}, optimal_reversal_scheme2({d, d}, wm)).success_probability;
                worst = std::max({worst, std::abs(p1 - success_probability_scheme1(s, d)),
                                  std::abs(p2 - success_probability_scheme2(s, d, p))});
            }
        }
    }
    double p1_end = 0.0, p2_end = 0.0;
    for (const auto& s : {kMaximal, kEsdProne}) {
        p1_end = std::max(p1_end, success_probability_scheme1(s, 0.999));
        for (double d : {0.0, 0.5, 0.8}) {
            p2_end = std::max(p2_end, success_probability_scheme2(s, d, 0.999));
        }
    }
    return {worst <= 1e-12 && p1_end < 0.01 && p2_end < 0.01,
            fmt("formula vs pipeline max deviation %.3e (<= 1e-12); P1(D=0.999)=%.3e, P2(p=0.999)<=%.3e (< 0.01)",
                worst, p1_end, p2_end)};
}

Verdict reversal_decomposition() {
    const ComplexMatrix f = trit_flip();
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double p = 0.1 * i;
            const double q = 0.1 * j;
            const ComplexMatrix m3 = weak_measurement_operator({p, q}).matrix();
            worst = std::max(worst, max_abs_diff(f * m3 * f * m3 * f, reversal_operator({p, q}).matrix()));
        }
    }
    return {worst <= 1e-12, fmt("max |F M3 F M3 F - M_r| over 100 (p, q) points: %.3e (<= 1e-12)", worst)};
}

Verdict property_suites() {
    constexpr int kInstances = 1000;
    const auto start = Clock::now();
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto strength = [&] { return 0.999 * u(rng); };

    int completeness_fail = 0, preserve_fail = 0, involution_fail = 0, unitary_fail = 0, creation_fail = 0;

    for (int i = 0; i < kInstances; ++i) {
        const KrausChannel ch = amplitude_damping_kraus({u(rng), u(rng)});
        ComplexMatrix sum = ComplexMatrix::zeros(3, 3);
        for (const auto& e : ch.operators()) {
            sum = sum + dagger(e) * e;
        }
        completeness_fail += max_abs_diff(sum, ComplexMatrix::identity(3)) > 1e-12;
    }

    for (int i = 0; i < kInstances; ++i) {
        const DensityMatrix rho(oracle::from_eigen(oracle::random_density(rng, 9)));
        const auto ka = amplitude_damping_kraus({u(rng), u(rng)});
        const auto kb = amplitude_damping_kraus({u(rng), u(rng)});
        const ComplexMatrix out = apply_channel_both(rho, ka, kb).matrix();
        const bool ok = std::abs(trace(out) - 1.0) <= 1e-12 && is_hermitian(out, 1e-12) &&
                        hermitian_eigen(out).eigenvalues.front() >= -1e-12;
        preserve_fail += !ok;
    }

    for (int i = 0; i < kInstances; ++i) {
        const oracle::Mat g = oracle::random_complex(rng, 9, 9);
        const ComplexMatrix h = oracle::from_eigen(0.5 * (g + g.adjoint()));
        involution_fail += !(partial_transpose_b(partial_transpose_b(h)) == h);
    }

    const oracle::Mat anchor = oracle::pure_state(std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2));
    for (int i = 0; i < kInstances; ++i) {
        const oracle::Mat rho = 0.3 * oracle::random_density(rng, 9) + 0.7 * anchor;
        const oracle::Mat v = oracle::kron(oracle::random_unitary(rng, 3), oracle::random_unitary(rng, 3));
        oracle::Mat rotated = v * rho * v.adjoint();
        rotated = 0.5 * (rotated + rotated.adjoint());
        const double before = negativity(DensityMatrix(oracle::from_eigen(rho)));
        const double after = negativity(DensityMatrix(oracle::from_eigen(rotated)));
        unitary_fail += std::abs(before - after) > 1e-9;
    }

    for (int i = 0; i < kInstances; ++i) {
        const oracle::Mat prod = oracle::kron(oracle::random_density(rng, 3), oracle::random_density(rng, 3));
        const DensityMatrix rho(oracle::from_eigen(prod));
        const auto damped = apply_channel_both(rho, amplitude_damping_kraus({u(rng), u(rng)}),
                                               amplitude_damping_kraus({u(rng), u(rng)}));
        const auto measured = apply_selective_both(damped, weak_measurement_operator({strength(), strength()}),
                                                   reversal_operator({strength(), strength()}));
        const PureState ground(std::polar(1.0, 6.0 * u(rng)), 0.0, 0.0);
        const AsymmetricConfig cfg{{u(rng), u(rng)}, {u(rng), u(rng)}, {strength(), strength()},
                                   {strength(), strength()}};
        const auto r = run_scheme2_general(ground, cfg);
        const bool ok = negativity(rho) <= 1e-9 && negativity(damped) <= 1e-9 &&
                        negativity(measured.state) <= 1e-9 && r.n_protected <= 1e-9;
        creation_fail += !ok;
    }

    const double ms = millis_since(start);
    const int failures = completeness_fail + preserve_fail + involution_fail + unitary_fail + creation_fail;
    return {failures == 0 && ms < 30000.0,
            fmt("%d instances each; failures: completeness %d, trace/Hermitian/PSD %d, PT involution %d, "
                "local-unitary invariance %d, no creation %d; %.0f ms (limit 30000 ms)",
                kInstances, completeness_fail, preserve_fail, involution_fail, unitary_fail, creation_fail, ms)};
}

Verdict determinism() {
    auto csv = [](const SweepSpec& spec, unsigned workers) {
        std::ostringstream out;
        emit_csv(run_sweep(spec, workers).rows, out);
        return out.str();
    };
    int configs = 0, mismatches = 0;
    for (const char* name : {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b"}) {
        const SweepSpec spec = load_sweep_spec(std::string(QSHIELD_CONFIG_DIR) + "/" + name + ".json");
        const std::string first = csv(spec, 1);
        mismatches += first != csv(spec, 1);
        mismatches += first != csv(spec, 4);
        ++configs;
    }
    return {mismatches == 0,
            fmt("%d configs: serial twice and serial vs 4 workers, %d byte mismatches", configs, mismatches)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"golden value N_d(D=0.8)", golden_value},
        {"finite reversal as D -> 1", finite_reversal},
        {"sudden-death onset", esd_existence},
        {"full recovery as p -> 1", full_recovery},
        {"closed-form equivalence", closed_forms},
        {"success-probability identities", success_probabilities},
        {"reversal decomposition", reversal_decomposition},
        {"property suites", property_suites},
        {"determinism", determinism},
    };

    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Verdict v{false, ""};
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.passed;
        std::printf("[%s] %d. %s: %s\n", v.passed ? "PASS" : "FAIL", index, name, v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
