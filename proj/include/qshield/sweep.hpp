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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qshield/protection.hpp"

namespace qshield {

enum class Scheme { One, Two, OneGeneral, TwoGeneral };
enum class Axis { D, P };
enum class FigureId { Fig2a, Fig2b, Fig3a, Fig3b, Fig4a, Fig4b };

inline constexpr int kDefaultSweepSteps = 200;
/// A requested stop of exactly 1 is moved to 1 - kEndpointClamp.
inline constexpr double kEndpointClamp = 1e-6;

struct AxisRange {
    double start = 0.0;
    double stop = 0.99;
    int steps = kDefaultSweepSteps;
    friend bool operator==(const AxisRange&, const AxisRange&) = default;
};

/**
 * One reproducible parameter sweep.
 *
 * fixed holds the scheme's named parameters:
 *   one          axis D   (none)
 *   two          axis D   p
 *                axis p   D
 *   one-general  axis D   d1 d2 D1 D2       (multipliers of the axis value)
 *   two-general  axis D   d1 d2 D1 D2       (multipliers) p1 q1 p2 q2
 *                axis p   d1 d2 D1 D2       (absolute); p1=q1=p2=q2=axis
 * Qutrit A decays with (d1, D1), qutrit B with (d2, D2).
 * An empty reversal means the closed-form optimum at every point.
 */
struct SweepSpec {
    Scheme scheme = Scheme::One;
    PureState state = PureState::maximally_entangled();
    Axis axis = Axis::D;
    AxisRange range;
    std::map<std::string, double> fixed;
    std::optional<ReversalParams> reversal;
    std::optional<FigureId> figure;
    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ResultRow {
    double axis_value;
    double n_initial;
    double n_damped;
    std::optional<double> n_protected;
    std::optional<double> ratio;
    double success_probability;
    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct SweepResult {
    Scheme scheme;
    Axis axis;
    std::vector<ResultRow> rows;
};

std::string_view to_string(Scheme scheme);
std::string_view to_string(Axis axis);
std::string_view to_string(FigureId figure);
Scheme parse_scheme(std::string_view text);
Axis parse_axis(std::string_view text);
FigureId parse_figure(std::string_view text);

/// Accepts "0.5", "-sqrt(3/8)", "sqrt(2)" and complex "re,im" pairs of
/// those forms. Throws ConfigError.
Complex parse_amplitude(std::string_view text);

/// Throws ConfigError naming the offending field.
void validate(const SweepSpec& spec);

/// Parses the JSON config document. Unknown keys are errors; warnings
/// (endpoint clamping) are appended to *warnings when given.
SweepSpec parse_sweep_spec(std::string_view text,
                           std::vector<std::string>* warnings = nullptr);
SweepSpec load_sweep_spec(const std::filesystem::path& path,
                          std::vector<std::string>* warnings = nullptr);
std::string to_json(const SweepSpec& spec);

std::vector<double> axis_values(const SweepSpec& spec);

/// Evaluates every axis point; workers > 1 spreads points over threads with
/// output identical to the serial run.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

/// 12 significant digits, no negative zero.
std::string format_real(double value);

/// Header `axis,n_initial,n_damped,n_protected,ratio,success_probability`,
/// LF line endings, absent values as empty fields.
void emit_csv(std::span<const ResultRow> rows, std::ostream& out);

/// gnuplot script reading csv_path and drawing the series of the figure.
void emit_plot_script(const SweepResult& result, FigureId figure,
                      std::string_view csv_path, std::ostream& out);

} // namespace qshield
