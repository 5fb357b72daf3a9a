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

#include "qshield/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qshield/errors.hpp"

namespace qshield {

namespace {

using nlohmann::json;

constexpr std::string_view kSchemeNames[] = {"one", "two", "one-general",
                                             "two-general"};
constexpr std::string_view kAxisNames[] = {"D", "p"};
constexpr std::string_view kFigureNames[] = {"fig2a", "fig2b", "fig3a",
                                             "fig3b", "fig4a", "fig4b"};

std::vector<std::string> required_keys(Scheme scheme, Axis axis) {
    switch (scheme) {
    case Scheme::One:
        if (axis != Axis::D) {
            throw ConfigError("axis: scheme one only sweeps D");
        }
        return {};
    case Scheme::Two:
        return axis == Axis::D ? std::vector<std::string>{"p"}
                               : std::vector<std::string>{"D"};
    case Scheme::OneGeneral:
        if (axis != Axis::D) {
            throw ConfigError("axis: scheme one-general only sweeps D");
        }
        return {"d1", "d2", "D1", "D2"};
    case Scheme::TwoGeneral:
        if (axis == Axis::D) {
            return {"d1", "d2", "D1", "D2", "p1", "q1", "p2", "q2"};
        }
        return {"d1", "d2", "D1", "D2"};
    }
    throw ConfigError("scheme: unknown value");
}

std::string trim(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    return std::string(text.substr(b, e - b));
}

double parse_number(const std::string& text, std::string_view context) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double value = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(value)) {
        throw ConfigError(std::string(context) + ": cannot parse '" + t + "'");
    }
    return value;
}

// [-]number | [-]sqrt(number[/number])
double parse_real_expression(std::string_view raw, std::string_view context) {
    std::string t = trim(raw);
    double sign = 1.0;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        if (t.front() == '-') {
            sign = -1.0;
        }
        t = trim(std::string_view(t).substr(1));
    }
    if (t.rfind("sqrt(", 0) == 0) {
        if (t.back() != ')') {
            throw ConfigError(std::string(context) + ": unbalanced sqrt(...)");
        }
        const std::string inner = t.substr(5, t.size() - 6);
        double radicand = 0.0;
        if (const auto slash = inner.find('/'); slash != std::string::npos) {
            const double num = parse_number(inner.substr(0, slash), context);
            const double den = parse_number(inner.substr(slash + 1), context);
            if (den == 0.0) {
                throw ConfigError(std::string(context) + ": division by zero");
            }
            radicand = num / den;
        } else {
            radicand = parse_number(inner, context);
        }
        if (radicand < 0.0) {
            throw ConfigError(std::string(context) + ": negative radicand");
        }
        return sign * std::sqrt(radicand);
    }
    return sign * parse_number(t, context);
}

Complex amplitude_from_json(const json& node, const std::string& field) {
    if (node.is_number()) {
        return node.get<double>();
    }
    if (node.is_array() && node.size() == 2 && node[0].is_number() &&
        node[1].is_number()) {
        return {node[0].get<double>(), node[1].get<double>()};
    }
    if (node.is_string()) {
        try {
            return parse_amplitude(node.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(field + ": " + e.what());
        }
    }
    throw ConfigError(field + ": expected a number, [re, im] or expression string");
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(where + key + ": unknown key");
        }
    }
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(where + key + ": missing");
    }
    return *it;
}

double require_number(const json& node, const std::string& field) {
    if (!node.is_number()) {
        throw ConfigError(field + ": expected a number");
    }
    return node.get<double>();
}

std::string require_string(const json& node, const std::string& field) {
    if (!node.is_string()) {
        throw ConfigError(field + ": expected a string");
    }
    return node.get<std::string>();
}

struct PointSetup {
    AsymmetricConfig cfg;
    std::optional<ReversalParams> rev_a;
    std::optional<ReversalParams> rev_b;
    bool with_weak_measurement;
};

PointSetup point_setup(const SweepSpec& spec, double x) {
    const auto& f = spec.fixed;
    PointSetup s{};
    switch (spec.scheme) {
    case Scheme::One:
        s.cfg.damp_a = s.cfg.damp_b = {x, x};
        s.with_weak_measurement = false;
        break;
    case Scheme::Two: {
        const double d = spec.axis == Axis::D ? x : f.at("D");
        const double p = spec.axis == Axis::P ? x : f.at("p");
        s.cfg.damp_a = s.cfg.damp_b = {d, d};
        s.cfg.wm_a = s.cfg.wm_b = {p, p};
        s.with_weak_measurement = true;
        break;
    }
    case Scheme::OneGeneral:
        s.cfg.damp_a = {f.at("d1") * x, f.at("D1") * x};
        s.cfg.damp_b = {f.at("d2") * x, f.at("D2") * x};
        s.with_weak_measurement = false;
        break;
    case Scheme::TwoGeneral:
        if (spec.axis == Axis::D) {
            s.cfg.damp_a = {f.at("d1") * x, f.at("D1") * x};
            s.cfg.damp_b = {f.at("d2") * x, f.at("D2") * x};
            s.cfg.wm_a = {f.at("p1"), f.at("q1")};
            s.cfg.wm_b = {f.at("p2"), f.at("q2")};
        } else {
            s.cfg.damp_a = {f.at("d1"), f.at("D1")};
            s.cfg.damp_b = {f.at("d2"), f.at("D2")};
            s.cfg.wm_a = s.cfg.wm_b = {x, x};
        }
        s.with_weak_measurement = true;
        break;
    }
    if (spec.reversal) {
        s.rev_a = s.rev_b = *spec.reversal;
    }
    return s;
}

ResultRow evaluate_point(const SweepSpec& spec, double x) {
    const PointSetup s = point_setup(spec, x);
    try {
        SchemeResult r = [&] {
            if (s.with_weak_measurement) {
                return run_scheme2_general(
                    spec.state, s.cfg,
                    s.rev_a.value_or(optimal_reversal_scheme2(s.cfg.damp_a, s.cfg.wm_a)),
                    s.rev_b.value_or(optimal_reversal_scheme2(s.cfg.damp_b, s.cfg.wm_b)));
            }
            return run_scheme1_general(
                spec.state, s.cfg,
                s.rev_a.value_or(optimal_reversal_scheme1(s.cfg.damp_a)),
                s.rev_b.value_or(optimal_reversal_scheme1(s.cfg.damp_b)));
        }();
        std::optional<double> ratio;
        if (r.n_initial > 0.0) {
            ratio = negativity_ratio(r.n_protected, r.n_initial);
        }
        return {x, r.n_initial, r.n_damped, r.n_protected, ratio,
                r.success_probability};
    } catch (const DegenerateOutcome&) {
        const DensityMatrix initial = spec.state.density();
        const DensityMatrix damped =
            apply_channel_both(initial, amplitude_damping_kraus(s.cfg.damp_a),
                               amplitude_damping_kraus(s.cfg.damp_b));
        return {x, negativity(initial), negativity(damped), std::nullopt,
                std::nullopt, 0.0};
    } catch (const InvalidInput& e) {
        throw ConfigError("at " + std::string(to_string(spec.axis)) + " = " +
                          format_real(x) + ": " + e.what());
    }
}

struct FigureLayout {
    Axis axis;
    std::string_view title;
    std::string_view ylabel;
    std::vector<std::pair<int, std::string_view>> series; // CSV column, label
};

FigureLayout figure_layout(FigureId figure) {
    switch (figure) {
    case FigureId::Fig2a:
        return {Axis::D, "Negativity as a function of D, maximally entangled state",
                "Negativity", {{3, "N_d"}, {4, "N_r"}}};
    case FigureId::Fig2b:
        return {Axis::D, "Negativity as a function of D, sqrt(3/8)|00>+sqrt(5/8)|11>",
                "Negativity", {{3, "N_d"}, {4, "N_r"}}};
    case FigureId::Fig3a:
        return {Axis::D, "Negativity N_d as a function of decoherence strength D",
                "Negativity", {{3, "N_d"}}};
    case FigureId::Fig3b:
        return {Axis::P, "Ratio of N_wr to N_i as a function of weak measurement strength p",
                "N_wr / N_i", {{5, "N_wr/N_i"}}};
    case FigureId::Fig4a:
        return {Axis::D, "Scheme one, asymmetric damping", "Negativity",
                {{3, "N_d"}, {4, "N_r"}}};
    case FigureId::Fig4b:
        return {Axis::P, "Scheme two, asymmetric damping", "Negativity",
                {{3, "N_d"}, {4, "N_wr"}}};
    }
    throw ConfigError("figure: unknown value");
}

} // namespace

std::string_view to_string(Scheme scheme) {
    return kSchemeNames[static_cast<int>(scheme)];
}
std::string_view to_string(Axis axis) { return kAxisNames[static_cast<int>(axis)]; }
std::string_view to_string(FigureId figure) {
    return kFigureNames[static_cast<int>(figure)];
}

Scheme parse_scheme(std::string_view text) {
    for (int i = 0; i < 4; ++i) {
        if (kSchemeNames[i] == text) {
            return static_cast<Scheme>(i);
        }
    }
    throw ConfigError("scheme: unknown value '" + std::string(text) + "'");
}

Axis parse_axis(std::string_view text) {
    for (int i = 0; i < 2; ++i) {
        if (kAxisNames[i] == text) {
            return static_cast<Axis>(i);
        }
    }
    throw ConfigError("axis: unknown value '" + std::string(text) + "'");
}

FigureId parse_figure(std::string_view text) {
    for (int i = 0; i < 6; ++i) {
        if (kFigureNames[i] == text) {
            return static_cast<FigureId>(i);
        }
    }
    throw ConfigError("figure: unknown value '" + std::string(text) + "'");
}

Complex parse_amplitude(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return parse_real_expression(text, "amplitude");
    }
    return {parse_real_expression(text.substr(0, comma), "amplitude (real part)"),
            parse_real_expression(text.substr(comma + 1), "amplitude (imaginary part)")};
}

void validate(const SweepSpec& spec) {
    const auto& r = spec.range;
    if (!(std::isfinite(r.start) && r.start >= 0.0 && r.start < 1.0)) {
        throw ConfigError("range.start: must lie in [0, 1)");
    }
    if (!(std::isfinite(r.stop) && r.stop > r.start && r.stop < 1.0)) {
        throw ConfigError("range.stop: must lie in (start, 1)");
    }
    if (r.steps < 2) {
        throw ConfigError("range.steps: must be at least 2");
    }

    const auto required = required_keys(spec.scheme, spec.axis);
    for (const auto& [key, value] : spec.fixed) {
        if (std::find(required.begin(), required.end(), key) == required.end()) {
            throw ConfigError("fixed." + key + ": not used by scheme " +
                              std::string(to_string(spec.scheme)) + " along axis " +
                              std::string(to_string(spec.axis)));
        }
        if (!std::isfinite(value) || value < 0.0) {
            throw ConfigError("fixed." + key + ": must be a non-negative number");
        }
    }
    for (const auto& key : required) {
        if (!spec.fixed.contains(key)) {
            throw ConfigError("fixed." + key + ": missing");
        }
    }
    if (spec.reversal) {
        try {
            qshield::validate(*spec.reversal);
        } catch (const InvalidInput& e) {
            throw ConfigError(std::string("reversal: ") + e.what());
        }
    }
    if (spec.figure && figure_layout(*spec.figure).axis != spec.axis) {
        throw ConfigError("figure: " + std::string(to_string(*spec.figure)) +
                          " is plotted against a different axis");
    }
}

SweepSpec parse_sweep_spec(std::string_view text, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    reject_unknown_keys(doc, {"scheme", "state", "axis", "range", "fixed", "reversal", "figure"},
                        "");

    SweepSpec spec;
    spec.scheme = parse_scheme(require_string(require_key(doc, "scheme", ""), "scheme"));
    spec.axis = parse_axis(require_string(require_key(doc, "axis", ""), "axis"));

    const json& state = require_key(doc, "state", "");
    if (!state.is_object()) {
        throw ConfigError("state: expected an object");
    }
    reject_unknown_keys(state, {"alpha", "beta", "gamma"}, "state.");
    try {
        spec.state = PureState(
            amplitude_from_json(require_key(state, "alpha", "state."), "state.alpha"),
            amplitude_from_json(require_key(state, "beta", "state."), "state.beta"),
            amplitude_from_json(require_key(state, "gamma", "state."), "state.gamma"));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("state: ") + e.what());
    }

    const json& range = require_key(doc, "range", "");
    if (!range.is_object()) {
        throw ConfigError("range: expected an object");
    }
    reject_unknown_keys(range, {"start", "stop", "steps"}, "range.");
    spec.range.start = require_number(require_key(range, "start", "range."), "range.start");
    spec.range.stop = require_number(require_key(range, "stop", "range."), "range.stop");
    if (const auto it = range.find("steps"); it != range.end()) {
        if (!it->is_number_integer()) {
            throw ConfigError("range.steps: expected an integer");
        }
        spec.range.steps = it->get<int>();
    }
    if (spec.range.stop == 1.0) {
        spec.range.stop = 1.0 - kEndpointClamp;
        if (warnings) {
            warnings->push_back("range.stop = 1 clamped to " +
                                format_real(spec.range.stop));
        }
    }

    if (const auto it = doc.find("fixed"); it != doc.end()) {
        if (!it->is_object()) {
            throw ConfigError("fixed: expected an object");
        }
        for (const auto& [key, value] : it->items()) {
            spec.fixed[key] = require_number(value, "fixed." + key);
        }
    }

    if (const auto it = doc.find("reversal"); it != doc.end()) {
        if (it->is_string()) {
            if (it->get<std::string>() != "optimal") {
                throw ConfigError("reversal: expected \"optimal\" or {\"pr\", \"qr\"}");
            }
        } else if (it->is_object()) {
            reject_unknown_keys(*it, {"pr", "qr"}, "reversal.");
            spec.reversal = ReversalParams{
                require_number(require_key(*it, "pr", "reversal."), "reversal.pr"),
                require_number(require_key(*it, "qr", "reversal."), "reversal.qr")};
        } else {
            throw ConfigError("reversal: expected \"optimal\" or {\"pr\", \"qr\"}");
        }
    }

    if (const auto it = doc.find("figure"); it != doc.end()) {
        spec.figure = parse_figure(require_string(*it, "figure"));
    }

    validate(spec);
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path,
                          std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_spec(buffer.str(), warnings);
}

std::string to_json(const SweepSpec& spec) {
    nlohmann::ordered_json doc;
    doc["scheme"] = to_string(spec.scheme);
    auto amp = [](Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); };
    doc["state"] = {{"alpha", amp(spec.state.alpha())},
                    {"beta", amp(spec.state.beta())},
                    {"gamma", amp(spec.state.gamma())}};
    doc["axis"] = to_string(spec.axis);
    doc["range"] = {{"start", spec.range.start},
                    {"stop", spec.range.stop},
                    {"steps", spec.range.steps}};
    doc["fixed"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : spec.fixed) {
        doc["fixed"][key] = value;
    }
    if (spec.reversal) {
        doc["reversal"] = {{"pr", spec.reversal->pr}, {"qr", spec.reversal->qr}};
    } else {
        doc["reversal"] = "optimal";
    }
    if (spec.figure) {
        doc["figure"] = to_string(*spec.figure);
    }
    return doc.dump(2) + "\n";
}

std::vector<double> axis_values(const SweepSpec& spec) {
    const auto& r = spec.range;
    std::vector<double> values(static_cast<std::size_t>(r.steps));
    const double step = (r.stop - r.start) / (r.steps - 1);
    for (int i = 0; i < r.steps; ++i) {
        values[static_cast<std::size_t>(i)] = r.start + i * step;
    }
    values.back() = r.stop;
    return values;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
    validate(spec);
    const std::vector<double> xs = axis_values(spec);
    std::vector<std::optional<ResultRow>> rows(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());

    auto work = [&](std::size_t i) {
        try {
            rows[i] = evaluate_point(spec, xs[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(xs.size())));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < xs.size(); i = next++) {
                    work(i);
                }
            });
        }
    }

    SweepResult result{spec.scheme, spec.axis, {}};
    result.rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        result.rows.push_back(*rows[i]);
    }
    return result;
}

std::string format_real(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void emit_csv(std::span<const ResultRow> rows, std::ostream& out) {
    if (rows.empty()) {
        throw InvalidInput("emit_csv: no rows");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].axis_value < rows[i - 1].axis_value) {
            throw InvalidInput("emit_csv: rows are not ordered by axis value");
        }
    }
    auto opt = [](const std::optional<double>& v) {
        return v ? format_real(*v) : std::string();
    };
    std::string text = "axis,n_initial,n_damped,n_protected,ratio,success_probability\n";
    for (const auto& r : rows) {
        text += format_real(r.axis_value) + ',' + format_real(r.n_initial) + ',' +
                format_real(r.n_damped) + ',' + opt(r.n_protected) + ',' +
                opt(r.ratio) + ',' + format_real(r.success_probability) + '\n';
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw IoError("emit_csv: write failed");
    }
}

void emit_plot_script(const SweepResult& result, FigureId figure,
                      std::string_view csv_path, std::ostream& out) {
    const FigureLayout layout = figure_layout(figure);
    if (layout.axis != result.axis) {
        throw ConfigError("plot: " + std::string(to_string(figure)) + " expects axis " +
                          std::string(to_string(layout.axis)) + ", rows use axis " +
                          std::string(to_string(result.axis)));
    }
    std::ostringstream s;
    s << "# " << to_string(figure) << ": " << layout.title << "\n"
      << "# scheme " << to_string(result.scheme) << ", " << result.rows.size()
      << " points\n"
      << "set datafile separator \",\"\n"
      << "set title \"" << layout.title << "\"\n"
      << "set xlabel \"" << to_string(layout.axis) << "\"\n"
      << "set ylabel \"" << layout.ylabel << "\"\n"
      << "set key top right\n"
      << "set grid\n"
      << "plot ";
    for (std::size_t i = 0; i < layout.series.size(); ++i) {
        const auto& [column, label] = layout.series[i];
        s << (i == 0 ? "\"" + std::string(csv_path) + "\"" : std::string("''"))
          << " using 1:" << column << " skip 1 with lines title \"" << label << "\"";
        s << (i + 1 < layout.series.size() ? ", \\\n     " : "\n");
    }
    const std::string text = s.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw IoError("emit_plot_script: write failed");
    }
}

} // namespace qshield
