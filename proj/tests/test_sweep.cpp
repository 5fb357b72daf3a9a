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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qshield/errors.hpp"
#include "qshield/sweep.hpp"

using namespace qshield;

namespace {

const char* const kFig3b = R"j({
  "scheme": "two",
  "state": {"alpha": "sqrt(1/3)", "beta": "sqrt(1/3)", "gamma": "sqrt(1/3)"},
  "axis": "p",
  "range": {"start": 0.0, "stop": 0.999, "steps": 11},
  "fixed": {"D": 0.8},
  "reversal": "optimal",
  "figure": "fig3b"
})j";

std::string csv_of(const SweepResult& r) {
    std::ostringstream out;
    emit_csv(r.rows, out);
    return out.str();
}

SweepSpec scheme_one(int steps) {
    SweepSpec spec;
    spec.range = {0.0, 0.99, steps};
    return spec;
}

} // namespace

TEST_CASE("enum names round-trip") {
    for (Scheme s : {Scheme::One, Scheme::Two, Scheme::OneGeneral, Scheme::TwoGeneral}) {
        CHECK(parse_scheme(to_string(s)) == s);
    }
    CHECK(parse_axis("D") == Axis::D);
    CHECK(parse_axis("p") == Axis::P);
    CHECK(parse_figure("fig4b") == FigureId::Fig4b);
    CHECK_THROWS_AS(parse_scheme("three"), ConfigError);
    CHECK_THROWS_AS(parse_axis("d"), ConfigError);
    CHECK_THROWS_AS(parse_figure("fig5"), ConfigError);
}

TEST_CASE("parse_amplitude") {
    CHECK(parse_amplitude("0.5") == Complex(0.5));
    CHECK(parse_amplitude("-sqrt(3/8)").real() == doctest::Approx(-std::sqrt(3.0 / 8.0)).epsilon(1e-15));
    CHECK(parse_amplitude(" sqrt(2) ").real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const Complex z = parse_amplitude("0.5,-sqrt(1/4)");
    CHECK(z == Complex(0.5, -0.5));
    CHECK_THROWS_AS(parse_amplitude("sqrt(-1)"), ConfigError);
    CHECK_THROWS_AS(parse_amplitude("sqrt(1/0)"), ConfigError);
    CHECK_THROWS_AS(parse_amplitude("sqrt(2"), ConfigError);
    CHECK_THROWS_AS(parse_amplitude("abc"), ConfigError);
    CHECK_THROWS_AS(parse_amplitude(""), ConfigError);
}

TEST_CASE("parse_sweep_spec") {
    SUBCASE("valid document") {
        const SweepSpec spec = parse_sweep_spec(kFig3b);
        CHECK(spec.scheme == Scheme::Two);
        CHECK(spec.axis == Axis::P);
        CHECK(spec.range == AxisRange{0.0, 0.999, 11});
        CHECK(spec.fixed.at("D") == 0.8);
        CHECK_FALSE(spec.reversal.has_value());
        CHECK(spec.figure == FigureId::Fig3b);
        CHECK(spec.state.alpha().real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    }
    SUBCASE("steps default and explicit reversal") {
        const SweepSpec spec = parse_sweep_spec(R"j({
          "scheme": "one", "axis": "D",
          "state": {"alpha": 1, "beta": [0, 0], "gamma": 0},
          "range": {"start": 0.1, "stop": 0.9},
          "reversal": {"pr": 0.5, "qr": 0.25}})j");
        CHECK(spec.range.steps == kDefaultSweepSteps);
        CHECK(spec.reversal == ReversalParams{0.5, 0.25});
    }
    SUBCASE("stop = 1 is clamped with a warning") {
        std::vector<std::string> warnings;
        const SweepSpec spec = parse_sweep_spec(R"j({
          "scheme": "one", "axis": "D",
          "state": {"alpha": "sqrt(1/3)", "beta": "sqrt(1/3)", "gamma": "sqrt(1/3)"},
          "range": {"start": 0, "stop": 1, "steps": 3}})j",
                                                &warnings);
        CHECK(spec.range.stop == 1.0 - kEndpointClamp);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("clamped") != std::string::npos);
    }
}

TEST_CASE("parse_sweep_spec errors name the field") {
    auto message = [](const std::string& text) -> std::string {
        try {
            parse_sweep_spec(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "no error";
    };
    const std::string state = R"j("state": {"alpha": 1, "beta": 0, "gamma": 0})j";
    const std::string base = R"j("scheme": "one", "axis": "D", )j" + state;

    CHECK(message("not json").rfind("config:", 0) == 0);
    CHECK(message("[1, 2]").rfind("config:", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.9}, "extra": 1})j").rfind("extra", 0) == 0);
    CHECK(message(R"j({"axis": "D", )j" + state + R"j(, "range": {"start": 0, "stop": 0.9}})j").rfind("scheme", 0) ==
          0);
    CHECK(message("{" + base + "}").rfind("range", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.9, "step": 3}})j").rfind("range.step", 0) ==
          0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0.5, "stop": 0.5}})j").rfind("range.stop", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": -0.1, "stop": 0.5}})j").rfind("range.start", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 1.5}})j").rfind("range.stop", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5, "steps": 1}})j").rfind("range.steps", 0) ==
          0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5, "steps": 2.5}})j")
              .rfind("range.steps", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5}, "fixed": {"p": 0.1}})j")
              .rfind("fixed.p", 0) == 0);
    CHECK(message(R"j({"scheme": "two", "axis": "D", )j" + state + R"j(, "range": {"start": 0, "stop": 0.5}})j")
              .rfind("fixed.p", 0) == 0);
    CHECK(message(R"j({"scheme": "one", "axis": "p", )j" + state + R"j(, "range": {"start": 0, "stop": 0.5}})j")
              .rfind("axis", 0) == 0);
    CHECK(message(R"j({"scheme": "one", "axis": "D", "state": {"alpha": 1, "beta": 1, "gamma": 0},
                      "range": {"start": 0, "stop": 0.5}})j")
              .rfind("state", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5}, "reversal": "best"})j")
              .rfind("reversal", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5}, "reversal": {"pr": 1, "qr": 0}})j")
              .rfind("reversal", 0) == 0);
    CHECK(message("{" + base + R"j(, "range": {"start": 0, "stop": 0.5}, "figure": "fig3b"})j")
              .rfind("figure", 0) == 0);
    CHECK_THROWS_AS(load_sweep_spec("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("to_json round-trips") {
    SweepSpec spec = parse_sweep_spec(kFig3b);
    CHECK(parse_sweep_spec(to_json(spec)) == spec);

    spec = SweepSpec{};
    spec.scheme = Scheme::TwoGeneral;
    spec.state = PureState(std::sqrt(0.2), std::polar(std::sqrt(0.5), 0.7), Complex(0.0, -std::sqrt(0.3)));
    spec.range = {0.05, 0.95, 17};
    spec.fixed = {{"d1", 1.0}, {"D1", 0.3}, {"d2", 0.7}, {"D2", 0.6},
                  {"p1", 0.1}, {"q1", 0.2}, {"p2", 0.3}, {"q2", 0.4}};
    spec.reversal = ReversalParams{0.123456789, 0.987654321};
    spec.figure = FigureId::Fig4a;
    CHECK(parse_sweep_spec(to_json(spec)) == spec);
}

TEST_CASE("axis_values") {
    const auto xs = axis_values(scheme_one(5));
    REQUIRE(xs.size() == 5);
    CHECK(xs.front() == 0.0);
    CHECK(xs.back() == 0.99);
    CHECK(xs[2] == doctest::Approx(0.495));
}

TEST_CASE("format_real") {
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(4e-8) == "4e-08");
}

TEST_CASE("emit_csv") {
    SUBCASE("header and a single row") {
        const std::vector<ResultRow> rows{{0.0, 1.0, 1.0, 1.0, 1.0, 1.0}};
        std::ostringstream out;
        emit_csv(rows, out);
        CHECK(out.str() == "axis,n_initial,n_damped,n_protected,ratio,success_probability\n0,1,1,1,1,1\n");
    }
    SUBCASE("absent values are empty fields") {
        const std::vector<ResultRow> rows{{0.5, 0.0, 0.0, std::nullopt, std::nullopt, 0.0}};
        std::ostringstream out;
        emit_csv(rows, out);
        CHECK(out.str().substr(out.str().find('\n') + 1) == "0.5,0,0,,,0\n");
    }
    SUBCASE("errors") {
        std::ostringstream out;
        CHECK_THROWS_AS(emit_csv(std::vector<ResultRow>{}, out), InvalidInput);
        const std::vector<ResultRow> unordered{{0.5, 1, 1, 1, 1, 1}, {0.4, 1, 1, 1, 1, 1}};
        CHECK_THROWS_AS(emit_csv(unordered, out), InvalidInput);
        std::ostringstream bad;
        bad.setstate(std::ios::badbit);
        CHECK_THROWS_AS(emit_csv(std::vector<ResultRow>{{0, 1, 1, 1, 1, 1}}, bad), IoError);
    }
}

TEST_CASE("run_sweep") {
    SUBCASE("scheme one on the maximally entangled state") {
        const auto r = run_sweep(scheme_one(3));
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0].n_protected == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.rows[0].ratio == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.rows[0].success_probability == doctest::Approx(1.0).epsilon(1e-14));
        for (const auto& row : r.rows) {
            CHECK(*row.n_protected >= row.n_damped - 1e-12);
        }
    }
    SUBCASE("scheme two along p reaches the near-full ratio") {
        const auto r = run_sweep(parse_sweep_spec(kFig3b));
        CHECK(r.rows.back().axis_value == 0.999);
        CHECK(*r.rows.back().ratio >= 0.99);
        for (const auto& row : r.rows) {
            CHECK(row.n_damped == doctest::Approx(0.04).epsilon(1e-10));
        }
    }
    SUBCASE("parallel output is byte-identical") {
        const SweepSpec spec = parse_sweep_spec(kFig3b);
        CHECK(csv_of(run_sweep(spec, 1)) == csv_of(run_sweep(spec, 4)));
        CHECK(csv_of(run_sweep(scheme_one(57), 1)) == csv_of(run_sweep(scheme_one(57), 8)));
        CHECK(csv_of(run_sweep(scheme_one(57), 1)) == csv_of(run_sweep(scheme_one(57), 1)));
    }
    SUBCASE("a vanishing outcome probability leaves the protected fields empty") {
        SweepSpec spec = scheme_one(2);
        spec.state = PureState(1.0, 0.0, 0.0);
        spec.reversal = ReversalParams{1.0 - 1e-13, 1.0 - 1e-13};
        const auto r = run_sweep(spec);
        for (const auto& row : r.rows) {
            CHECK_FALSE(row.n_protected.has_value());
            CHECK_FALSE(row.ratio.has_value());
            CHECK(row.success_probability == 0.0);
        }
    }
    SUBCASE("zero initial negativity leaves only the ratio empty") {
        SweepSpec spec = scheme_one(4);
        spec.state = PureState(1.0, 0.0, 0.0);
        for (const auto& row : run_sweep(spec).rows) {
            CHECK(row.n_protected == 0.0);
            CHECK_FALSE(row.ratio.has_value());
        }
    }
    SUBCASE("invalid spec") {
        SweepSpec spec = scheme_one(1);
        CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    }
}

TEST_CASE("emit_plot_script") {
    const auto r = run_sweep(parse_sweep_spec(kFig3b));
    std::ostringstream out;
    emit_plot_script(r, FigureId::Fig3b, "fig3b.csv", out);
    const std::string script = out.str();
    CHECK(script.find("\"fig3b.csv\" using 1:5") != std::string::npos);
    CHECK(script.find("set datafile separator \",\"") != std::string::npos);

    const auto d_sweep = run_sweep(scheme_one(3));
    std::ostringstream two;
    emit_plot_script(d_sweep, FigureId::Fig2a, "a.csv", two);
    CHECK(two.str().find("using 1:3") != std::string::npos);
    CHECK(two.str().find("'' using 1:4") != std::string::npos);

    std::ostringstream sink;
    CHECK_THROWS_AS(emit_plot_script(r, FigureId::Fig2a, "x.csv", sink), ConfigError);
    CHECK_THROWS_AS(emit_plot_script(d_sweep, FigureId::Fig4b, "x.csv", sink), ConfigError);
}
