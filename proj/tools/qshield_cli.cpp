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

// qshield: sweeps, golden-value checks and state inspection for the
// two-qutrit weak-measurement protection schemes.
//
// Exit codes: 0 success, 1 config error, 2 numerical failure,
// 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qshield/errors.hpp"
#include "qshield/sweep.hpp"
#include "qshield/verify.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

int run_sweep_command(const std::string& config, const std::string& out_path,
                      const std::string& plot_path, unsigned parallel) {
    std::vector<std::string> warnings;
    const qshield::SweepSpec spec = qshield::load_sweep_spec(config, &warnings);
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!plot_path.empty() && !spec.figure) {
        throw qshield::ConfigError("figure: required when --plot is given");
    }

    const qshield::SweepResult result = qshield::run_sweep(spec, parallel);

    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) {
        throw qshield::IoError("cannot open " + out_path);
    }
    qshield::emit_csv(result.rows, csv);

    if (!plot_path.empty()) {
        std::ofstream plot(plot_path, std::ios::binary);
        if (!plot) {
            throw qshield::IoError("cannot open " + plot_path);
        }
        qshield::emit_plot_script(result, *spec.figure, out_path, plot);
    }
    std::cerr << result.rows.size() << " rows written to " << out_path << "\n";
    return 0;
}

int run_state_info(const std::string& alpha, const std::string& beta,
                   const std::string& gamma) {
    const qshield::Complex a = qshield::parse_amplitude(alpha);
    const qshield::Complex b = qshield::parse_amplitude(beta);
    const qshield::Complex g = qshield::parse_amplitude(gamma);
    const double norm = std::norm(a) + std::norm(b) + std::norm(g);
    std::printf("norm: %s\n", qshield::format_real(norm).c_str());
    try {
        const qshield::PureState state(a, b, g);
        std::printf("valid: true\n");
        std::printf("negativity: %s\n",
                    qshield::format_real(qshield::negativity(state.density())).c_str());
        return 0;
    } catch (const qshield::InvalidInput& e) {
        std::printf("valid: false (%s)\n", e.what());
        return kExitConfig;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qutrit entanglement protection by weak measurement and reversal"};
    app.require_subcommand(1);

    std::string config;
    std::string out_path;
    std::string plot_path;
    unsigned parallel = 1;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a scheme over a parameter sweep");
    sweep->add_option("--config", config, "JSON sweep configuration")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();
    sweep->add_option("--plot", plot_path, "gnuplot script output path");
    sweep->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run the built-in golden checks");

    std::string alpha;
    std::string beta;
    std::string gamma;
    auto* info = app.add_subcommand("state-info",
                                    "Negativity and validity of a|00>+b|11>+g|22>");
    info->add_option("--alpha", alpha, "Amplitude, e.g. 0.5, sqrt(1/3) or re,im")->required();
    info->add_option("--beta", beta, "Amplitude")->required();
    info->add_option("--gamma", gamma, "Amplitude")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep) {
            return run_sweep_command(config, out_path, plot_path, parallel);
        }
        if (*verify) {
            const bool ok = qshield::print_report(qshield::run_golden_checks(), std::cout);
            return ok ? 0 : kExitVerification;
        }
        if (*info) {
            return run_state_info(alpha, beta, gamma);
        }
    } catch (const qshield::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qshield::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qshield::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
