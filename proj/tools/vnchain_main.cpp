// Copyright 2026 The vnchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vnchain/error.hpp"
#include "vnchain/runner.hpp"
#include "vnchain/scenario.hpp"
#include "vnchain/verify.hpp"

namespace {

using namespace vnchain;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotUnitary:
    case ErrorCode::DressingLeak:
    case ErrorCode::UndefinedConditional:
    case ErrorCode::VanishingOverlap:
    case ErrorCode::ZeroAccepted:
        return kExitNumerical;
    default:
        return kExitValidation;
    }
}

double default_tolerance() {
    const char *env = std::getenv("VNCHAIN_TOL");
    if (env == nullptr || *env == '\0') {
        return kConditionTolerance;
    }
    char *end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0)) {
        fail(ErrorCode::Validation, std::string("VNCHAIN_TOL is not a positive number: ") + env);
    }
    return value;
}

std::string load_document(const std::string &source) {
    if (is_builtin(source)) {
        return builtin_document(source);
    }
    std::ifstream in(source);
    if (!in) {
        fail(ErrorCode::Validation, "'" + source + "' is neither a builtin scenario nor a readable file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string describe_builtin(const std::string &name) {
    const auto doc = nlohmann::json::parse(builtin_document(name));
    return doc.value("description", "");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"vnchain: simulate unitary premeasurement chains"};
    app.require_subcommand(1);

    std::string source;
    std::uint64_t seed = 0;
    std::string format = "text";
    bool dump_states = false;
    double tol = 0.0;
    std::vector<std::string> initial;
    CLI::App *run = app.add_subcommand("run", "run a scenario file or builtin");
    run->add_option("scenario", source, "scenario file or builtin name")->required();
    run->add_option("--seed", seed, "seed for condition checks and sampling");
    run->add_option("--format", format, "text, tsv or json");
    run->add_flag("--dump-states", dump_states, "include the state after every stage");
    CLI::Option *tol_opt = run->add_option("--tol", tol, "tolerance for condition and weight checks");
    run->add_option("--initial", initial, "replace a preparation, LABEL=SPEC (repeatable)");

    std::string dims = "4,6";
    std::size_t trials = 100;
    std::uint64_t verify_seed = 0;
    std::string corrupt = "none";
    std::size_t jobs = 1;
    std::string verify_format = "text";
    CLI::App *ver = app.add_subcommand("verify", "run the property suites");
    ver->add_option("--dims", dims, "largest object and instrument dimension, A,B");
    ver->add_option("--trials", trials, "cases per suite and grid cell");
    ver->add_option("--seed", verify_seed, "suite seed");
    ver->add_option("--corrupt", corrupt, "fault injection: none or phase");
    ver->add_option("--jobs", jobs, "worker threads");
    ver->add_option("--format", verify_format, "text, tsv or json");

    CLI::App *scenarios = app.add_subcommand("scenarios", "builtin scenarios");
    scenarios->require_subcommand(1);
    CLI::App *list = scenarios->add_subcommand("list", "list builtin scenarios");

    std::string emit_name;
    CLI::App *emit = app.add_subcommand("emit", "print a builtin scenario document");
    emit->add_option("builtin", emit_name, "builtin name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*run) {
            RunOptions options;
            options.seed = seed;
            options.dump_states = dump_states;
            options.check_tolerance = tol_opt->count() > 0 ? tol : default_tolerance();
            if (!(options.check_tolerance > 0.0)) {
                fail(ErrorCode::Validation, "--tol must be positive");
            }
            const ReportFormat fmt = parse_report_format(format);
            Scenario scenario = parse_scenario(load_document(source));
            for (const auto &item : initial) {
                const std::size_t eq = item.find('=');
                if (eq == std::string::npos || eq == 0) {
                    fail(ErrorCode::Validation, "--initial expects LABEL=SPEC, got '" + item + "'");
                }
                override_initial(scenario, item.substr(0, eq), parse_state_spec(item.substr(eq + 1)));
            }
            const RunReport report = run_scenario(scenario, options);
            std::cout << render_report(report, fmt, dump_states);
            return report.pass ? kExitOk : kExitNumerical;
        }
        if (*ver) {
            const std::size_t comma = dims.find(',');
            if (comma == std::string::npos) {
                fail(ErrorCode::Validation, "--dims expects A,B");
            }
            std::size_t a = 0;
            std::size_t b = 0;
            try {
                a = std::stoul(dims.substr(0, comma));
                b = std::stoul(dims.substr(comma + 1));
            } catch (const std::exception &) {
                fail(ErrorCode::Validation, "--dims expects two integers, got '" + dims + "'");
            }
            VerifyOptions options = grid_up_to(a, b);
            options.trials = trials;
            options.seed = verify_seed;
            options.corrupt = parse_corruption(corrupt);
            options.jobs = jobs;
            const ReportFormat fmt = parse_report_format(verify_format);
            const VerifyReport report = verify(options);
            for (const auto &w : report.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            std::cout << render_verify(report, fmt);
            return report.pass ? kExitOk : kExitNumerical;
        }
        if (*list) {
            for (const auto &name : builtin_names()) {
                std::cout << name << "\t" << describe_builtin(name) << "\n";
            }
            return kExitOk;
        }
        if (*emit) {
            std::cout << builtin_document(emit_name);
            return kExitOk;
        }
    } catch (const Error &e) {
        std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.message() << "\n";
        return exit_code_for(e.code());
    }
    return kExitOk;
}
