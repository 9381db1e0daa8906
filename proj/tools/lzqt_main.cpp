// Copyright 2026 The lzqt Authors
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

// lzqt: quantum-jump statistics for the dissipative Landau-Zener model.
//
//   lzqt run      --config cfg.json --out dir [--workers N] [--seed S]
//   lzqt validate --config cfg.json --out dir [--workers N] [--seed S] [--tolerance X]
//   lzqt sweep    --config cfg.json --out dir --axis gamma --values 0.1,0.2,0.4,0.8
//   lzqt stats    --config cfg.json --events dir/events.csv --out dir2
//
// Exit codes: 0 success, 1 usage error, 2 config error, 3 runtime failure,
// 4 validation failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lzqt/commands.hpp"
#include "lzqt/config.hpp"
#include "lzqt/errors.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    unsigned workers = 1;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out, "Output directory")->required();
    cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores); never changes results")
        ->capture_default_str();
    cmd->add_option("--seed", args.seed, "Override ensemble.master_seed");
}

lzqt::SimConfig load(const CommonArgs& args) {
    lzqt::SimConfig c = lzqt::load_config(args.config);
    if (args.seed) c.master_seed = *args.seed;
    return c;
}

void print_summary(const lzqt::SummaryStats& s) {
    std::cout << "mean=" << lzqt::cli::format_double(s.mean) << " median=" << s.median << " mode=" << s.mode
              << " variance=" << lzqt::cli::format_double(s.variance) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-jump statistics for the dissipative Landau-Zener model"};
    app.require_subcommand(1);

    CommonArgs run_args;
    auto* run = app.add_subcommand("run", "Simulate an ensemble and write jump statistics");
    add_common(run, run_args);

    CommonArgs val_args;
    std::optional<double> tolerance;
    auto* validate = app.add_subcommand("validate", "Compare the trajectory ensemble with the master equation");
    add_common(validate, val_args);
    validate->add_option("--tolerance", tolerance, "Pass threshold on the max trace distance (default 3/sqrt(n_traj))");

    CommonArgs sweep_args;
    std::string axis;
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "Run one ensemble per value of a parameter");
    add_common(sweep, sweep_args);
    sweep->add_option("--axis", axis, "Parameter to sweep")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

    CommonArgs stats_args;
    std::string events;
    auto* stats = app.add_subcommand("stats", "Recompute statistics from a saved events.csv");
    add_common(stats, stats_args);
    stats->add_option("--events", events, "events.csv written by 'run'")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? lzqt::cli::kSuccess : lzqt::cli::kUsageError;
    }

    try {
        if (*run) {
            const auto out = lzqt::cli::cmd_run(load(run_args), run_args.out, run_args.workers);
            print_summary(out.summary);
            std::cout << "runtime_seconds=" << out.runtime_seconds << '\n';
        } else if (*validate) {
            lzqt::cli::ValidateHooks hooks;
            hooks.tolerance = tolerance;
            const auto rep = lzqt::cli::cmd_validate(load(val_args), val_args.out, val_args.workers, hooks);
            std::cout << "max_trace_distance=" << lzqt::cli::format_double(rep.max_trace_distance)
                      << " tolerance=" << lzqt::cli::format_double(rep.tolerance) << (rep.pass ? " PASS" : " FAIL")
                      << '\n';
            if (!rep.pass) return lzqt::cli::kValidationFailure;
        } else if (*sweep) {
            const auto points =
                lzqt::cli::cmd_sweep(load(sweep_args), axis, values, sweep_args.out, sweep_args.workers);
            for (const auto& p : points) {
                std::cout << axis << '=' << lzqt::cli::format_double(p.value) << ": ";
                print_summary(p.summary);
            }
        } else if (*stats) {
            const auto out = lzqt::cli::cmd_stats(load(stats_args), events, stats_args.out);
            print_summary(out.summary);
        }
    } catch (const lzqt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return lzqt::cli::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lzqt::cli::kRuntimeFailure;
    }
    return lzqt::cli::kSuccess;
}
