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

// commands.hpp: the run / validate / sweep / stats workflows behind the lzqt
// command-line tool, and their file formats.
//
// Output files (UTF-8, '\n' line endings, floats printed with 17 significant
// digits; JSON objects have sorted keys):
//   counts.csv     N,probability,channel_0,...,channel_{M-1}
//   intervals.csv  t_lo,t_hi,mean_jumps,event_fraction,traj_fraction
//   events.csv     trajectory_id,time,channel
//   summary.json   summary statistics, step statistics, runtime, config echo
//   validate.json  ensemble-vs-master-equation trace distances
//   manifest.json  one entry per sweep point

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lzqt/config.hpp"
#include "lzqt/engine.hpp"
#include "lzqt/stats.hpp"

namespace lzqt::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kConfigError = 2,
    kRuntimeFailure = 3,
    kValidationFailure = 4,
};

struct StepStats {
    std::uint64_t total_steps = 0;
    double dt_smallest = 0.0;
    double dt_largest = 0.0;
};

struct RunOutputs {
    JumpTally tally;
    CountHistogram counts;
    IntervalHistogram intervals;
    SummaryStats summary;
    StepStats steps;
    double runtime_seconds = 0.0;
};

/// Runs the ensemble and writes counts.csv, intervals.csv, events.csv and
/// summary.json into `out_dir` (created if missing).
RunOutputs cmd_run(const SimConfig& config, const std::filesystem::path& out_dir, unsigned workers);

struct ValidateHooks {
    /// Multiplies lambda^2 in the reference integration only (negative control).
    double oracle_rate_scale = 1.0;
    /// Pass threshold; defaults to 3 / sqrt(n_traj).
    std::optional<double> tolerance;
};

struct ValidateReport {
    std::vector<double> times;
    std::vector<double> distances;
    double max_trace_distance = 0.0;
    double mean_trace_distance = 0.0;
    double statistical_bound = 0.0;  // 3 / sqrt(n_traj)
    double tolerance = 0.0;
    bool pass = false;
};

/// Requires snapshots. Writes validate.json and validate.csv.
ValidateReport cmd_validate(const SimConfig& config, const std::filesystem::path& out_dir, unsigned workers,
                            const ValidateHooks& hooks = {});

struct SweepPoint {
    double value = 0.0;
    std::string directory;
    SummaryStats summary;
};

/// One cmd_run per value, all with the base master seed, in `out_dir/<axis>_<k>`,
/// plus manifest.json, sweep_counts.csv and sweep_intervals.csv.
std::vector<SweepPoint> cmd_sweep(const SimConfig& base, std::string_view axis, std::span<const double> values,
                                  const std::filesystem::path& out_dir, unsigned workers);

/// Rebuilds counts.csv, intervals.csv and summary.json from an events.csv
/// written by cmd_run, using the config's n_traj and dt_bin.
RunOutputs cmd_stats(const SimConfig& config, const std::filesystem::path& events_path,
                     const std::filesystem::path& out_dir);

std::string format_double(double x);
std::string counts_csv(const CountHistogram& h);
std::string intervals_csv(const IntervalHistogram& h);
std::string events_csv(std::span<const TrajectoryRecord> records);
/// Parses events.csv back into n_traj records (trajectories without events
/// get empty records).
std::vector<TrajectoryRecord> parse_events_csv(std::string_view text, std::uint64_t n_traj);

}  // namespace lzqt::cli
