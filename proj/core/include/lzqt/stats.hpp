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

// stats.hpp: jump-count and jump-time statistics over trajectory ensembles.
//
// All aggregation is done on integer counts in JumpTally; probabilities are
// formed once at the end, so merging shards in any order gives bit-identical
// results.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lzqt/engine.hpp"

namespace lzqt {

/// Partial aggregate over a set of trajectories.
class JumpTally {
public:
    /// `dt_bin` <= 0 disables interval binning. Throws ConfigError if the bin
    /// width does not divide the window within 1e-9.
    JumpTally(std::size_t n_channels, double t_start, double t_end, double dt_bin = 0.0);

    void add(const TrajectoryRecord& record);
    void add(std::span<const TrajectoryRecord> records);

    /// Throws ConfigError if the two tallies were built for different setups.
    JumpTally& merge(const JumpTally& other);

    std::size_t n_channels() const noexcept { return n_channels_; }
    double t_start() const noexcept { return t_start_; }
    double t_end() const noexcept { return t_end_; }
    double dt_bin() const noexcept { return dt_bin_; }
    std::size_t n_bins() const noexcept { return interval_events_.size(); }

    std::uint64_t n_traj() const noexcept { return n_traj_; }
    std::uint64_t total_events() const noexcept { return total_events_; }
    /// N -> number of trajectories with exactly N jumps.
    const std::map<std::uint64_t, std::uint64_t>& count_traj() const noexcept { return count_traj_; }
    /// Per channel: N -> number of trajectories with exactly N jumps in that channel.
    const std::vector<std::map<std::uint64_t, std::uint64_t>>& channel_count_traj() const noexcept {
        return channel_count_traj_;
    }
    const std::vector<std::uint64_t>& channel_events() const noexcept { return channel_events_; }
    const std::vector<std::uint64_t>& interval_events() const noexcept { return interval_events_; }
    /// Number of trajectories with at least one jump in each interval.
    const std::vector<std::uint64_t>& interval_hits() const noexcept { return interval_hits_; }

    std::size_t bin_of(double time) const noexcept;

    friend bool operator==(const JumpTally&, const JumpTally&) = default;

private:
    std::size_t n_channels_;
    double t_start_;
    double t_end_;
    double dt_bin_;
    std::uint64_t n_traj_ = 0;
    std::uint64_t total_events_ = 0;
    std::map<std::uint64_t, std::uint64_t> count_traj_;
    std::vector<std::map<std::uint64_t, std::uint64_t>> channel_count_traj_;
    std::vector<std::uint64_t> channel_events_;
    std::vector<std::uint64_t> interval_events_;
    std::vector<std::uint64_t> interval_hits_;
};

/// Merge shards from disjoint trajectory-id ranges. An empty span throws.
JumpTally merge_partials(std::span<const JumpTally> partials);

struct CountHistogram {
    std::map<std::uint64_t, double> probs;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t n_traj = 0;
    std::vector<std::map<std::uint64_t, double>> per_channel;
};

CountHistogram count_histogram(const JumpTally& tally);
/// Throws ConfigError for an empty ensemble.
CountHistogram count_histogram(std::span<const TrajectoryRecord> records, std::size_t n_channels);

struct IntervalHistogram {
    std::vector<double> edges;
    std::vector<double> mean_jumps;      // expected jumps per trajectory in the interval
    std::vector<double> event_fraction;  // share of all jump events
    std::vector<double> traj_fraction;   // share of trajectories with >= 1 jump in the interval
};

IntervalHistogram interval_histogram(const JumpTally& tally);
IntervalHistogram interval_histogram(std::span<const TrajectoryRecord> records, double t_start, double t_end,
                                     double dt_bin);

struct SummaryStats {
    double mean = 0.0;
    std::uint64_t median = 0;  // smallest N with CDF >= 1/2
    std::uint64_t mode = 0;    // ties go to the smallest N
    double variance = 0.0;
};

SummaryStats summarize(const CountHistogram& h);

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;  // sample standard deviation / sqrt(n)
};

/// Mean jump count per trajectory with its Monte Carlo standard error.
MeanEstimate mean_jump_count(std::span<const TrajectoryRecord> records);

struct MirrorDefect {
    std::size_t bin = 0;
    std::size_t mirror = 0;
    double difference = 0.0;      // event_fraction[bin] - event_fraction[mirror]
    double standard_error = 0.0;  // ratio-estimator standard error of the difference
};

/// Asymmetry of the event-fraction profile under t -> t_start + t_end - t, one
/// entry per mirrored pair of bins (bin < mirror).
std::vector<MirrorDefect> mirror_asymmetry(std::span<const TrajectoryRecord> records, double t_start,
                                           double t_end, double dt_bin);

/// Fraction of all jump events with time strictly greater than `t0`
/// (0 when there are no events).
double fraction_of_events_after(std::span<const TrajectoryRecord> records, double t0) noexcept;

}  // namespace lzqt
