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

#include "lzqt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lzqt/errors.hpp"

namespace lzqt {

namespace {

std::size_t bins_for(double t_start, double t_end, double dt_bin) {
    if (dt_bin <= 0.0) return 0;
    if (!std::isfinite(dt_bin)) throw ConfigError("intervals.dt_bin must be finite");
    const double n = (t_end - t_start) / dt_bin;
    const double rounded = std::round(n);
    if (rounded < 1.0 || std::abs(n - rounded) > 1e-9) {
        std::ostringstream os;
        os << "intervals.dt_bin=" << dt_bin << " does not divide the window [" << t_start << ", " << t_end << "]";
        throw ConfigError(os.str());
    }
    return static_cast<std::size_t>(rounded);
}

template <class Map>
void add_counts(Map& into, const Map& from) {
    for (const auto& [k, c] : from) into[k] += c;
}

void add_vec(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
    for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

}  // namespace

JumpTally::JumpTally(std::size_t n_channels, double t_start, double t_end, double dt_bin)
    : n_channels_(n_channels),
      t_start_(t_start),
      t_end_(t_end),
      dt_bin_(dt_bin > 0.0 ? dt_bin : 0.0),
      channel_count_traj_(n_channels),
      channel_events_(n_channels, 0) {
    if (!(t_start < t_end)) throw ConfigError("JumpTally: t_start must be smaller than t_end");
    const std::size_t bins = bins_for(t_start, t_end, dt_bin);
    interval_events_.assign(bins, 0);
    interval_hits_.assign(bins, 0);
}

std::size_t JumpTally::bin_of(double time) const noexcept {
    const double x = std::floor((time - t_start_) / dt_bin_);
    if (x <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(x), interval_events_.size() - 1);
}

void JumpTally::add(const TrajectoryRecord& record) {
    ++n_traj_;
    const std::uint64_t n = record.events.size();
    total_events_ += n;
    ++count_traj_[n];

    std::vector<std::uint64_t> per_channel(n_channels_, 0);
    std::vector<char> hit(interval_events_.size(), 0);
    for (const JumpEvent& ev : record.events) {
        if (ev.channel >= n_channels_) {
            throw ConfigError("JumpTally: event channel exceeds the model's channel count");
        }
        ++per_channel[ev.channel];
        if (!interval_events_.empty()) {
            const std::size_t b = bin_of(ev.time);
            ++interval_events_[b];
            hit[b] = 1;
        }
    }
    for (std::size_t m = 0; m < n_channels_; ++m) {
        ++channel_count_traj_[m][per_channel[m]];
        channel_events_[m] += per_channel[m];
    }
    for (std::size_t b = 0; b < hit.size(); ++b) interval_hits_[b] += static_cast<std::uint64_t>(hit[b]);
}

void JumpTally::add(std::span<const TrajectoryRecord> records) {
    for (const auto& r : records) add(r);
}

JumpTally& JumpTally::merge(const JumpTally& other) {
    if (n_channels_ != other.n_channels_ || t_start_ != other.t_start_ || t_end_ != other.t_end_ ||
        dt_bin_ != other.dt_bin_) {
        throw ConfigError("merge_partials: partial aggregates come from different configurations");
    }
    n_traj_ += other.n_traj_;
    total_events_ += other.total_events_;
    add_counts(count_traj_, other.count_traj_);
    for (std::size_t m = 0; m < n_channels_; ++m) add_counts(channel_count_traj_[m], other.channel_count_traj_[m]);
    add_vec(channel_events_, other.channel_events_);
    add_vec(interval_events_, other.interval_events_);
    add_vec(interval_hits_, other.interval_hits_);
    return *this;
}

JumpTally merge_partials(std::span<const JumpTally> partials) {
    if (partials.empty()) throw ConfigError("merge_partials: nothing to merge");
    JumpTally out = partials.front();
    for (std::size_t i = 1; i < partials.size(); ++i) out.merge(partials[i]);
    return out;
}

CountHistogram count_histogram(const JumpTally& tally) {
    if (tally.n_traj() == 0) throw ConfigError("count_histogram: empty ensemble");
    CountHistogram h;
    h.n_traj = tally.n_traj();
    const double n = static_cast<double>(h.n_traj);
    h.counts = tally.count_traj();
    for (const auto& [k, c] : h.counts) h.probs[k] = static_cast<double>(c) / n;
    h.per_channel.resize(tally.n_channels());
    for (std::size_t m = 0; m < tally.n_channels(); ++m) {
        for (const auto& [k, c] : tally.channel_count_traj()[m]) h.per_channel[m][k] = static_cast<double>(c) / n;
    }
    return h;
}

CountHistogram count_histogram(std::span<const TrajectoryRecord> records, std::size_t n_channels) {
    if (records.empty()) throw ConfigError("count_histogram: empty ensemble");
    JumpTally tally(n_channels, -1.0, 1.0);
    tally.add(records);
    return count_histogram(tally);
}

IntervalHistogram interval_histogram(const JumpTally& tally) {
    if (tally.n_traj() == 0) throw ConfigError("interval_histogram: empty ensemble");
    if (tally.n_bins() == 0) throw ConfigError("interval_histogram: tally was built without interval bins");
    IntervalHistogram h;
    const std::size_t bins = tally.n_bins();
    const double n = static_cast<double>(tally.n_traj());
    const double total = static_cast<double>(tally.total_events());
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = tally.t_start() + static_cast<double>(b) * tally.dt_bin();
    h.edges.back() = tally.t_end();
    for (std::size_t b = 0; b < bins; ++b) {
        const double ev = static_cast<double>(tally.interval_events()[b]);
        h.mean_jumps.push_back(ev / n);
        h.event_fraction.push_back(total > 0.0 ? ev / total : 0.0);
        h.traj_fraction.push_back(static_cast<double>(tally.interval_hits()[b]) / n);
    }
    return h;
}

IntervalHistogram interval_histogram(std::span<const TrajectoryRecord> records, double t_start, double t_end,
                                     double dt_bin) {
    if (records.empty()) throw ConfigError("interval_histogram: empty ensemble");
    if (!(dt_bin > 0.0)) throw ConfigError("interval_histogram: dt_bin must be positive");
    std::uint32_t max_channel = 0;
    for (const auto& r : records)
        for (const auto& e : r.events) max_channel = std::max(max_channel, e.channel);
    JumpTally tally(max_channel + 1, t_start, t_end, dt_bin);
    tally.add(records);
    return interval_histogram(tally);
}

SummaryStats summarize(const CountHistogram& h) {
    SummaryStats s;
    if (h.n_traj == 0 || h.counts.empty()) return s;
    const double n = static_cast<double>(h.n_traj);

    std::uint64_t cumulative = 0;
    bool median_set = false;
    std::uint64_t best = 0;
    long double sum = 0.0L;
    for (const auto& [k, c] : h.counts) {
        cumulative += c;
        if (!median_set && 2 * cumulative >= h.n_traj) {
            s.median = k;
            median_set = true;
        }
        if (c > best) {
            best = c;
            s.mode = k;
        }
        sum += static_cast<long double>(k) * static_cast<long double>(c);
    }
    s.mean = static_cast<double>(sum / static_cast<long double>(n));
    long double var = 0.0L;
    for (const auto& [k, c] : h.counts) {
        const long double d = static_cast<long double>(k) - static_cast<long double>(s.mean);
        var += d * d * static_cast<long double>(c);
    }
    s.variance = static_cast<double>(var / static_cast<long double>(n));
    return s;
}

MeanEstimate mean_jump_count(std::span<const TrajectoryRecord> records) {
    MeanEstimate m;
    if (records.empty()) return m;
    const double n = static_cast<double>(records.size());
    double sum = 0.0;
    for (const auto& r : records) sum += static_cast<double>(r.events.size());
    m.mean = sum / n;
    if (records.size() < 2) return m;
    double ss = 0.0;
    for (const auto& r : records) {
        const double d = static_cast<double>(r.events.size()) - m.mean;
        ss += d * d;
    }
    m.standard_error = std::sqrt(ss / (n - 1.0) / n);
    return m;
}

std::vector<MirrorDefect> mirror_asymmetry(std::span<const TrajectoryRecord> records, double t_start,
                                           double t_end, double dt_bin) {
    JumpTally shape(1, t_start, t_end, dt_bin);
    const std::size_t bins = shape.n_bins();
    if (bins == 0) throw ConfigError("mirror_asymmetry: dt_bin must be positive");

    // Per-trajectory bin counts feed a delta-method standard error for the
    // ratio (sum_i d_i) / (sum_i n_i).
    std::vector<std::vector<std::uint32_t>> per_traj(records.size(), std::vector<std::uint32_t>(bins, 0));
    double total = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& e : records[i].events) ++per_traj[i][shape.bin_of(e.time)];
        total += static_cast<double>(records[i].events.size());
    }

    std::vector<MirrorDefect> out;
    const double n = static_cast<double>(records.size());
    for (std::size_t b = 0; b < bins / 2; ++b) {
        MirrorDefect d;
        d.bin = b;
        d.mirror = bins - 1 - b;
        if (total > 0.0) {
            double diff_sum = 0.0;
            for (const auto& row : per_traj) diff_sum += double(row[d.bin]) - double(row[d.mirror]);
            d.difference = diff_sum / total;
            double ss = 0.0;
            for (std::size_t i = 0; i < records.size(); ++i) {
                const double di = double(per_traj[i][d.bin]) - double(per_traj[i][d.mirror]);
                const double resid = di - d.difference * static_cast<double>(records[i].events.size());
                ss += resid * resid;
            }
            const double correction = n > 1.0 ? n / (n - 1.0) : 1.0;
            d.standard_error = std::sqrt(ss * correction) / total;
        }
        out.push_back(d);
    }
    return out;
}

double fraction_of_events_after(std::span<const TrajectoryRecord> records, double t0) noexcept {
    std::uint64_t after = 0;
    std::uint64_t total = 0;
    for (const auto& r : records) {
        for (const auto& e : r.events) {
            ++total;
            if (e.time > t0) ++after;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(after) / static_cast<double>(total);
}

}  // namespace lzqt
