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

#include "lzqt/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lzqt/errors.hpp"
#include "lzqt/oracle.hpp"

namespace lzqt::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
}

json summary_json(const SummaryStats& s) {
    return {{"mean", s.mean}, {"median", s.median}, {"mode", s.mode}, {"variance", s.variance}};
}

StepStats step_stats(std::span<const TrajectoryRecord> records) {
    StepStats st;
    st.dt_smallest = std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
        st.total_steps += r.n_steps;
        if (r.n_steps == 0) continue;
        st.dt_smallest = std::min(st.dt_smallest, r.dt_smallest);
        st.dt_largest = std::max(st.dt_largest, r.dt_largest);
    }
    if (st.total_steps == 0) st.dt_smallest = 0.0;
    return st;
}

RunOutputs finish_outputs(const SimConfig& config, std::span<const TrajectoryRecord> records,
                          const fs::path& out_dir, std::optional<double> runtime) {
    JumpTally tally(make_model(config).channel_count(), config.t_start, config.t_end, config.dt_bin);
    tally.add(records);
    RunOutputs out{tally, count_histogram(tally), interval_histogram(tally), {}, step_stats(records), 0.0};
    out.summary = summarize(out.counts);

    ensure_dir(out_dir);
    write_file(out_dir / "counts.csv", counts_csv(out.counts));
    write_file(out_dir / "intervals.csv", intervals_csv(out.intervals));

    json s;
    s["config"] = json::parse(serialize_config(config));
    s["summary"] = summary_json(out.summary);
    s["n_traj"] = tally.n_traj();
    s["total_events"] = tally.total_events();
    s["channel_events"] = tally.channel_events();
    if (runtime) {
        out.runtime_seconds = *runtime;
        s["runtime_seconds"] = *runtime;
        const double n = static_cast<double>(records.size());
        s["steps"] = {{"total", out.steps.total_steps},
                      {"mean_per_trajectory", static_cast<double>(out.steps.total_steps) / n},
                      {"dt_smallest", out.steps.dt_smallest},
                      {"dt_largest", out.steps.dt_largest}};
    }
    write_file(out_dir / "summary.json", s.dump(2) + "\n");
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string counts_csv(const CountHistogram& h) {
    std::uint64_t max_n = 0;
    if (!h.probs.empty()) max_n = h.probs.rbegin()->first;
    for (const auto& ch : h.per_channel)
        if (!ch.empty()) max_n = std::max(max_n, ch.rbegin()->first);

    std::string out = "N,probability";
    for (std::size_t m = 0; m < h.per_channel.size(); ++m) out += ",channel_" + std::to_string(m);
    out += '\n';
    auto lookup = [](const std::map<std::uint64_t, double>& p, std::uint64_t n) {
        const auto it = p.find(n);
        return it == p.end() ? 0.0 : it->second;
    };
    for (std::uint64_t n = 0; n <= max_n; ++n) {
        out += std::to_string(n) + ',' + format_double(lookup(h.probs, n));
        for (const auto& ch : h.per_channel) out += ',' + format_double(lookup(ch, n));
        out += '\n';
    }
    return out;
}

std::string intervals_csv(const IntervalHistogram& h) {
    std::string out = "t_lo,t_hi,mean_jumps,event_fraction,traj_fraction\n";
    for (std::size_t b = 0; b < h.mean_jumps.size(); ++b) {
        out += format_double(h.edges[b]) + ',' + format_double(h.edges[b + 1]) + ',' + format_double(h.mean_jumps[b]) +
               ',' + format_double(h.event_fraction[b]) + ',' + format_double(h.traj_fraction[b]) + '\n';
    }
    return out;
}

std::string events_csv(std::span<const TrajectoryRecord> records) {
    std::string out = "trajectory_id,time,channel\n";
    for (const auto& r : records) {
        for (const auto& e : r.events) {
            out += std::to_string(e.trajectory_id) + ',' + format_double(e.time) + ',' + std::to_string(e.channel) + '\n';
        }
    }
    return out;
}

std::vector<TrajectoryRecord> parse_events_csv(std::string_view text, std::uint64_t n_traj) {
    std::vector<TrajectoryRecord> records(n_traj);
    for (std::uint64_t i = 0; i < n_traj; ++i) records[i].trajectory_id = i;

    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "trajectory_id,time,channel") {
        throw ConfigError("events file must start with the header 'trajectory_id,time,channel'");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError("events file: malformed line " + std::to_string(line_no));
        char* end = nullptr;
        const std::string id_s = line.substr(0, c1);
        const std::string t_s = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string ch_s = line.substr(c2 + 1);
        const unsigned long long id = std::strtoull(id_s.c_str(), &end, 10);
        if (*end != '\0' || id_s.empty()) throw ConfigError("events file: bad trajectory id on line " + std::to_string(line_no));
        const double t = std::strtod(t_s.c_str(), &end);
        if (*end != '\0' || t_s.empty()) throw ConfigError("events file: bad time on line " + std::to_string(line_no));
        const unsigned long ch = std::strtoul(ch_s.c_str(), &end, 10);
        if (*end != '\0' || ch_s.empty()) throw ConfigError("events file: bad channel on line " + std::to_string(line_no));
        if (id >= n_traj) {
            throw ConfigError("events file: trajectory id " + std::to_string(id) + " exceeds ensemble.n_traj");
        }
        records[id].events.push_back({t, static_cast<std::uint32_t>(ch), id});
    }
    return records;
}

RunOutputs cmd_run(const SimConfig& config, const fs::path& out_dir, unsigned workers) {
    const EngineConfig engine = to_engine_config(config);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<TrajectoryRecord> records = run_ensemble(engine, workers);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RunOutputs out = finish_outputs(config, records, out_dir, runtime);
    write_file(out_dir / "events.csv", events_csv(records));
    return out;
}

RunOutputs cmd_stats(const SimConfig& config, const fs::path& events_path, const fs::path& out_dir) {
    std::ifstream in(events_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open events file '" + events_path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::vector<TrajectoryRecord> records = parse_events_csv(ss.str(), config.n_traj);
    return finish_outputs(config, records, out_dir, std::nullopt);
}

ValidateReport cmd_validate(const SimConfig& config, const fs::path& out_dir, unsigned workers,
                            const ValidateHooks& hooks) {
    if (!config.snapshots_enabled) throw ConfigError("validate requires snapshots.enabled = true");
    const EngineConfig engine = to_engine_config(config);
    const std::vector<TrajectoryRecord> records = run_ensemble(engine, workers);
    const DensityTrajectory ensemble = ensemble_density(records);

    const StateVector phi0 = initial_state(config.initial_state, config.lz, config.t_start);
    const JumpModel reference = engine.model.with_rate_scale(hooks.oracle_rate_scale);
    const DensityTrajectory oracle =
        integrate_master(reference, projector(phi0), config.t_start, config.t_end, ensemble.times);

    ValidateReport rep;
    rep.times = ensemble.times;
    rep.distances = trace_distances(ensemble, oracle);
    for (double d : rep.distances) {
        rep.max_trace_distance = std::max(rep.max_trace_distance, d);
        rep.mean_trace_distance += d;
    }
    if (!rep.distances.empty()) rep.mean_trace_distance /= static_cast<double>(rep.distances.size());
    rep.statistical_bound = 3.0 / std::sqrt(static_cast<double>(config.n_traj));
    rep.tolerance = hooks.tolerance.value_or(rep.statistical_bound);
    rep.pass = rep.max_trace_distance <= rep.tolerance;

    ensure_dir(out_dir);
    json j;
    j["config"] = json::parse(serialize_config(config));
    j["max_trace_distance"] = rep.max_trace_distance;
    j["mean_trace_distance"] = rep.mean_trace_distance;
    j["statistical_bound"] = rep.statistical_bound;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    j["n_samples"] = rep.distances.size();
    write_file(out_dir / "validate.json", j.dump(2) + "\n");

    std::string csv = "t,trace_distance\n";
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
        csv += format_double(rep.times[k]) + ',' + format_double(rep.distances[k]) + '\n';
    }
    write_file(out_dir / "validate.csv", csv);
    return rep;
}

std::vector<SweepPoint> cmd_sweep(const SimConfig& base, std::string_view axis, std::span<const double> values,
                                  const fs::path& out_dir, unsigned workers) {
    const auto axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), axis) == axes.end()) {
        throw ConfigError("unknown sweep axis '" + std::string(axis) + "'");
    }
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    // Validate every point before running any of them.
    std::vector<SimConfig> points;
    for (double v : values) points.push_back(with_axis_value(base, axis, v));

    ensure_dir(out_dir);
    std::vector<SweepPoint> result;
    json runs = json::array();
    std::string counts = "value,N,probability\n";
    std::string intervals = "value,t_lo,t_hi,mean_jumps,event_fraction,traj_fraction\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%02zu", std::string(axis).c_str(), k);
        const RunOutputs out = cmd_run(points[k], out_dir / name, workers);
        result.push_back({values[k], name, out.summary});
        runs.push_back({{"value", values[k]}, {"directory", name}, {"summary", summary_json(out.summary)}});

        const std::string value = format_double(values[k]);
        for (const auto& [n, p] : out.counts.probs) counts += value + ',' + std::to_string(n) + ',' + format_double(p) + '\n';
        const auto& iv = out.intervals;
        for (std::size_t b = 0; b < iv.mean_jumps.size(); ++b) {
            intervals += value + ',' + format_double(iv.edges[b]) + ',' + format_double(iv.edges[b + 1]) + ',' +
                         format_double(iv.mean_jumps[b]) + ',' + format_double(iv.event_fraction[b]) + ',' +
                         format_double(iv.traj_fraction[b]) + '\n';
        }
    }
    json manifest;
    manifest["axis"] = std::string(axis);
    manifest["values"] = std::vector<double>(values.begin(), values.end());
    manifest["n_traj"] = base.n_traj;
    manifest["master_seed"] = base.master_seed;
    manifest["base_config"] = json::parse(serialize_config(base));
    manifest["runs"] = runs;
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    write_file(out_dir / "sweep_counts.csv", counts);
    write_file(out_dir / "sweep_intervals.csv", intervals);
    return result;
}

}  // namespace lzqt::cli
