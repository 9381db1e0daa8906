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

#include "lzqt/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "lzqt/errors.hpp"
#include "lzqt/rng.hpp"

namespace lzqt {

void StepControl::validate() const {
    if (!(std::isfinite(dt_max) && dt_max > 0.0)) throw ConfigError("step.dt_max must be a finite positive number");
    if (!(eta > 0.0 && eta <= 0.1)) throw ConfigError("step.eta must lie in (0, 0.1]");
    if (!(std::isfinite(dt_min) && dt_min > 0.0 && dt_min <= dt_max)) {
        throw ConfigError("step.dt_min must be positive and no larger than step.dt_max");
    }
}

StateVector initial_state(InitialState which, const LzParams& lz, double t_start) noexcept {
    switch (which) {
        case InitialState::g: return ket_g();
        case InitialState::e: return ket_e();
        case InitialState::ground: return instant_spectrum(t_start, lz).ket_minus;
        case InitialState::excited: return instant_spectrum(t_start, lz).ket_plus;
    }
    return ket_g();
}

void EngineConfig::validate() const {
    if (!(std::isfinite(t_start) && std::isfinite(t_end) && t_start < t_end)) {
        throw ConfigError("window.t_start must be smaller than window.t_end");
    }
    step.validate();
    if (n_traj < 1) throw ConfigError("ensemble.n_traj must be at least 1");
    if (!std::isfinite(snapshot_spacing)) throw ConfigError("snapshots.grid_spacing must be finite");
}

std::vector<double> EngineConfig::snapshot_times() const {
    std::vector<double> times;
    if (snapshot_spacing <= 0.0) return times;
    const double span = t_end - t_start;
    const auto n = static_cast<std::uint64_t>(std::floor(span / snapshot_spacing + 1e-9));
    times.reserve(n + 2);
    const double tol = 1e-9 * std::max(1.0, std::abs(t_end));
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double tk = t_start + static_cast<double>(k) * snapshot_spacing;
        times.push_back(std::abs(tk - t_end) <= tol ? t_end : std::min(tk, t_end));
    }
    if (times.back() < t_end) times.push_back(t_end);
    return times;
}

namespace {

Operator2 decay_operator(const JumpSet& jumps) noexcept {
    if (jumps.has_cache) return jumps.decay;
    Operator2 k{};
    for (const Operator2& c : jumps.ops()) k += adjoint(c) * c;
    return k;
}

}  // namespace

Operator2 effective_hamiltonian(const Operator2& h_system, const JumpSet& jumps) noexcept {
    return h_system - Complex{0.0, 0.5 * jumps.lambda * jumps.lambda} * decay_operator(jumps);
}

Operator2 effective_hamiltonian(double t, const JumpModel& model) {
    return effective_hamiltonian(model.hamiltonian(t), model.jumps(t));
}

double rate_bound(const JumpSet& jumps) noexcept {
    if (jumps.has_cache) return jumps.lambda * jumps.lambda * jumps.norm_sq_sum;
    double sum = 0.0;
    for (const Operator2& c : jumps.ops()) {
        // ||C^dag C|| = ||C||^2
        const double s = spectral_norm(c);
        sum += s * s;
    }
    return jumps.lambda * jumps.lambda * sum;
}

double choose_dt(const StepControl& control, double t, const LzParams& lz, const JumpSet& jumps) noexcept {
    if (control.mode == StepMode::fixed) return control.dt_max;
    const double scale = eps_plus(t, lz) + rate_bound(jumps);
    return std::min(control.dt_max, control.eta / scale);
}

namespace detail {

ChannelAmplitudes channel_amplitudes(const StateVector& phi, double dt, const JumpSet& jumps) noexcept {
    ChannelAmplitudes a;
    const double scale = jumps.lambda * jumps.lambda * dt;
    for (std::size_t m = 0; m < jumps.count; ++m) {
        a.c_phi[m] = matvec(jumps.storage[m], phi);
        a.weight[m] = scale * a.c_phi[m].norm_squared();
        a.total += a.weight[m];
    }
    return a;
}

StateVector no_jump_update(const StateVector& phi, double dt, const Operator2& h_system, const JumpSet& jumps,
                           const ChannelAmplitudes& amps) {
    // (1 - i H dt)|phi> with H = H_S - (i lambda^2/2) sum C^dag C.
    StateVector k_phi{};
    if (jumps.has_cache) {
        k_phi = matvec(jumps.decay, phi);
    } else {
        for (std::size_t m = 0; m < jumps.count; ++m) k_phi = k_phi + matvec(adjoint(jumps.storage[m]), amps.c_phi[m]);
    }
    const StateVector h_phi = matvec(h_system, phi);
    const double half_rate = 0.5 * jumps.lambda * jumps.lambda * dt;
    StateVector next = phi - Complex{0.0, dt} * h_phi - half_rate * k_phi;
    const double n = next.norm();
    if (!(n > 0.0) || !std::isfinite(n)) fail_step("no-jump update produced a zero or non-finite state", jumps.time, amps.total);
    return (1.0 / n) * next;
}

std::size_t pick_channel(const ChannelAmplitudes& amps, std::size_t count, double u) noexcept {
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t m = 0; m < count; ++m) {
        if (amps.weight[m] <= 0.0) continue;
        last_nonzero = m;
        cumulative += amps.weight[m] / amps.total;
        if (u < cumulative) return m;
    }
    return last_nonzero;
}

void fail_step(const char* what, double t, double dp) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (t=" << t << ", dp=" << dp << ")";
    throw SimulationError(os.str());
}

}  // namespace detail

TrajectoryRecord run_trajectory(const EngineConfig& config, std::uint64_t trajectory_id) {
    TrajectoryRecord rec;
    rec.trajectory_id = trajectory_id;
    rec.seed_stream = stream_seed(config.master_seed, trajectory_id);
    rec.dt_smallest = std::numeric_limits<double>::infinity();
    rec.dt_largest = 0.0;

    UniformStream draw(rec.seed_stream);
    const JumpModel& model = config.model;
    const LzParams& lz = model.lz();
    const std::vector<double> grid = config.snapshot_times();
    rec.snapshots.reserve(grid.size());

    double t = config.t_start;
    StateVector phi = initial_state(config.initial, lz, t);
    std::size_t next_sample = 0;
    if (!grid.empty() && grid.front() == t) rec.snapshots.push_back({t, phi}), ++next_sample;

    try {
        while (t < config.t_end) {
            const JumpSet js = model.jumps(t);
            double dt = choose_dt(config.step, t, lz, js);
            if (!(dt >= config.step.dt_min)) {
                std::ostringstream os;
                os.precision(17);
                os << "required step " << dt << " fell below step.dt_min=" << config.step.dt_min << " at t=" << t
                   << " (jump rates too large for the window; check spectral_sign / omega_c)";
                throw SimulationError(os.str());
            }
            const double boundary = next_sample < grid.size() ? std::min(grid[next_sample], config.t_end) : config.t_end;
            const bool lands = t + dt >= boundary - 1e-12 * std::max(1.0, std::abs(boundary));
            if (lands) dt = boundary - t;

            StepOutcome out = advance(phi, t, dt, h_lz(t, lz), js, draw);
            if (out.event) {
                out.event->trajectory_id = trajectory_id;
                rec.events.push_back(*out.event);
            }
            phi = out.state;
            ++rec.n_steps;
            rec.dt_smallest = std::min(rec.dt_smallest, dt);
            rec.dt_largest = std::max(rec.dt_largest, dt);
            t = lands ? boundary : t + dt;
            while (next_sample < grid.size() && grid[next_sample] <= t) {
                rec.snapshots.push_back({grid[next_sample], phi});
                ++next_sample;
            }
        }
    } catch (const SimulationError& e) {
        std::ostringstream os;
        os << "trajectory " << trajectory_id << ": " << e.what();
        throw SimulationError(os.str());
    }
    if (rec.n_steps == 0) rec.dt_smallest = 0.0;
    return rec;
}

std::vector<TrajectoryRecord> run_ensemble_range(const EngineConfig& config, std::uint64_t first,
                                                 std::uint64_t last, unsigned workers) {
    config.validate();
    if (last < first) throw ConfigError("run_ensemble_range: last < first");
    const std::uint64_t count = last - first;
    std::vector<TrajectoryRecord> records(count);
    std::vector<std::string> errors(count);
    std::atomic<std::uint64_t> next{0};

    auto work = [&] {
        for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                records[i] = run_trajectory(config, first + i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::size_t failures = 0;
    std::string first_error;
    for (const auto& e : errors) {
        if (e.empty()) continue;
        if (failures++ == 0) first_error = e;
    }
    if (failures > 0) {
        std::ostringstream os;
        os << failures << " of " << count << " trajectories failed; first: " << first_error;
        throw SimulationError(os.str());
    }
    return records;
}

std::vector<TrajectoryRecord> run_ensemble(const EngineConfig& config, unsigned workers) {
    return run_ensemble_range(config, 0, config.n_traj, workers);
}

}  // namespace lzqt
