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

// engine.hpp: Monte Carlo wave-function (quantum-jump) trajectories.
//
// One step of length dt from |phi(t)>:
//   H      = H_S - (i lambda^2 / 2) sum_m C_m^dag C_m
//   dp     = i dt <phi|H - H^dag|phi> = lambda^2 dt sum_m <phi|C_m^dag C_m|phi>
//   no jump (eps > dp): |phi'> = (1 - i H dt)|phi>, renormalized
//   jump    (eps <= dp): channel m with probability dp_m = lambda^2 dt <C_m^dag C_m> / dp,
//                        |phi'> = lambda sqrt(dt / (dp dp_m)) C_m |phi>
// Jump events carry the time at the start of the step.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lzqt/dissipation.hpp"
#include "lzqt/numerics.hpp"

namespace lzqt {

enum class StepMode { fixed, adaptive };

struct StepControl {
    StepMode mode = StepMode::adaptive;
    double dt_max = 0.01;  // fixed mode: the step; adaptive mode: upper cap
    double eta = 0.01;     // adaptive: dt = eta / (eps_+ + lambda^2 sum ||C^dag C||)
    double dt_min = 1e-9;  // trajectories needing a smaller step fail

    friend bool operator==(const StepControl&, const StepControl&) = default;
    void validate() const;
};

enum class InitialState { g, e, ground, excited };

/// |g>, |e>, |eps_-(t_start)> or |eps_+(t_start)>.
StateVector initial_state(InitialState which, const LzParams& lz, double t_start) noexcept;

struct JumpEvent {
    double time = 0.0;
    std::uint32_t channel = 0;  // 0-based
    std::uint64_t trajectory_id = 0;

    friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

struct Snapshot {
    double time = 0.0;
    StateVector state;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct TrajectoryRecord {
    std::uint64_t trajectory_id = 0;
    std::vector<JumpEvent> events;
    std::vector<Snapshot> snapshots;
    std::uint64_t seed_stream = 0;
    std::uint64_t n_steps = 0;
    double dt_smallest = 0.0;
    double dt_largest = 0.0;

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

struct EngineConfig {
    JumpModel model = JumpModel::type1(LzParams{}, TypeIParams{});
    double t_start = -100.0;
    double t_end = 100.0;
    InitialState initial = InitialState::g;
    StepControl step;
    double snapshot_spacing = 0.0;  // <= 0 disables snapshots
    std::uint64_t n_traj = 1;
    std::uint64_t master_seed = 1;

    void validate() const;
    /// t_start, t_start + spacing, ..., clipped to t_end. Empty if disabled.
    std::vector<double> snapshot_times() const;
};

Operator2 effective_hamiltonian(double t, const JumpModel& model);
Operator2 effective_hamiltonian(const Operator2& h_system, const JumpSet& jumps) noexcept;

/// lambda^2 sum_m ||C_m^dag C_m|| (operator norms).
double rate_bound(const JumpSet& jumps) noexcept;

/// Step length chosen by `control` at time t for the given jump set.
double choose_dt(const StepControl& control, double t, const LzParams& lz, const JumpSet& jumps) noexcept;

struct StepOutcome {
    StateVector state;
    std::optional<JumpEvent> event;
    double jump_probability = 0.0;  // dp
};

/// One step with pre-evaluated operators. `first_draw` decides jump/no-jump;
/// `next_draw` is invoked only when a jump fires, to pick the channel.
template <class Draw>
StepOutcome advance(const StateVector& phi, double t, double dt, const Operator2& h_system, const JumpSet& jumps,
                    Draw&& draw);

template <class Draw>
StepOutcome step(const StateVector& phi, double t, double dt, const JumpModel& model, Draw&& draw) {
    const JumpSet js = model.jumps(t);
    return advance(phi, t, dt, model.hamiltonian(t), js, draw);
}

TrajectoryRecord run_trajectory(const EngineConfig& config, std::uint64_t trajectory_id);

/// Runs trajectories 0..n_traj-1 on `workers` threads (0 = hardware
/// concurrency). Output is ordered by trajectory id and independent of the
/// worker count. Throws SimulationError if any trajectory fails.
std::vector<TrajectoryRecord> run_ensemble(const EngineConfig& config, unsigned workers = 1);

/// Runs trajectories [first, last) only.
std::vector<TrajectoryRecord> run_ensemble_range(const EngineConfig& config, std::uint64_t first,
                                                 std::uint64_t last, unsigned workers = 1);

namespace detail {

struct ChannelAmplitudes {
    std::array<StateVector, 3> c_phi{};   // C_m |phi>
    std::array<double, 3> weight{};       // lambda^2 dt <C_m^dag C_m>
    double total = 0.0;                   // dp
};

ChannelAmplitudes channel_amplitudes(const StateVector& phi, double dt, const JumpSet& jumps) noexcept;
StateVector no_jump_update(const StateVector& phi, double dt, const Operator2& h_system, const JumpSet& jumps,
                           const ChannelAmplitudes& amps);
std::size_t pick_channel(const ChannelAmplitudes& amps, std::size_t count, double u) noexcept;
[[noreturn]] void fail_step(const char* what, double t, double dp);

}  // namespace detail

template <class Draw>
StepOutcome advance(const StateVector& phi, double t, double dt, const Operator2& h_system, const JumpSet& jumps,
                    Draw&& draw) {
    const detail::ChannelAmplitudes amps = detail::channel_amplitudes(phi, dt, jumps);
    const double dp = amps.total;
    if (!(dp < 0.1)) detail::fail_step("jump probability per step must stay below 0.1", t, dp);

    StepOutcome out;
    out.jump_probability = dp;
    const double eps = draw();
    if (dp < eps) {
        out.state = detail::no_jump_update(phi, dt, h_system, jumps, amps);
        return out;
    }
    const std::size_t m = detail::pick_channel(amps, jumps.count, draw());
    if (!(amps.weight[m] > 0.0)) detail::fail_step("jump fired but every channel has zero weight", t, dp);
    const double dp_m = amps.weight[m] / dp;
    out.state = (jumps.lambda * std::sqrt(dt / (dp * dp_m))) * amps.c_phi[m];
    out.event = JumpEvent{t, static_cast<std::uint32_t>(m), 0};
    return out;
}

}  // namespace lzqt
