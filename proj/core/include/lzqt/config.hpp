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

// config.hpp: JSON simulation configuration.
//
// Example (all keys other than "model" and the model block are optional):
//
//   {
//     "model": "type1",
//     "lz": {"v": 0.1, "delta": 1},
//     "type1": {"gamma": 0.1, "tau": 0},
//     "window": {"t_start": -100, "t_end": 100},
//     "initial_state": "g",
//     "step": {"mode": "adaptive", "dt_max": 0.01, "eta": 0.01, "dt_min": 1e-9},
//     "ensemble": {"n_traj": 10000, "master_seed": 1},
//     "snapshots": {"enabled": false, "grid_spacing": 1},
//     "intervals": {"dt_bin": 20}
//   }
//
// Unknown keys are rejected. initial_state defaults to "g" for type1 and
// "ground" for type2.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lzqt/dissipation.hpp"
#include "lzqt/engine.hpp"

namespace lzqt {

struct SimConfig {
    ModelKind model = ModelKind::type1;
    LzParams lz{0.1, 1.0};
    TypeIParams type1;
    TypeIIParams type2;
    double t_start = -100.0;
    double t_end = 100.0;
    InitialState initial_state = InitialState::g;
    StepControl step;
    std::uint64_t n_traj = 10000;
    std::uint64_t master_seed = 1;
    bool snapshots_enabled = false;
    double grid_spacing = 1.0;
    double dt_bin = 20.0;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

SimConfig parse_config(std::string_view json_text);
SimConfig load_config(const std::string& path);

/// Pretty-printed JSON with sorted keys; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& config);

EngineConfig to_engine_config(const SimConfig& config);
JumpModel make_model(const SimConfig& config);

/// Scalars accepted by sweeps: v, delta, gamma, tau, lambda, theta,
/// temperature, omega_c, eta.
std::span<const std::string_view> sweep_axes() noexcept;

/// Copy of `config` with `axis` set to `value`. Throws ConfigError for an
/// unknown axis or an invalid result.
SimConfig with_axis_value(const SimConfig& config, std::string_view axis, double value);

std::string_view to_string(ModelKind kind) noexcept;
std::string_view to_string(InitialState s) noexcept;
std::string_view to_string(StepMode m) noexcept;

}  // namespace lzqt
