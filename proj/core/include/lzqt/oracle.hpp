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

// oracle.hpp: deterministic reference solutions used to check trajectory
// ensembles.
//
// integrate_master    classic RK4 on the Lindblad equation
//                     d rho/dt = -i[H_LZ, rho] + lambda^2 sum_m (C rho C^dag - 1/2{C^dag C, rho})
// integrate_schrodinger  fourth-order Magnus (two Gauss points) on i d|phi>/dt = H_LZ |phi>;
//                     exactly unitary per step.
// ensemble_density    rho(t_k) = (1/n) sum_i |phi_i(t_k)><phi_i(t_k)| from snapshots.

#pragma once

#include <span>
#include <vector>

#include "lzqt/dissipation.hpp"
#include "lzqt/engine.hpp"
#include "lzqt/numerics.hpp"

namespace lzqt {

struct DensityTrajectory {
    std::vector<double> times;
    std::vector<Operator2> states;
};

struct MasterOptions {
    /// h = step_factor / max(eps_+(t), lambda^2 sum ||C^dag C||, 1); must lie in (0, 0.01].
    double step_factor = 1e-3;
    double min_step = 1e-9;
    /// Sample-time tolerances: Hermiticity, trace, and smallest eigenvalue.
    double hermiticity_tol = 1e-10;
    double trace_tol = 1e-8;
    double positivity_tol = 1e-8;
};

struct SchrodingerOptions {
    /// h = step_factor / max(eps_+(t), 1); must lie in (0, 0.01].
    double step_factor = 5e-3;
};

/// Integrates from rho0 at t_start to t_end, returning rho at each sample
/// time (sorted, within the window). Throws SimulationError naming the time
/// if a sampled state breaks the tolerances in `options`.
DensityTrajectory integrate_master(const JumpModel& model, const Operator2& rho0, double t_start, double t_end,
                                   std::span<const double> sample_times, const MasterOptions& options = {});

StateVector integrate_schrodinger(const LzParams& lz, const StateVector& phi0, double t_start, double t_end,
                                  const SchrodingerOptions& options = {});

/// Throws ConfigError if the records are empty or do not share a snapshot grid.
DensityTrajectory ensemble_density(std::span<const TrajectoryRecord> records);

/// Pointwise trace distance; the trajectories must share their time grid.
std::vector<double> trace_distances(const DensityTrajectory& a, const DensityTrajectory& b);

/// Smallest eigenvalue of the Hermitian part.
inline double min_eigenvalue(const Operator2& rho) noexcept { return hermitian_eigenvalues(rho)[0]; }

}  // namespace lzqt
