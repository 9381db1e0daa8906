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

#include "lzqt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lzqt/errors.hpp"

namespace lzqt {

namespace {

Operator2 commutator(const Operator2& a, const Operator2& b) noexcept { return a * b - b * a; }

Operator2 lindblad_rhs(const JumpModel& model, double t, const Operator2& rho) {
    return Complex{0.0, -1.0} * commutator(model.hamiltonian(t), rho) + dissipator(model.jumps(t), rho);
}

void check_state(const Operator2& rho, double t, const MasterOptions& o) {
    std::ostringstream os;
    os.precision(17);
    const double herm = hermiticity_defect(rho);
    const double tr = std::abs(trace(rho) - 1.0);
    const double mn = min_eigenvalue(rho);
    if (!(herm <= o.hermiticity_tol)) {
        os << "integrate_master: Hermiticity defect " << herm << " at t=" << t;
    } else if (!(tr <= o.trace_tol)) {
        os << "integrate_master: trace error " << tr << " at t=" << t;
    } else if (!(mn >= -o.positivity_tol)) {
        os << "integrate_master: negative eigenvalue " << mn << " at t=" << t;
    } else {
        return;
    }
    throw SimulationError(os.str());
}

// exp(-i M) for Hermitian M.
Operator2 unitary_exp(const Operator2& m) noexcept {
    const double m0 = 0.5 * (m.m[0].real() + m.m[3].real());
    const double mz = 0.5 * (m.m[0].real() - m.m[3].real());
    const Complex off = 0.5 * (m.m[1] + std::conj(m.m[2]));
    const double mx = off.real();
    const double my = -off.imag();
    const double r = std::sqrt(mx * mx + my * my + mz * mz);
    const double c = std::cos(r);
    const double s = r > 0.0 ? std::sin(r) / r : 1.0;
    // cos r I - i sin r (n . sigma)
    Operator2 u{{Complex{c, -s * mz}, Complex{-s * my, -s * mx}, Complex{s * my, -s * mx}, Complex{c, s * mz}}};
    return std::polar(1.0, -m0) * u;
}

}  // namespace

DensityTrajectory integrate_master(const JumpModel& model, const Operator2& rho0, double t_start, double t_end,
                                   std::span<const double> sample_times, const MasterOptions& options) {
    if (!(options.step_factor > 0.0 && options.step_factor <= 0.01)) {
        throw ConfigError("integrate_master: step_factor must lie in (0, 0.01]");
    }
    if (!(t_start < t_end)) throw ConfigError("integrate_master: t_start must be smaller than t_end");
    if (!std::is_sorted(sample_times.begin(), sample_times.end()) ||
        (!sample_times.empty() && (sample_times.front() < t_start || sample_times.back() > t_end))) {
        throw ConfigError("integrate_master: sample times must be sorted and inside the window");
    }
    check_state(rho0, t_start, options);

    DensityTrajectory out;
    out.times.assign(sample_times.begin(), sample_times.end());
    out.states.reserve(sample_times.size());

    Operator2 rho = rho0;
    double t = t_start;
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= t) {
        out.states.push_back(rho);
        ++next;
    }
    const double target_end = sample_times.empty() ? t_end : sample_times.back();
    while (next < sample_times.size() && t < target_end) {
        const JumpSet js = model.jumps(t);
        const double scale = std::max({eps_plus(t, model.lz()), rate_bound(js), 1.0});
        double h = options.step_factor / scale;
        if (!(h >= options.min_step)) {
            std::ostringstream os;
            os << "integrate_master: step " << h << " below min_step at t=" << t;
            throw SimulationError(os.str());
        }
        const double boundary = sample_times[next];
        const bool lands = t + h >= boundary - 1e-12 * std::max(1.0, std::abs(boundary));
        if (lands) h = boundary - t;

        const Operator2 k1 = lindblad_rhs(model, t, rho);
        const Operator2 k2 = lindblad_rhs(model, t + 0.5 * h, rho + (0.5 * h) * k1);
        const Operator2 k3 = lindblad_rhs(model, t + 0.5 * h, rho + (0.5 * h) * k2);
        const Operator2 k4 = lindblad_rhs(model, t + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = lands ? boundary : t + h;

        while (next < sample_times.size() && sample_times[next] <= t) {
            check_state(rho, sample_times[next], options);
            out.states.push_back(rho);
            ++next;
        }
    }
    return out;
}

StateVector integrate_schrodinger(const LzParams& lz, const StateVector& phi0, double t_start, double t_end,
                                  const SchrodingerOptions& options) {
    lz.validate();
    if (!(options.step_factor > 0.0 && options.step_factor <= 0.01)) {
        throw ConfigError("integrate_schrodinger: step_factor must lie in (0, 0.01]");
    }
    if (!(t_start < t_end)) throw ConfigError("integrate_schrodinger: t_start must be smaller than t_end");

    const double gauss = std::sqrt(3.0) / 6.0;
    const double comm_coeff = std::sqrt(3.0) / 12.0;
    StateVector phi = phi0;
    // Over ~1e7 steps the rounding in t += h would shift the dynamical phase
    // by ~1e-8, so the clock uses compensated summation.
    double t = t_start;
    double carry = 0.0;
    while (t < t_end) {
        double h = options.step_factor / std::max(eps_plus(t, lz), 1.0);
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;
        const Operator2 h1 = h_lz(t + (0.5 - gauss) * h, lz);
        const Operator2 h2 = h_lz(t + (0.5 + gauss) * h, lz);
        // Omega = -i M,  M = h/2 (H1 + H2) - i (sqrt3/12) h^2 [H2, H1]
        const Operator2 m = (0.5 * h) * (h1 + h2) - Complex{0.0, comm_coeff * h * h} * commutator(h2, h1);
        phi = matvec(unitary_exp(m), phi);
        if (last) {
            t = t_end;
        } else {
            const double y = h - carry;
            const double next = t + y;
            carry = (next - t) - y;
            t = next;
        }
    }
    return phi;
}

DensityTrajectory ensemble_density(std::span<const TrajectoryRecord> records) {
    if (records.empty()) throw ConfigError("ensemble_density: no records");
    DensityTrajectory out;
    const auto& grid = records.front().snapshots;
    out.times.reserve(grid.size());
    for (const auto& s : grid) out.times.push_back(s.time);
    out.states.assign(grid.size(), Operator2{});
    for (const auto& r : records) {
        if (r.snapshots.size() != grid.size()) throw ConfigError("ensemble_density: mismatched snapshot grids");
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (r.snapshots[k].time != out.times[k]) throw ConfigError("ensemble_density: mismatched snapshot grids");
            out.states[k] += projector(r.snapshots[k].state);
        }
    }
    const double inv = 1.0 / static_cast<double>(records.size());
    for (auto& rho : out.states) rho *= inv;
    return out;
}

std::vector<double> trace_distances(const DensityTrajectory& a, const DensityTrajectory& b) {
    if (a.times != b.times || a.states.size() != b.states.size()) {
        throw ConfigError("trace_distances: trajectories have different time grids");
    }
    std::vector<double> d(a.states.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = trace_distance(a.states[k], b.states[k]);
    return d;
}

}  // namespace lzqt
