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


#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lzqt/errors.hpp"
#include "lzqt/oracle.hpp"

using namespace lzqt;

namespace {

std::vector<double> grid(double t0, double t1, double spacing) {
    EngineConfig c;
    c.t_start = t0;
    c.t_end = t1;
    c.snapshot_spacing = spacing;
    return c.snapshot_times();
}

TypeIIParams type2(double temperature, double theta = 0.0) {
    TypeIIParams p;
    p.temperature = temperature;
    p.theta = theta;
    return p;
}

double max_entry_difference(const DensityTrajectory& a, const DensityTrajectory& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.states[k].m[i] - b.states[k].m[i]));
    }
    return d;
}

void check_density_invariants(const DensityTrajectory& d) {
    for (const Operator2& rho : d.states) {
        CHECK(hermiticity_defect(rho) <= 1e-10);
        CHECK(std::abs(trace(rho) - 1.0) <= 1e-8);
        CHECK(min_eigenvalue(rho) >= -1e-8);
    }
}

}  // namespace

TEST_CASE("closed master equation stays pure") {
    const LzParams lz{0.1, 1.0};
    const JumpModel closed = JumpModel::type1(lz, {0.0, 0.0});
    const auto samples = grid(-100.0, 100.0, 5.0);
    const DensityTrajectory d = integrate_master(closed, projector(ket_e()), -100.0, 100.0, samples);
    REQUIRE(d.states.size() == samples.size());
    for (const Operator2& rho : d.states) CHECK(std::abs(purity(rho) - 1.0) <= 1e-8);
    // adiabatic following: |e> is the ground state at t = -100 and |g> at t = +100
    CHECK(d.states.back()(1, 1).real() >= 0.999);

    // and agrees with the Schrodinger oracle
    const StateVector phi = integrate_schrodinger(lz, ket_e(), -100.0, 100.0);
    CHECK(trace_distance(d.states.back(), projector(phi)) <= 1e-7);
}

TEST_CASE("driven decay relaxes to the resonance-fluorescence steady state") {
    // v -> 0 leaves H = sigma_x (Rabi frequency 2) with decay rate 0.1.
    const LzParams lz{1e-12, 1.0};
    const JumpModel model = JumpModel::type1(lz, {0.1, 0.0});
    const auto samples = grid(0.0, 300.0, 0.05);
    const DensityTrajectory d = integrate_master(model, projector(ket_e()), 0.0, 300.0, samples);
    check_density_invariants(d);

    const double steady = 1.0 / (2.0 + 0.1 * 0.1 / 4.0);
    CHECK(d.states.back()(0, 0).real() == doctest::Approx(steady).epsilon(1e-6));

    // the excited-population peaks of successive Rabi cycles decay monotonically
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < d.states.size(); ++k) {
        const double p = d.states[k](0, 0).real();
        if (p > d.states[k - 1](0, 0).real() && p >= d.states[k + 1](0, 0).real()) peaks.push_back(p);
    }
    REQUIRE(peaks.size() > 50);
    for (std::size_t k = 1; k < peaks.size(); ++k) CHECK(peaks[k] < peaks[k - 1]);
    CHECK(peaks.back() > steady);

    const DensityTrajectory fine =
        integrate_master(model, projector(ket_e()), 0.0, 300.0, samples, MasterOptions{.step_factor = 5e-4});
    CHECK(max_entry_difference(d, fine) < 1e-8);
}

TEST_CASE("zero-temperature Type II master equation stays in the ground state") {
    const LzParams lz{0.1, 1.0};
    for (double theta : {0.0, 1.5707963267948966}) {
        const JumpModel cold = JumpModel::type2(lz, type2(0.0, theta));
        const auto samples = grid(-100.0, 100.0, 1.0);
        const StateVector start = instant_spectrum(-100.0, lz).ket_minus;
        const DensityTrajectory d = integrate_master(cold, projector(start), -100.0, 100.0, samples);
        check_density_invariants(d);
        double worst = 0.0;
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const StateVector up = instant_spectrum(samples[k], lz).ket_plus;
            worst = std::max(worst, expectation(d.states[k], up).real());
        }
        CHECK(worst <= 1e-3);
    }
}

TEST_CASE("RK4 step halving") {
    const LzParams lz{0.1, 1.0};
    const auto samples = grid(-100.0, 100.0, 1.0);
    const JumpModel models[] = {JumpModel::type1(lz, {0.1, 0.5}), JumpModel::type2(lz, type2(0.2))};
    const Operator2 starts[] = {projector(ket_g()), projector(instant_spectrum(-100.0, lz).ket_minus)};
    for (std::size_t i = 0; i < 2; ++i) {
        const DensityTrajectory coarse = integrate_master(models[i], starts[i], -100.0, 100.0, samples);
        const DensityTrajectory fine =
            integrate_master(models[i], starts[i], -100.0, 100.0, samples, MasterOptions{.step_factor = 5e-4});
        check_density_invariants(coarse);
        CHECK(max_entry_difference(coarse, fine) < 1e-8);
    }
}

TEST_CASE("oracle invariants across the parameter grid") {
    for (double v : {0.1, 10.0}) {
        const LzParams lz{v, 1.0};
        std::vector<JumpModel> models;
        for (double gamma : {0.1, 0.2, 0.4, 0.8}) models.push_back(JumpModel::type1(lz, {gamma, 0.0}));
        for (double tau : {0.5, 1.0}) models.push_back(JumpModel::type1(lz, {0.1, tau}));
        for (double temperature : {0.1, 0.2, 0.3}) {
            TypeIIParams p = type2(temperature);
            p.spectral_sign = v > 1.0 ? -1 : 1;  // the growing density overflows at v = 10
            models.push_back(JumpModel::type2(lz, p));
        }
        const double t_end = v > 1.0 ? 10.0 : 100.0;
        const auto samples = grid(-t_end, t_end, 1.0);
        for (const JumpModel& model : models) {
            const Operator2 start = model.kind() == ModelKind::type1
                                        ? projector(ket_g())
                                        : projector(instant_spectrum(-t_end, lz).ket_minus);
            const DensityTrajectory d = integrate_master(model, start, -t_end, t_end, samples);
            check_density_invariants(d);
        }
    }
}

TEST_CASE("master equation argument checks") {
    const JumpModel model = JumpModel::type1({0.1, 1.0}, {0.1, 0.0});
    const std::vector<double> unsorted = {0.0, -1.0};
    CHECK_THROWS_AS(integrate_master(model, projector(ket_g()), -2.0, 2.0, unsorted), ConfigError);
    const std::vector<double> outside = {3.0};
    CHECK_THROWS_AS(integrate_master(model, projector(ket_g()), -2.0, 2.0, outside), ConfigError);
    CHECK_THROWS_AS(integrate_master(model, projector(ket_g()), -2.0, 2.0, {}, MasterOptions{.step_factor = 0.1}),
                    ConfigError);
    // an invalid initial state is reported with its time
    CHECK_THROWS_AS(integrate_master(model, identity2(), -2.0, 2.0, {}), SimulationError);
}

TEST_CASE("Schrodinger oracle") {
    const StateVector fast = integrate_schrodinger({10.0, 1.0}, ket_e(), -100.0, 100.0);
    const StateVector slow = integrate_schrodinger({0.1, 1.0}, ket_e(), -100.0, 100.0);
    CHECK(std::abs(fast.norm() - 1.0) <= 1e-8);
    CHECK(std::abs(slow.norm() - 1.0) <= 1e-8);
    CHECK(std::abs(std::norm(fast.g) - 0.2696) <= 0.02);
    CHECK(std::abs(std::norm(fast.g) - (1.0 - std::exp(-3.141592653589793 / 10.0))) <= 0.02);
    CHECK(std::norm(slow.g) >= 0.999);

    // refinement
    for (double v : {0.1, 10.0}) {
        const StateVector a = integrate_schrodinger({v, 1.0}, ket_e(), -100.0, 100.0);
        const StateVector b =
            integrate_schrodinger({v, 1.0}, ket_e(), -100.0, 100.0, SchrodingerOptions{.step_factor = 2.5e-3});
        CHECK((a - b).norm() <= 1e-8);
    }
    CHECK_THROWS_AS(integrate_schrodinger({0.1, 1.0}, ket_e(), 1.0, 0.0), ConfigError);
}

TEST_CASE("ensemble density") {
    TrajectoryRecord a;
    a.snapshots = {{0.0, ket_e()}, {1.0, ket_g()}};
    const std::vector<TrajectoryRecord> one = {a};
    const DensityTrajectory d1 = ensemble_density(one);
    CHECK(d1.times == std::vector<double>{0.0, 1.0});
    CHECK(d1.states[0] == projector(ket_e()));
    CHECK(d1.states[1] == projector(ket_g()));

    const std::vector<TrajectoryRecord> twins = {a, a, a};
    for (const Operator2& rho : ensemble_density(twins).states) CHECK(purity(rho) == doctest::Approx(1.0));

    TrajectoryRecord b = a;
    b.snapshots[1].state = ket_e();
    const std::vector<TrajectoryRecord> mixed = {a, b};
    CHECK(ensemble_density(mixed).states[1] == 0.5 * identity2());

    TrajectoryRecord shifted = a;
    shifted.snapshots[1].time = 2.0;
    const std::vector<TrajectoryRecord> bad = {a, shifted};
    CHECK_THROWS_AS(ensemble_density(bad), ConfigError);
    TrajectoryRecord short_grid = a;
    short_grid.snapshots.pop_back();
    const std::vector<TrajectoryRecord> bad2 = {a, short_grid};
    CHECK_THROWS_AS(ensemble_density(bad2), ConfigError);
    CHECK_THROWS_AS(ensemble_density(std::span<const TrajectoryRecord>{}), ConfigError);
}

TEST_CASE("ensembles stay within 3/sqrt(n) of the master equation") {
    // Short window around the crossing keeps this quick; the full window is
    // covered by the acceptance suite.
    const LzParams lz{0.1, 1.0};
    struct Case {
        JumpModel model;
        InitialState initial;
        std::uint64_t n_traj;
    };
    const Case cases[] = {{JumpModel::type1(lz, {0.4, 0.5}), InitialState::g, 4000},
                          {JumpModel::type2(lz, type2(0.2)), InitialState::ground, 1000}};
    for (const Case& c : cases) {
        EngineConfig config;
        config.model = c.model;
        config.initial = c.initial;
        config.t_start = -20.0;
        config.t_end = 20.0;
        config.snapshot_spacing = 1.0;
        config.n_traj = c.n_traj;
        config.master_seed = 2024;
        const auto records = run_ensemble(config, 1);
        const DensityTrajectory oracle = integrate_master(
            c.model, projector(initial_state(c.initial, lz, -20.0)), -20.0, 20.0, config.snapshot_times());
        for (std::uint64_t n : {std::uint64_t{1000}, c.n_traj}) {
            const auto d = trace_distances(ensemble_density(std::span(records).first(n)), oracle);
            const double worst = *std::max_element(d.begin(), d.end());
            MESSAGE("max trace distance at n=", n, ": ", worst);
            CHECK(worst <= 3.0 / std::sqrt(double(n)));
        }
    }
}

TEST_CASE("oracle distance shrinks as 1/sqrt(n)") {
    // The maximum over the grid of a single ensemble fluctuates by tens of
    // percent, so the expected maximum is estimated from independent replicas.
    const LzParams lz{0.1, 1.0};
    EngineConfig config;
    config.model = JumpModel::type1(lz, {0.4, 0.5});
    config.t_start = -20.0;
    config.t_end = 20.0;
    config.snapshot_spacing = 1.0;
    constexpr std::size_t kReplicas = 8;
    config.n_traj = kReplicas * 5000;
    config.master_seed = 2024;
    const auto records = run_ensemble(config, 1);
    const DensityTrajectory oracle =
        integrate_master(config.model, projector(ket_g()), -20.0, 20.0, config.snapshot_times());

    auto max_distance = [&](std::span<const TrajectoryRecord> part) {
        const auto d = trace_distances(ensemble_density(part), oracle);
        return *std::max_element(d.begin(), d.end());
    };
    double small = 0.0;
    double large = 0.0;
    for (std::size_t r = 0; r < kReplicas; ++r) {
        const auto replica = std::span(records).subspan(r * 5000, 5000);
        small += max_distance(replica.first(1000)) / kReplicas;
        large += max_distance(replica.subspan(1000, 4000)) / kReplicas;
    }
    MESSAGE("mean max trace distance n=1000: ", small, "  n=4000: ", large);
    CHECK(small / large >= 1.5);
    CHECK(small / large <= 2.5);
}
