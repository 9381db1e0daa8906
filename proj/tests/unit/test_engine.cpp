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

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "lzqt/engine.hpp"
#include "lzqt/errors.hpp"
#include "lzqt/oracle.hpp"
#include "lzqt/rng.hpp"

using namespace lzqt;

namespace {

TypeIIParams type2(double temperature, double theta = 0.0) {
    TypeIIParams p;
    p.temperature = temperature;
    p.theta = theta;
    return p;
}

// Replays a fixed list of draws.
struct Scripted {
    std::vector<double> values;
    std::size_t next = 0;
    double operator()() { return values.at(next++); }
};

}  // namespace

TEST_CASE("effective Hamiltonian") {
    const LzParams lz{0.1, 1.0};
    const JumpModel closed = JumpModel::type1(lz, {0.0, 0.0});
    CHECK(effective_hamiltonian(3.0, closed) == h_lz(3.0, lz));

    const JumpModel decay = JumpModel::type1(lz, {0.1, 0.0});
    const Operator2 ref = sigma_x() - Complex{0.0, 0.05} * projector(ket_e());
    CHECK(frobenius_norm(effective_hamiltonian(0.0, decay) - ref) <= 1e-16);

    // Type II at T=0: anti-Hermitian part proportional to |eps_+><eps_+|
    const JumpModel cold = JumpModel::type2(lz, type2(0.0));
    for (double t : {-30.0, 0.0, 12.0}) {
        const Operator2 h = effective_hamiltonian(t, cold);
        // i (H - H^dag) / 2 = (lambda^2 / 2) sum C^dag C: positive semidefinite, rank one
        const Operator2 decay = Complex{0.0, 0.5} * (h - adjoint(h));
        const InstantSpectrum s = instant_spectrum(t, lz);
        CHECK(matvec(decay, s.ket_minus).norm() <= 1e-14);
        CHECK(hermitian_eigenvalues(decay)[0] >= -1e-14);
        const double weight = expectation(decay, s.ket_plus).real();
        CHECK(frobenius_norm(decay - weight * projector(s.ket_plus)) <= 1e-13 * std::max(1.0, weight));
    }
}

TEST_CASE("step control validation") {
    StepControl c;
    CHECK_NOTHROW(c.validate());
    c.eta = 0.2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.eta = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.dt_max = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.dt_min = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("adaptive step size") {
    const LzParams lz{0.1, 1.0};
    const JumpModel model = JumpModel::type1(lz, {0.4, 0.5});
    StepControl c;
    // eps_+(0) = 1, rate bound 0.4 * (1.5 + 0.5)
    CHECK(choose_dt(c, 0.0, lz, model.jumps(0.0)) == doctest::Approx(0.01 / 1.8));
    CHECK(choose_dt(c, 100.0, lz, model.jumps(100.0)) == doctest::Approx(0.01 / (std::sqrt(101.0) + 0.8)));
    c.eta = 0.1;
    CHECK(choose_dt(c, 0.0, lz, model.jumps(0.0)) == 0.01);
    c.mode = StepMode::fixed;
    c.dt_max = 0.002;
    CHECK(choose_dt(c, 50.0, lz, model.jumps(50.0)) == 0.002);
}

TEST_CASE("dark states never jump") {
    const LzParams lz{0.1, 1.0};
    const JumpModel decay = JumpModel::type1(lz, {0.1, 0.0});
    UniformStream draw(1);
    const StepOutcome out = step(ket_g(), 0.0, 0.01, decay, draw);
    CHECK(out.jump_probability == 0.0);
    CHECK_FALSE(out.event.has_value());
    // purely Hamiltonian: (1 - i sigma_x dt)|g>, normalized
    const StateVector ref = normalized(ket_g() - Complex{0.0, 0.01} * ket_e());
    CHECK(std::abs(out.state.e - ref.e) <= 1e-16);
    CHECK(std::abs(out.state.g - ref.g) <= 1e-16);

    const JumpModel cold = JumpModel::type2(lz, type2(0.0));
    for (double t : {-100.0, -1.0, 0.0, 64.0}) {
        const StepOutcome o = step(instant_spectrum(t, lz).ket_minus, t, 1e-3, cold, draw);
        CHECK(o.jump_probability <= 1e-20);
        CHECK_FALSE(o.event.has_value());
    }
}

TEST_CASE("jump branch with a small draw") {
    const JumpModel decay = JumpModel::type1({0.1, 1.0}, {0.1, 0.0});
    Scripted draw{{0.0005, 0.3}};
    const StepOutcome out = step(ket_e(), 5.0, 0.01, decay, draw);
    CHECK(out.jump_probability == doctest::Approx(1e-3).epsilon(1e-14));
    REQUIRE(out.event.has_value());
    CHECK(out.event->channel == 0);
    CHECK(out.event->time == 5.0);
    CHECK(std::abs(out.state.e) == 0.0);
    CHECK(out.state.g.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(draw.next == 2);

    // one draw only when no jump fires
    Scripted quiet{{0.5}};
    const StepOutcome none = step(ket_e(), 5.0, 0.01, decay, quiet);
    CHECK_FALSE(none.event.has_value());
    CHECK(quiet.next == 1);
}

TEST_CASE("channel selection follows the cumulative weights") {
    const JumpModel warm = JumpModel::type1({0.1, 1.0}, {0.1, 1.0});
    const StateVector plus = normalized(ket_e() + ket_g());
    // weights: decay (1 + tau)/2, excitation tau/2 -> 2/3 and 1/3
    Scripted low{{1e-6, 0.66}};
    CHECK(step(plus, 0.0, 0.01, warm, low).event->channel == 0);
    Scripted high{{1e-6, 0.67}};
    CHECK(step(plus, 0.0, 0.01, warm, high).event->channel == 1);
}

TEST_CASE("step rejects jump probabilities above 0.1") {
    const JumpModel decay = JumpModel::type1({0.1, 1.0}, {20.0, 0.0});
    UniformStream draw(2);
    CHECK_THROWS_AS(step(ket_e(), 0.0, 0.01, decay, draw), SimulationError);
}

TEST_CASE("norm, channel probabilities and the dp identity on random states") {
    const LzParams lz{0.7, 1.0};
    const JumpModel models[] = {JumpModel::type1(lz, {0.3, 0.8}), JumpModel::type2(lz, type2(0.4, 0.9))};
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> t_dist(-100.0, 100.0);
    UniformStream draw(99);
    for (const JumpModel& model : models) {
        for (int i = 0; i < 2000; ++i) {
            const double t = t_dist(rng);
            const StateVector phi = normalized({{n(rng), n(rng)}, {n(rng), n(rng)}});
            const JumpSet js = model.jumps(t);
            const double dt = choose_dt(StepControl{}, t, lz, js);

            const detail::ChannelAmplitudes amps = detail::channel_amplitudes(phi, dt, js);
            if (amps.total > 0.0) {
                double sum = 0.0;
                for (std::size_t m = 0; m < js.count; ++m) sum += amps.weight[m] / amps.total;
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
            // dp = i dt <phi|H - H^dag|phi>
            const Operator2 h = effective_hamiltonian(model.hamiltonian(t), js);
            const double via_h = (kI * dt * expectation(h - adjoint(h), phi)).real();
            CHECK(std::abs(via_h - amps.total) <= 1e-12);

            const StepOutcome out = advance(phi, t, dt, model.hamiltonian(t), js, draw);
            CHECK(std::abs(out.state.norm() - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("hand-built jump sets take the uncached path") {
    const JumpModel model = JumpModel::type2({0.1, 1.0}, type2(0.3, 0.5));
    const JumpSet cached = model.jumps(4.0);
    JumpSet plain;
    plain.count = cached.count;
    plain.storage = cached.storage;
    plain.lambda = cached.lambda;
    plain.time = cached.time;
    CHECK(rate_bound(plain) == doctest::Approx(rate_bound(cached)).epsilon(1e-12));
    CHECK(frobenius_norm(effective_hamiltonian(sigma_x(), plain) - effective_hamiltonian(sigma_x(), cached)) <=
          1e-12);
    const StateVector phi = normalized({Complex{0.3, 0.1}, Complex{-0.5, 0.2}});
    Scripted a{{0.99}};
    Scripted b{{0.99}};
    const StateVector x = advance(phi, 4.0, 1e-3, sigma_x(), plain, a).state;
    const StateVector y = advance(phi, 4.0, 1e-3, sigma_x(), cached, b).state;
    CHECK((x - y).norm() <= 1e-14);
}

TEST_CASE("stream seeds") {
    CHECK(stream_seed(1, 0) != stream_seed(1, 1));
    CHECK(stream_seed(1, 0) != stream_seed(2, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t id = 0; id < 10000; ++id) seen.insert(stream_seed(42, id));
    CHECK(seen.size() == 10000);

    UniformStream u(5);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double x = u();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
}

TEST_CASE("snapshot grid") {
    EngineConfig c;
    c.t_start = -1.0;
    c.t_end = 1.0;
    c.snapshot_spacing = 0.5;
    CHECK(c.snapshot_times() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    c.snapshot_spacing = 0.75;
    CHECK(c.snapshot_times() == std::vector<double>{-1.0, -0.25, 0.5, 1.0});
    c.snapshot_spacing = 0.0;
    CHECK(c.snapshot_times().empty());
    c.t_start = -100.0;
    c.t_end = 100.0;
    c.snapshot_spacing = 0.1;
    const auto fine = c.snapshot_times();
    CHECK(fine.size() == 2001);
    CHECK(fine.back() == 100.0);
}

TEST_CASE("trajectory records") {
    EngineConfig c;
    c.model = JumpModel::type1({0.1, 1.0}, {0.4, 0.5});
    c.t_start = -20.0;
    c.t_end = 20.0;
    c.snapshot_spacing = 1.0;
    c.master_seed = 7;
    const TrajectoryRecord r = run_trajectory(c, 3);
    CHECK(r.trajectory_id == 3);
    CHECK(r.seed_stream == stream_seed(7, 3));
    CHECK(r.events.size() > 0);
    for (std::size_t k = 0; k < r.events.size(); ++k) {
        CHECK(r.events[k].trajectory_id == 3);
        CHECK(r.events[k].channel < 2);
        CHECK(r.events[k].time >= c.t_start);
        CHECK(r.events[k].time < c.t_end);
        if (k > 0) CHECK(r.events[k - 1].time <= r.events[k].time);
    }
    REQUIRE(r.snapshots.size() == 41);
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        CHECK(r.snapshots[k].time == c.snapshot_times()[k]);
        CHECK(std::abs(r.snapshots[k].state.norm() - 1.0) <= 1e-9);
    }
    CHECK(r.dt_largest <= c.step.dt_max);
    CHECK(r.dt_smallest > 0.0);

    // bit-identical rerun
    CHECK(run_trajectory(c, 3) == r);
    CHECK_FALSE(run_trajectory(c, 4) == r);
}

TEST_CASE("ensembles do not depend on the worker count") {
    EngineConfig c;
    c.model = JumpModel::type2({0.1, 1.0}, type2(0.2));
    c.initial = InitialState::ground;
    c.t_start = -10.0;
    c.t_end = 10.0;
    c.snapshot_spacing = 2.0;
    c.n_traj = 24;
    c.master_seed = 11;
    const auto one = run_ensemble(c, 1);
    const auto four = run_ensemble(c, 4);
    const auto again = run_ensemble(c, 3);
    CHECK(one == four);
    CHECK(one == again);
    REQUIRE(one.size() == 24);
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].trajectory_id == i);

    const auto tail = run_ensemble_range(c, 10, 24, 2);
    for (std::size_t i = 0; i < tail.size(); ++i) CHECK(tail[i] == one[10 + i]);

    c.n_traj = 1;
    CHECK(run_ensemble(c).front() == run_trajectory(c, 0));
}

TEST_CASE("ensemble failures are aggregated") {
    EngineConfig c;
    TypeIIParams p = type2(0.0);
    p.omega_c = 5.0;  // growing spectral density: rates explode away from the crossing
    c.model = JumpModel::type2({10.0, 1.0}, p);
    c.initial = InitialState::ground;
    c.n_traj = 3;
    try {
        run_ensemble(c, 2);
        FAIL("expected failure");
    } catch (const std::exception& e) {
        const std::string what = e.what();
        CHECK(what.find("3 of 3 trajectories failed") != std::string::npos);
        CHECK(what.find("trajectory 0:") != std::string::npos);
    }
}

TEST_CASE("invalid engine configs") {
    EngineConfig c;
    c.t_end = c.t_start;
    CHECK_THROWS_AS(run_ensemble(c), ConfigError);
    c = {};
    c.n_traj = 0;
    CHECK_THROWS_AS(run_ensemble(c), ConfigError);
}

TEST_CASE("closed system trajectory follows the Schrodinger oracle") {
    EngineConfig c;
    const LzParams lz{10.0, 1.0};
    c.model = JumpModel::type1(lz, {0.0, 0.0});
    c.initial = InitialState::e;
    c.t_start = -5.0;
    c.t_end = 5.0;
    c.step.eta = 1e-4;
    c.step.dt_max = 1e-3;
    const TrajectoryRecord r = run_trajectory(c, 0);
    CHECK(r.events.empty());
    // the snapshot list is empty, so rerun with the final state captured
    c.snapshot_spacing = 10.0;
    const StateVector end = run_trajectory(c, 0).snapshots.back().state;
    const StateVector ref = integrate_schrodinger(lz, ket_e(), -5.0, 5.0);
    CHECK(std::norm(end.g) == doctest::Approx(std::norm(ref.g)).epsilon(1e-3));
}

TEST_CASE("Type II zero temperature run from the ground state stays dark at short range") {
    EngineConfig c;
    const LzParams lz{0.1, 1.0};
    c.model = JumpModel::type2(lz, type2(0.0));
    c.initial = InitialState::ground;
    c.t_start = -100.0;
    c.t_end = -60.0;
    c.snapshot_spacing = 40.0;
    c.n_traj = 5;
    for (const TrajectoryRecord& r : run_ensemble(c)) {
        CHECK(r.events.empty());
        const StateVector ground = instant_spectrum(c.t_end, lz).ket_minus;
        CHECK(std::norm(inner(ground, r.snapshots.back().state)) >= 0.999);
    }
}
