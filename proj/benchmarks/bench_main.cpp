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

#include <benchmark/benchmark.h>

#include "lzqt/dissipation.hpp"
#include "lzqt/engine.hpp"
#include "lzqt/oracle.hpp"
#include "lzqt/rng.hpp"

namespace {

lzqt::JumpModel type1_model() { return lzqt::JumpModel::type1({0.1, 1.0}, {0.2, 0.5}); }
lzqt::JumpModel type2_model() { return lzqt::JumpModel::type2({0.1, 1.0}, {1.0, 0.0, 0.2, 20.0, +1}); }

void BM_JumpSet(benchmark::State& state, const lzqt::JumpModel& model) {
    double t = -50.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.jumps(t));
        t += 1e-3;
    }
}

void BM_Step(benchmark::State& state, const lzqt::JumpModel& model) {
    lzqt::UniformStream draw(42);
    lzqt::StateVector phi = lzqt::ket_g();
    lzqt::StepControl control;
    double t = -10.0;
    for (auto _ : state) {
        const lzqt::JumpSet js = model.jumps(t);
        const double dt = lzqt::choose_dt(control, t, model.lz(), js);
        phi = lzqt::advance(phi, t, dt, lzqt::h_lz(t, model.lz()), js, draw).state;
        t += dt;
        if (t > 10.0) t = -10.0;
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_Trajectory(benchmark::State& state, const lzqt::JumpModel& model) {
    lzqt::EngineConfig cfg;
    cfg.model = model;
    cfg.t_start = -10.0;
    cfg.t_end = 10.0;
    std::uint64_t id = 0;
    std::uint64_t steps = 0;
    for (auto _ : state) {
        const auto rec = lzqt::run_trajectory(cfg, id++);
        steps += rec.n_steps;
    }
    state.counters["steps_per_second"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}

void BM_MasterEquation(benchmark::State& state) {
    const auto model = type1_model();
    const double samples[] = {-5.0, 0.0, 5.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lzqt::integrate_master(model, lzqt::projector(lzqt::ket_g()), -5.0, 5.0, samples));
    }
}

void BM_Schrodinger(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(lzqt::integrate_schrodinger({10.0, 1.0}, lzqt::ket_e(), -10.0, 10.0));
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_JumpSet, type1, type1_model());
BENCHMARK_CAPTURE(BM_JumpSet, type2, type2_model());
BENCHMARK_CAPTURE(BM_Step, type1, type1_model());
BENCHMARK_CAPTURE(BM_Step, type2, type2_model());
BENCHMARK_CAPTURE(BM_Trajectory, type1, type1_model())->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Trajectory, type2, type2_model())->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Schrodinger)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
