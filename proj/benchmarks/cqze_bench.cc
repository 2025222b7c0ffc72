// Copyright 2026 The exfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "exfree/exfree.hpp"

using namespace exfree;

namespace {

CompositeState photon_atom() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Constant(4, 0.5);
    return {{polarization("photon"), qubit("atom")}, a};
}

void BM_controlled_rz(benchmark::State &state) {
    CycleConfig cfg{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    CompositeState photon = bloch_state(1.0, 0.5);
    Eigen::VectorXcd a(2);
    a << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CompositeState atom_state({qubit("atom")}, a);
    for (auto _ : state) {
        benchmark::DoNotOptimize(controlled_rz(photon, atom_state, cfg, AtomParams::experimental()));
    }
    state.SetItemsProcessed(state.iterations() * cfg.m * cfg.n * 2);
}
BENCHMARK(BM_controlled_rz)->Args({10, 100})->Args({100, 1000})->Args({1000, 1000});

void BM_gate_matrix(benchmark::State &state) {
    CycleConfig cfg{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gate_matrix(cfg, AtomParams::ideal()));
    }
}
BENCHMARK(BM_gate_matrix)->Args({10, 100})->Args({2000, 2000})->Unit(benchmark::kMillisecond);

void BM_phase_unit(benchmark::State &state) {
    PhaseUnitConfig pc{static_cast<int>(state.range(0)), 1};
    CycleConfig cfg{4, 2000};
    CompositeState in = bloch_state(std::numbers::pi / 2, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_unit(in, pc, cfg, AtomParams::ideal()));
    }
}
BENCHMARK(BM_phase_unit)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_local_op(benchmark::State &state) {
    CompositeState s = photon_atom();
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    for (auto _ : state) {
        s = apply_local(s, "atom", h);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_local_op);

}  // namespace
