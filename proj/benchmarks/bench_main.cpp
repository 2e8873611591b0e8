// SPDX-License-Identifier: Apache-2.0
//
// pops: ping-pong optimized pulse shaping for multicarrier waveforms
// Copyright (C) 2026 The pops authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pops/channel.hpp"
#include "pops/kernel.hpp"
#include "pops/montecarlo.hpp"
#include "pops/optimizer.hpp"
#include "pops/sinr.hpp"

#include <benchmark/benchmark.h>

#include <limits>

using namespace pops;

namespace
{

LatticeConfig lattice(int q, int symbols = 1) { return LatticeConfig{q * 5 / 4, q, 1.0, symbols, symbols}; }

ChannelSpec channel(const LatticeConfig &cfg) { return ChannelSpec{make_separable_balanced(cfg, 0.01, 8, 0.5)}; }

void kernel_build(benchmark::State &state)
{
    const LatticeConfig cfg = lattice(int(state.range(0)), int(state.range(1)));
    const ChannelSpec ch = channel(cfg);
    const Waveform tx = default_init(cfg);
    const ChannelView view = make_view(ch, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_kernels(tx, view, cfg, 0, cfg.rx_length()));
}
BENCHMARK(kernel_build)->Args({16, 1})->Args({64, 1})->Args({128, 1})->Args({128, 3})->Unit(benchmark::kMillisecond);

void half_step_solver(benchmark::State &state)
{
    const LatticeConfig cfg = lattice(int(state.range(0)));
    const ChannelSpec ch = channel(cfg);
    const KernelPair k = build_kernels(make_conventional_tx(cfg), make_view(ch, 1.0), cfg, 0, cfg.rx_length());
    CMatrix kin = k.interference.data;
    kin.diagonal().array() += 1e-3;
    const auto solver = Solver(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(half_step(solver, k.useful.data, kin));
    state.SetLabel(to_string(solver));
}
BENCHMARK(half_step_solver)
    ->ArgsProduct({{64, 128}, {int(Solver::rayleigh), int(Solver::gep), int(Solver::whitening)}})
    ->Unit(benchmark::kMillisecond);

void sinr_evaluation(benchmark::State &state)
{
    const LatticeConfig cfg = lattice(int(state.range(0)));
    const ChannelSpec ch = channel(cfg);
    const Waveform tx = make_conventional_tx(cfg), rx = make_conventional_rx(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(sinr(tx, rx, ch, cfg, 100.0));
}
BENCHMARK(sinr_evaluation)->Arg(16)->Arg(128)->Unit(benchmark::kMicrosecond);

void ping_pong(benchmark::State &state)
{
    const LatticeConfig cfg = lattice(int(state.range(0)));
    const ChannelSpec ch = channel(cfg);
    PopsConfig pc;
    pc.snr = 100.0;
    pc.init = default_init(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_pops(cfg, ch, pc));
}
BENCHMARK(ping_pong)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void montecarlo(benchmark::State &state)
{
    const LatticeConfig cfg = lattice(16);
    const ChannelSpec ch = channel(cfg);
    McConfig mc;
    mc.trials = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_sinr(make_conventional_tx(cfg), make_conventional_rx(cfg), ch, cfg, 100.0, mc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(montecarlo)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
