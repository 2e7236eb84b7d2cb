/*
 * Copyright 2026 The ethpipe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ethpipe/fabric_sim.hpp"
#include "ethpipe/frame_codec.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_SimulateSwitch(benchmark::State& state)
{
    const auto frames = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    ethpipe::SimConfig cfg;
    std::vector<ethpipe::TimedFrame> sched;
    std::vector<ethpipe::SimTime> next(cfg.links.size(), 0);
    for (std::size_t i = 0; i < frames; ++i) {
        const auto port = static_cast<ethpipe::PortId>(rng() % cfg.links.size());
        const std::size_t len = 64 + rng() % 1455;
        const auto dst = ethpipe::MacAddr::from_u64(0x020000000000 + rng() % 4);
        const auto src = ethpipe::MacAddr::from_u64(0x020000000000 + port);
        auto f = ethpipe::encode_frame(dst, src, 0x88B5, ethpipe::Bytes(len - 18, 0), ethpipe::Pad::no);
        sched.push_back({std::move(f), next[port], port, {}, rng() % 50 == 0});
        next[port] += ethpipe::wire_bits(len) + 96 + rng() % 400;
    }
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::run_simulation(cfg, sched, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * frames));
}
BENCHMARK(BM_SimulateSwitch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace
