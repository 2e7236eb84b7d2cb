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

#include "ethpipe/router_engine.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using ethpipe::RouteEntry;
using ethpipe::RouteTable;

std::vector<RouteEntry> random_routes(std::size_t n, std::mt19937_64& rng)
{
    std::vector<RouteEntry> v;
    for (std::size_t i = 0; i < n; ++i) {
        const auto len = static_cast<std::uint8_t>(8 + rng() % 25);
        v.push_back({static_cast<std::uint32_t>(rng()) & ethpipe::prefix_mask(len), len, 0,
                     static_cast<ethpipe::PortId>(rng() % 8)});
    }
    return v;
}

void BM_TrieLookup(benchmark::State& state)
{
    std::mt19937_64 rng(7);
    const auto routes = random_routes(static_cast<std::size_t>(state.range(0)), rng);
    RouteTable t;
    for (const auto& r : routes) t.insert(r);
    std::vector<std::uint32_t> q(4096);
    for (auto& x : q) x = static_cast<std::uint32_t>(rng());
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(t.lookup(q[i++ & 4095]));
}
BENCHMARK(BM_TrieLookup)->Arg(200)->Arg(10000);

void BM_LinearLookup(benchmark::State& state)
{
    std::mt19937_64 rng(7);
    const auto routes = random_routes(static_cast<std::size_t>(state.range(0)), rng);
    std::vector<std::uint32_t> q(4096);
    for (auto& x : q) x = static_cast<std::uint32_t>(rng());
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::route_lookup_linear_oracle(routes, q[i++ & 4095]));
}
BENCHMARK(BM_LinearLookup)->Arg(200)->Arg(10000);

} // namespace
