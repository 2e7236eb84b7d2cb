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

#include "ethpipe/fcs32.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

ethpipe::Bytes random_bytes(std::size_t n)
{
    std::mt19937_64 rng(n);
    ethpipe::Bytes b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    return b;
}

void BM_Crc32Table(benchmark::State& state)
{
    const auto data = random_bytes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::crc32_compute(data));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Crc32Table)->Arg(64)->Arg(1518)->Arg(9000);

void BM_Crc32BitwiseOracle(benchmark::State& state)
{
    const auto data = random_bytes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::crc32_bitwise_oracle(data));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Crc32BitwiseOracle)->Arg(64)->Arg(1518);

void BM_FcsVerify(benchmark::State& state)
{
    auto frame = random_bytes(1514);
    ethpipe::append_fcs(frame, ethpipe::crc32_compute(frame));
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::fcs_verify(frame));
}
BENCHMARK(BM_FcsVerify);

} // namespace
