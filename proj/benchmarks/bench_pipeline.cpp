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

#include "ethpipe/frame_codec.hpp"
#include "ethpipe/header_parse.hpp"
#include "ethpipe/pipeline.hpp"

#include <benchmark/benchmark.h>

namespace {

ethpipe::Bytes sample_frame()
{
    ethpipe::Bytes ip(46, 0);
    ip[0] = 0x45;
    ip[3] = 46;
    ip[8] = 64;
    ip[9] = 17;
    ethpipe::store_be16(ip, 10, ethpipe::ipv4_checksum(ethpipe::ByteSpan(ip).first(20)));
    return ethpipe::encode_frame(ethpipe::MacAddr::from_u64(0x020000000002), ethpipe::MacAddr::from_u64(0x020000000001),
                                 0x0800, ip, ethpipe::Pad::no);
}

void BM_PipelineSaturated(benchmark::State& state)
{
    const auto frame = sample_frame();
    auto p = ethpipe::Pipeline::build_default();
    for (auto _ : state) {
        p.inject(frame);
        benchmark::DoNotOptimize(p.tick());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_PipelineSaturated);

void BM_ExtractMetadata(benchmark::State& state)
{
    const auto frame = sample_frame();
    for (auto _ : state) benchmark::DoNotOptimize(ethpipe::extract_metadata(frame, true));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ExtractMetadata);

} // namespace
