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

#pragma once

#include "ethpipe/bytes.hpp"
#include "ethpipe/router_engine.hpp"
#include "ethpipe/switch_engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ethpipe {

/// Simulator clock. One unit is one bit-time of the fastest configured link;
/// slower links take an integral number of units per bit.
using SimTime = std::uint64_t;

struct LinkModel {
    std::uint64_t rate_bps = 100'000'000;
    std::uint32_t ifg_bits = 96;
};

struct TimedFrame {
    Bytes frame;
    SimTime arrival_start = 0; ///< first preamble bit on the wire
    PortId port = 0;
    std::optional<std::size_t> corrupt_bit;
    bool corrupt_random = false; ///< pick the bit from the seeded generator
};

struct LatencySample {
    std::uint64_t frame_id = 0;
    PortId egress = 0;
    SimTime first_out = 0; ///< first bit in -> first bit out
    SimTime last_out = 0;  ///< first bit in -> last bit out
};

/// Per-port counters. Receive-side counters are attributed to the ingress
/// port, tx_frames and overflow_copies to the egress port.
struct PortStats {
    std::uint64_t rx_frames = 0;
    std::uint64_t tx_frames = 0;
    std::uint64_t forwarded = 0; ///< received frames with at least one copy queued
    std::uint64_t crc_errors = 0;
    std::uint64_t forwarded_bad_crc = 0;
    std::uint64_t floods = 0;
    std::uint64_t ifg_violations = 0;
    std::uint64_t overflow_copies = 0;
    std::map<std::string, std::uint64_t> drops;
    std::vector<LatencySample> latencies;

    std::uint64_t dropped() const;
};

struct SimConfig {
    std::variant<SwitchConfig, RouterConfig> device = SwitchConfig{};
    std::vector<LinkModel> links = std::vector<LinkModel>(4);
    std::uint32_t bit_times_per_tick = 8;
    std::size_t cut_through_bytes = 14; ///< post-SFD bytes read before a cut-through dispatch
    std::size_t buffer_frames = 64;     ///< per egress port, frames waiting to start
};

struct SimEvent {
    SimTime time = 0;
    std::string kind;
    PortId port = 0;
    std::uint64_t frame = 0;
    std::string detail;

    std::string to_string() const;
};

struct SimResult {
    std::vector<PortStats> ports;
    std::vector<SimEvent> events;
    std::uint64_t timebase_bps = 0; ///< link rate whose bit-time is one SimTime unit
    SimTime end_time = 0;

    std::string render_log() const;
};

/// Runs the schedule to completion. Throws Errc::unknown_port,
/// Errc::schedule_overlap (a frame starts before the previous one on the same
/// port has ended), Errc::index_out_of_range, or Errc::bad_config.
SimResult run_simulation(const SimConfig& cfg, std::span<const TimedFrame> schedule, std::uint64_t seed);

/// Copy of `frame` with one bit flipped (bit i is bit i%8 of byte i/8).
Bytes inject_error(ByteSpan frame, std::size_t bit_index);

/// Bytes on the wire including preamble/SFD, as bit-times.
constexpr std::uint64_t wire_bits(std::size_t frame_len)
{
    return (8 + frame_len) * 8;
}

} // namespace ethpipe
