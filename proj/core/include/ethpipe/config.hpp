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

#include "ethpipe/fabric_sim.hpp"
#include "ethpipe/router_engine.hpp"
#include "ethpipe/switch_engine.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ethpipe {

// Line-oriented text configs. `#` starts a comment, `[name]` opens a
// section, and each remaining line is either `key = value` or a record
// whose fields are separated by whitespace. Errors throw Errc::bad_config
// with the offending line number.

struct ConfigLine {
    std::size_t line_no = 0;
    std::vector<std::string> fields; ///< `key = value` arrives as {key, value}
};

/// Section name -> lines, in file order. Lines before any header go to "".
using SectionedText = std::map<std::string, std::vector<ConfigLine>>;

SectionedText parse_sections(std::string_view text);

/// Keys: ports, mode (sf|ct|hybrid), window, enter, exit, aging (seconds),
/// rate (bit/s, used to express aging in bit-times; default 100M).
SwitchConfig parse_switch_config(std::string_view text);
SwitchConfig load_switch_config(const std::filesystem::path& path);

/// `<prefix>/<len> <next_hop_ip|direct> <port>`
RouteTable parse_routes(std::string_view text);
/// `<ip> <mac> <port>`
NeighborTable parse_neighbors(std::string_view text);
/// `<port> <mac>`
PortMacs parse_port_macs(std::string_view text);

/// Sections [routes], [neighbors], [ports] in the record formats above.
RouterConfig parse_router_config(std::string_view text);
RouterConfig load_router_config(const std::filesystem::path& path);

/// Link rate such as 10M, 100M, 1G, or a plain bit/s count.
std::uint64_t parse_rate(std::string_view text);

struct Scenario {
    SimConfig config;
    std::vector<TimedFrame> schedule;
    std::uint64_t seed = 0;
};

/// Sections:
///   [device]    kind = switch|router, plus the switch keys
///   [sim]       seed, bit_times_per_tick, cut_through_bytes, buffer_frames
///   [links]     `<port> <rate> [ifg=<bits>]`
///   [routes] [neighbors] [ports]   router tables
///   [schedule]  `<time> <port> hex <octets>` or
///               `<time> <port> gen [dst=..] [src=..] [type=..] [size=..] [fill=..]`,
///               either followed by an optional `corrupt=<bit>|random`
/// Times are in bit-times of the fastest link.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace ethpipe
