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
#include "ethpipe/fcs32.hpp"
#include "ethpipe/mac_addr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace ethpipe {

inline constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
inline constexpr std::uint16_t kEtherTypeThreshold = 0x0600;
inline constexpr std::uint8_t kIpProtoTcp = 6;
inline constexpr std::uint8_t kIpProtoUdp = 17;

enum class L2Kind { ethernet_ii, ieee8023, malformed };
std::string_view to_string(L2Kind k) noexcept;

/// Meaning of the length/type field. `value` is the ethertype or the 802.3
/// length; for malformed it is the raw field.
struct L2Class {
    L2Kind kind = L2Kind::malformed;
    std::uint16_t value = 0;

    friend bool operator==(const L2Class&, const L2Class&) = default;
};

L2Class classify_l2(std::uint16_t length_type) noexcept;

struct Ipv4Header {
    std::uint8_t version = 4;
    std::uint8_t ihl = 5;
    std::uint8_t dscp_ecn = 0;
    std::uint16_t total_length = 0;
    std::uint16_t identification = 0;
    std::uint16_t flags_frag = 0;
    std::uint8_t ttl = 0;
    std::uint8_t protocol = 0;
    std::uint16_t header_checksum = 0;
    std::uint32_t src_ip = 0;
    std::uint32_t dst_ip = 0;
    Bytes options;
    bool checksum_valid = false;

    std::size_t header_length() const { return std::size_t{ihl} * 4; }
    std::uint16_t fragment_offset() const { return flags_frag & 0x1FFF; }
    bool more_fragments() const { return (flags_frag & 0x2000) != 0; }
    bool is_fragment() const { return fragment_offset() != 0 || more_fragments(); }

    friend bool operator==(const Ipv4Header&, const Ipv4Header&) = default;
};

Ipv4Header parse_ipv4(ByteSpan payload);

/// One's-complement sum of big-endian 16-bit words, carries folded.
std::uint16_t ones_complement_sum(ByteSpan data);

/// Header checksum over 4*ihl bytes. The stored checksum field (bytes 10-11)
/// is treated as zero. Throws Errc::bad_length unless the length is even and
/// within [20, 60].
std::uint16_t ipv4_checksum(ByteSpan header);

/// Checksum after rewriting ttl to old_ttl - 1, by incremental update
/// (HC' = ~(~HC + ~m + m')). Throws Errc::ttl_already_zero for old_ttl == 0.
std::uint16_t ipv4_checksum_decrement_ttl(std::uint16_t old_checksum, std::uint8_t old_ttl);

struct L4Ports {
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t proto = 0;

    friend bool operator==(const L4Ports&, const L4Ports&) = default;
};

struct ParsedPacket {
    MacAddr dst_mac;
    MacAddr src_mac;
    L2Class l2;
    std::size_t frame_len = 0;
    FcsVerdict fcs_verdict = FcsVerdict::unchecked;
    std::optional<Ipv4Header> ip;
    std::optional<L4Ports> l4;

    friend bool operator==(const ParsedPacket&, const ParsedPacket&) = default;
};

/// IPv4 and port extraction from an L2 payload; absent fields on anything
/// that does not parse. Shared by extract_metadata and the l3l4 pipeline stage.
std::pair<std::optional<Ipv4Header>, std::optional<L4Ports>> parse_l3l4(ByteSpan l2_payload);

/// Full L2/L3/L4 parse of one frame. Only decode_frame's size errors escape.
ParsedPacket extract_metadata(ByteSpan raw, bool check_fcs);

std::string format_ipv4(std::uint32_t addr);
std::optional<std::uint32_t> parse_ipv4_addr(std::string_view text);

} // namespace ethpipe
