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

#include "ethpipe/header_parse.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/frame_codec.hpp"

#include <charconv>
#include <string>

namespace ethpipe {

std::string_view to_string(L2Kind k) noexcept
{
    switch (k) {
    case L2Kind::ethernet_ii: return "ethernet_ii";
    case L2Kind::ieee8023: return "ieee8023";
    case L2Kind::malformed: return "malformed";
    }
    return "unknown";
}

L2Class classify_l2(std::uint16_t length_type) noexcept
{
    if (length_type >= kEtherTypeThreshold) return {L2Kind::ethernet_ii, length_type};
    if (length_type <= kMaxPayload) return {L2Kind::ieee8023, length_type};
    return {L2Kind::malformed, length_type};
}

std::uint16_t ones_complement_sum(ByteSpan data)
{
    std::uint32_t sum = 0;
    std::size_t i = 0;
    for (; i + 1 < data.size(); i += 2) sum += load_be16(data, i);
    if (i < data.size()) sum += std::uint32_t{data[i]} << 8;
    while (sum >> 16) sum = (sum & 0xFFFFu) + (sum >> 16);
    return static_cast<std::uint16_t>(sum);
}

std::uint16_t ipv4_checksum(ByteSpan header)
{
    if (header.size() < 20 || header.size() > 60 || header.size() % 2 != 0)
        throw Error(Errc::bad_length, std::to_string(header.size()) + " bytes");
    std::uint32_t sum = ones_complement_sum(header.first(10));
    sum += ones_complement_sum(header.subspan(12));
    while (sum >> 16) sum = (sum & 0xFFFFu) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

std::uint16_t ipv4_checksum_decrement_ttl(std::uint16_t old_checksum, std::uint8_t old_ttl)
{
    if (old_ttl == 0) throw Error(Errc::ttl_already_zero);
    // The TTL is the high octet of its 16-bit word, so m' - m is -0x0100
    // whatever the protocol octet holds; ~m + m' folds to ~0x0100.
    std::uint32_t sum = static_cast<std::uint16_t>(~old_checksum);
    sum += static_cast<std::uint16_t>(~0x0100u);
    while (sum >> 16) sum = (sum & 0xFFFFu) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

Ipv4Header parse_ipv4(ByteSpan p)
{
    if (p.size() < 20) throw Error(Errc::ip_too_short, std::to_string(p.size()) + " bytes");
    Ipv4Header h;
    h.version = static_cast<std::uint8_t>(p[0] >> 4);
    h.ihl = static_cast<std::uint8_t>(p[0] & 0x0F);
    if (h.version != 4) throw Error(Errc::bad_version, std::to_string(h.version));
    if (h.ihl < 5 || h.header_length() > p.size()) throw Error(Errc::bad_ihl, std::to_string(h.ihl));
    h.dscp_ecn = p[1];
    h.total_length = load_be16(p, 2);
    if (h.total_length < h.header_length() || h.total_length > p.size())
        throw Error(Errc::bad_total_length, std::to_string(h.total_length));
    h.identification = load_be16(p, 4);
    h.flags_frag = load_be16(p, 6);
    h.ttl = p[8];
    h.protocol = p[9];
    h.header_checksum = load_be16(p, 10);
    h.src_ip = load_be32(p, 12);
    h.dst_ip = load_be32(p, 16);
    if (h.ihl > 5) h.options.assign(p.begin() + 20, p.begin() + static_cast<std::ptrdiff_t>(h.header_length()));
    h.checksum_valid = ones_complement_sum(p.first(h.header_length())) == 0xFFFF;
    return h;
}

std::pair<std::optional<Ipv4Header>, std::optional<L4Ports>> parse_l3l4(ByteSpan payload)
{
    std::optional<Ipv4Header> ip;
    try {
        ip = parse_ipv4(payload);
    } catch (const Error&) {
        return {};
    }
    std::optional<L4Ports> l4;
    const bool has_ports = ip->protocol == kIpProtoTcp || ip->protocol == kIpProtoUdp;
    const std::size_t hl = ip->header_length();
    if (has_ports && ip->fragment_offset() == 0 && hl + 4 <= ip->total_length)
        l4 = L4Ports{load_be16(payload, hl), load_be16(payload, hl + 2), ip->protocol};
    return {std::move(ip), l4};
}

ParsedPacket extract_metadata(ByteSpan raw, bool check_fcs)
{
    const Frame f = decode_frame(raw);
    ParsedPacket m;
    m.dst_mac = f.dst;
    m.src_mac = f.src;
    m.l2 = classify_l2(f.length_type);
    m.frame_len = raw.size();
    m.fcs_verdict = check_fcs ? fcs_verify(raw) : FcsVerdict::unchecked;
    if (m.l2.kind == L2Kind::ethernet_ii && m.l2.value == kEtherTypeIpv4)
        std::tie(m.ip, m.l4) = parse_l3l4(f.payload);
    return m;
}

std::string format_ipv4(std::uint32_t a)
{
    return std::to_string(a >> 24) + "." + std::to_string((a >> 16) & 0xFF) + "." +
           std::to_string((a >> 8) & 0xFF) + "." + std::to_string(a & 0xFF);
}

std::optional<std::uint32_t> parse_ipv4_addr(std::string_view text)
{
    std::uint32_t out = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 4; ++i) {
        unsigned v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || next == p || v > 255) return std::nullopt;
        out = (out << 8) | v;
        p = next;
        if (i < 3) {
            if (p == end || *p != '.') return std::nullopt;
            ++p;
        }
    }
    if (p != end) return std::nullopt;
    return out;
}

} // namespace ethpipe
