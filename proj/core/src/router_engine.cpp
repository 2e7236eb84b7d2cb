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

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"
#include "ethpipe/frame_codec.hpp"
#include "ethpipe/header_parse.hpp"

#include <string>

namespace ethpipe {

struct RouteTable::Node {
    std::array<std::unique_ptr<Node>, 2> child;
    std::optional<RouteEntry> entry;
};

RouteTable::RouteTable() : root_(std::make_unique<Node>()) {}
RouteTable::~RouteTable() = default;
RouteTable::RouteTable(RouteTable&&) noexcept = default;

RouteTable::RouteTable(const RouteTable& other) : RouteTable()
{
    for (const auto& e : other.entries()) insert(e);
}

RouteTable& RouteTable::operator=(const RouteTable& other)
{
    if (this != &other) *this = RouteTable(other);
    return *this;
}

RouteTable& RouteTable::operator=(RouteTable&&) noexcept = default;

void RouteTable::insert(const RouteEntry& e)
{
    if (e.prefix_len > 32) throw Error(Errc::dirty_prefix, "prefix length " + std::to_string(e.prefix_len));
    if ((e.prefix & ~prefix_mask(e.prefix_len)) != 0)
        throw Error(Errc::dirty_prefix, format_ipv4(e.prefix) + "/" + std::to_string(e.prefix_len));

    Node* n = root_.get();
    for (unsigned depth = 0; depth < e.prefix_len; ++depth) {
        const unsigned bit = (e.prefix >> (31 - depth)) & 1u;
        if (!n->child[bit]) n->child[bit] = std::make_unique<Node>();
        n = n->child[bit].get();
    }
    if (!n->entry) ++size_;
    n->entry = e;
}

std::optional<RouteEntry> RouteTable::lookup(std::uint32_t dst_ip) const
{
    const Node* n = root_.get();
    std::optional<RouteEntry> best;
    for (unsigned depth = 0; n != nullptr; ++depth) {
        if (n->entry) best = n->entry;
        if (depth == 32) break;
        n = n->child[(dst_ip >> (31 - depth)) & 1u].get();
    }
    return best;
}

std::vector<RouteEntry> RouteTable::entries() const
{
    std::vector<RouteEntry> out;
    out.reserve(size_);
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->entry) out.push_back(*n->entry);
        for (int b = 1; b >= 0; --b)
            if (n->child[static_cast<std::size_t>(b)]) stack.push_back(n->child[static_cast<std::size_t>(b)].get());
    }
    return out;
}

std::optional<RouteEntry> route_lookup_linear_oracle(std::span<const RouteEntry> entries, std::uint32_t dst_ip)
{
    std::optional<RouteEntry> best;
    for (const auto& e : entries) {
        if ((dst_ip & prefix_mask(e.prefix_len)) != e.prefix) continue;
        if (!best || e.prefix_len > best->prefix_len) best = e;
    }
    return best;
}

std::optional<Neighbor> NeighborTable::find(std::uint32_t ip) const
{
    auto it = map_.find(ip);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::string_view to_string(DropReason r) noexcept
{
    switch (r) {
    case DropReason::malformed: return "malformed";
    case DropReason::crc_error: return "crc_error";
    case DropReason::not_ip: return "not_ip";
    case DropReason::bad_ip_header: return "bad_ip_header";
    case DropReason::not_for_us: return "not_for_us";
    case DropReason::no_route: return "no_route";
    case DropReason::ttl_expired: return "ttl_expired";
    case DropReason::no_neighbor: return "no_neighbor";
    }
    return "unknown";
}

RouteResult forward_packet(ByteSpan raw, PortId ingress, const RouteTable& routes,
                           const NeighborTable& neighbors, const PortMacs& my_macs)
{
    if (raw.size() < kMinFrameLen || raw.size() > kMaxFrameLen) return Drop{DropReason::malformed};
    if (fcs_verify(raw) != FcsVerdict::ok) return Drop{DropReason::crc_error};
    if (load_be16(raw, 12) != kEtherTypeIpv4) return Drop{DropReason::not_ip};

    const ByteSpan l3 = raw.subspan(kHeaderLen, raw.size() - kHeaderLen - kFcsLen);
    Ipv4Header ip;
    try {
        ip = parse_ipv4(l3);
    } catch (const Error&) {
        return Drop{DropReason::bad_ip_header};
    }
    if (!ip.checksum_valid) return Drop{DropReason::bad_ip_header};

    const MacAddr dst = MacAddr::from_bytes(raw, 0);
    auto mine = my_macs.find(ingress);
    if (!dst.is_broadcast() && (mine == my_macs.end() || mine->second != dst)) return Drop{DropReason::not_for_us};

    const auto route = routes.lookup(ip.dst_ip);
    if (!route) return Drop{DropReason::no_route};
    if (ip.ttl <= 1) return Drop{DropReason::ttl_expired};

    const std::uint32_t hop = route->next_hop_ip == 0 ? ip.dst_ip : route->next_hop_ip;
    const auto neighbor = neighbors.find(hop);
    auto egress_mac = my_macs.find(route->egress_port);
    if (!neighbor || egress_mac == my_macs.end()) return Drop{DropReason::no_neighbor};

    Routed out;
    out.egress = route->egress_port;
    out.frame.assign(raw.begin(), raw.end() - kFcsLen);
    neighbor->mac.write_to(out.frame, 0);
    egress_mac->second.write_to(out.frame, 6);
    constexpr std::size_t ttl_at = kHeaderLen + 8;
    constexpr std::size_t csum_at = kHeaderLen + 10;
    out.frame[ttl_at] = static_cast<std::uint8_t>(ip.ttl - 1);
    store_be16(out.frame, csum_at, ipv4_checksum_decrement_ttl(ip.header_checksum, ip.ttl));
    append_fcs(out.frame, crc32_compute(out.frame));
    return out;
}

RouteResult Router::forward(ByteSpan raw, PortId ingress)
{
    auto& c = counters_[ingress];
    ++c.rx_frames;
    auto r = forward_packet(raw, ingress, cfg_.routes, cfg_.neighbors, cfg_.port_macs);
    if (const auto* d = std::get_if<Drop>(&r))
        ++c.drops[static_cast<std::size_t>(d->reason)];
    else
        ++c.forwarded;
    return r;
}

} // namespace ethpipe
