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
#include "ethpipe/mac_addr.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace ethpipe {

struct RouteEntry {
    std::uint32_t prefix = 0;
    std::uint8_t prefix_len = 0;
    std::uint32_t next_hop_ip = 0; ///< 0 = directly connected
    PortId egress_port = 0;

    friend bool operator==(const RouteEntry&, const RouteEntry&) = default;
};

constexpr std::uint32_t prefix_mask(unsigned len)
{
    return len == 0 ? 0u : ~0u << (32 - len);
}

/// Binary trie keyed on prefix bits, most significant first.
class RouteTable {
public:
    RouteTable();
    ~RouteTable();
    RouteTable(const RouteTable& other);
    RouteTable& operator=(const RouteTable& other);
    RouteTable(RouteTable&&) noexcept;
    RouteTable& operator=(RouteTable&&) noexcept;

    /// Replaces an existing entry with the same prefix and length. Throws
    /// Errc::dirty_prefix if host bits are set or prefix_len > 32.
    void insert(const RouteEntry& e);

    /// Longest matching prefix, if any.
    std::optional<RouteEntry> lookup(std::uint32_t dst_ip) const;

    std::size_t size() const { return size_; }
    std::vector<RouteEntry> entries() const;

private:
    struct Node;
    std::unique_ptr<Node> root_;
    std::size_t size_ = 0;
};

/// Brute-force scan for the longest match.
std::optional<RouteEntry> route_lookup_linear_oracle(std::span<const RouteEntry> entries, std::uint32_t dst_ip);

struct Neighbor {
    MacAddr mac;
    PortId port = 0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Static next-hop resolution: one binding per IP.
class NeighborTable {
public:
    void set(std::uint32_t ip, const Neighbor& n) { map_[ip] = n; }
    std::optional<Neighbor> find(std::uint32_t ip) const;
    std::size_t size() const { return map_.size(); }
    const std::map<std::uint32_t, Neighbor>& entries() const { return map_; }

private:
    std::map<std::uint32_t, Neighbor> map_;
};

using PortMacs = std::map<PortId, MacAddr>;

/// Checked in this order; the first failure is reported.
enum class DropReason { malformed, crc_error, not_ip, bad_ip_header, not_for_us, no_route, ttl_expired, no_neighbor };
inline constexpr std::size_t kDropReasonCount = 8;
std::string_view to_string(DropReason r) noexcept;

struct Routed {
    Bytes frame;
    PortId egress = 0;
};

struct Drop {
    DropReason reason = DropReason::malformed;
};

using RouteResult = std::variant<Routed, Drop>;

/// Strip, look up, decrement TTL, re-wrap. Everything outside the L2 header,
/// TTL, header checksum, and FCS is copied bit for bit.
RouteResult forward_packet(ByteSpan raw, PortId ingress, const RouteTable& routes,
                           const NeighborTable& neighbors, const PortMacs& my_macs);

struct RouterConfig {
    RouteTable routes;
    NeighborTable neighbors;
    PortMacs port_macs;
};

struct RouterPortCounters {
    std::uint64_t rx_frames = 0;
    std::uint64_t forwarded = 0;
    std::array<std::uint64_t, kDropReasonCount> drops{};

    std::uint64_t dropped() const
    {
        std::uint64_t n = 0;
        for (auto d : drops) n += d;
        return n;
    }
};

class Router {
public:
    explicit Router(RouterConfig cfg) : cfg_(std::move(cfg)) {}

    RouteResult forward(ByteSpan raw, PortId ingress);

    const RouterConfig& config() const { return cfg_; }
    const std::map<PortId, RouterPortCounters>& counters() const { return counters_; }

private:
    RouterConfig cfg_;
    std::map<PortId, RouterPortCounters> counters_;
};

} // namespace ethpipe
