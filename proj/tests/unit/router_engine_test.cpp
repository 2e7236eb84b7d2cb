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

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"
#include "ethpipe/header_parse.hpp"
#include "ethpipe/router_engine.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ethpipe;
using ethpipe::testing::Rng;

namespace {

const MacAddr kHost = MacAddr::from_u64(0x02000000000A);
const MacAddr kPeer = MacAddr::from_u64(0x02000000000B);
const MacAddr kGw = MacAddr::from_u64(0x02000000000D);
const MacAddr kR0 = MacAddr::from_u64(0x020000000100);
const MacAddr kR1 = MacAddr::from_u64(0x020000000101);

constexpr std::uint32_t ip4(unsigned a, unsigned b, unsigned c, unsigned d)
{
    return (a << 24) | (b << 16) | (c << 8) | d;
}

struct Fixture {
    RouteTable routes;
    NeighborTable neighbors;
    PortMacs macs{{0, kR0}, {1, kR1}};

    Fixture()
    {
        routes.insert({ip4(10, 0, 0, 0), 24, 0, 0});
        routes.insert({ip4(10, 0, 1, 0), 24, 0, 1});
        routes.insert({ip4(192, 168, 0, 0), 16, ip4(10, 0, 1, 254), 1});
        neighbors.set(ip4(10, 0, 0, 1), {kHost, 0});
        neighbors.set(ip4(10, 0, 1, 2), {kPeer, 1});
        neighbors.set(ip4(10, 0, 1, 254), {kGw, 1});
    }

    RouteResult fwd(ByteSpan f, PortId in = 0) const { return forward_packet(f, in, routes, neighbors, macs); }
};

DropReason reason(const RouteResult& r)
{
    EXPECT_TRUE(std::holds_alternative<Drop>(r));
    return std::holds_alternative<Drop>(r) ? std::get<Drop>(r).reason : DropReason::malformed;
}

Bytes udp(std::uint32_t dst_ip, std::uint8_t ttl = 64, const MacAddr& dst_mac = kR0, std::size_t data = 18)
{
    return ethpipe::testing::build_udp_frame(dst_mac, kHost, ip4(10, 0, 0, 1), dst_ip, ttl, 4000, 80, data);
}

} // namespace

TEST(RouteTable, LongestPrefixWins)
{
    RouteTable t;
    t.insert({0, 0, ip4(1, 1, 1, 1), 0});
    t.insert({ip4(10, 0, 0, 0), 8, 0, 1});
    t.insert({ip4(10, 1, 0, 0), 16, 0, 2});
    t.insert({ip4(10, 1, 2, 3), 32, 0, 3});
    EXPECT_EQ(t.lookup(ip4(8, 8, 8, 8))->egress_port, 0);
    EXPECT_EQ(t.lookup(ip4(10, 9, 9, 9))->egress_port, 1);
    EXPECT_EQ(t.lookup(ip4(10, 1, 9, 9))->egress_port, 2);
    EXPECT_EQ(t.lookup(ip4(10, 1, 2, 3))->egress_port, 3);
    EXPECT_EQ(t.lookup(ip4(10, 1, 2, 4))->egress_port, 2);
    EXPECT_EQ(t.size(), 4u);
}

TEST(RouteTable, MissWithoutDefault)
{
    RouteTable t;
    t.insert({ip4(10, 0, 0, 0), 8, 0, 1});
    EXPECT_FALSE(t.lookup(ip4(11, 0, 0, 0)));
}

TEST(RouteTable, ReplaceSamePrefix)
{
    RouteTable t;
    t.insert({ip4(10, 0, 0, 0), 8, 0, 1});
    t.insert({ip4(10, 0, 0, 0), 8, 0, 7});
    EXPECT_EQ(t.size(), 1u);
    EXPECT_EQ(t.lookup(ip4(10, 2, 3, 4))->egress_port, 7);
}

TEST(RouteTable, DirtyPrefixRejected)
{
    RouteTable t;
    for (const RouteEntry& e : {RouteEntry{ip4(10, 0, 0, 1), 24, 0, 0}, RouteEntry{ip4(10, 0, 0, 0), 33, 0, 0}}) {
        try {
            t.insert(e);
            FAIL();
        } catch (const Error& err) {
            EXPECT_EQ(err.code(), Errc::dirty_prefix);
        }
    }
    EXPECT_EQ(t.size(), 0u);
}

TEST(RouteTable, CopyIsDeep)
{
    RouteTable a;
    a.insert({ip4(10, 0, 0, 0), 8, 0, 1});
    RouteTable b = a;
    b.insert({ip4(10, 0, 0, 0), 8, 0, 2});
    EXPECT_EQ(a.lookup(ip4(10, 0, 0, 1))->egress_port, 1);
    EXPECT_EQ(b.lookup(ip4(10, 0, 0, 1))->egress_port, 2);
}

TEST(RouteTable, MatchesLinearScanOnRandomTables)
{
    Rng rng(41);
    for (int table = 0; table < 10; ++table) {
        RouteTable t;
        std::vector<RouteEntry> all;
        const std::size_t n = rng.range(1, 1000);
        for (std::size_t i = 0; i < n; ++i) {
            const auto len = static_cast<std::uint8_t>(rng.range(0, 32));
            RouteEntry e{static_cast<std::uint32_t>(rng.u64()) & ethpipe::testing::mask_of(len), len,
                         static_cast<std::uint32_t>(rng.u64()), static_cast<PortId>(rng.range(0, 15))};
            t.insert(e);
            // The oracle keeps the last write for a repeated prefix.
            auto same = std::find_if(all.begin(), all.end(), [&](const auto& x) {
                return x.prefix == e.prefix && x.prefix_len == e.prefix_len;
            });
            if (same != all.end())
                *same = e;
            else
                all.push_back(e);
        }
        ASSERT_EQ(t.size(), all.size());
        for (int q = 0; q < 2000; ++q) {
            // Half the queries land inside a known prefix.
            std::uint32_t dst = static_cast<std::uint32_t>(rng.u64());
            if (rng.coin()) {
                const auto& e = all[rng.range(0, all.size() - 1)];
                dst = e.prefix | (dst & ~ethpipe::testing::mask_of(e.prefix_len));
            }
            ASSERT_EQ(t.lookup(dst), route_lookup_linear_oracle(all, dst)) << format_ipv4(dst);
        }
    }
}

TEST(Router, DirectDeliveryIsByteExact)
{
    Fixture fx;
    const auto in = udp(ip4(10, 0, 1, 2));
    const auto r = fx.fwd(in);
    ASSERT_TRUE(std::holds_alternative<Routed>(r));
    const auto& out = std::get<Routed>(r);
    EXPECT_EQ(out.egress, 1);
    EXPECT_EQ(out.frame, ethpipe::testing::expected_router_rewrite(in, kPeer, kR1));
}

TEST(Router, ViaNextHop)
{
    Fixture fx;
    const auto in = udp(ip4(192, 168, 3, 4), 9);
    const auto r = fx.fwd(in);
    ASSERT_TRUE(std::holds_alternative<Routed>(r));
    EXPECT_EQ(std::get<Routed>(r).frame, ethpipe::testing::expected_router_rewrite(in, kGw, kR1));
}

TEST(Router, BroadcastDestinationAccepted)
{
    Fixture fx;
    EXPECT_TRUE(std::holds_alternative<Routed>(fx.fwd(udp(ip4(10, 0, 1, 2), 64, MacAddr::broadcast()))));
}

TEST(Router, DropReasonsInOrder)
{
    Fixture fx;
    EXPECT_EQ(reason(fx.fwd(Bytes(40))), DropReason::malformed);

    auto bad_fcs = udp(ip4(10, 0, 1, 2));
    bad_fcs.back() ^= 1;
    EXPECT_EQ(reason(fx.fwd(bad_fcs)), DropReason::crc_error);

    EXPECT_EQ(reason(fx.fwd(ethpipe::testing::build_frame(kR0, kHost, 0x0806, Bytes(28)))), DropReason::not_ip);

    auto bad_csum = udp(ip4(10, 0, 1, 2));
    bad_csum.resize(bad_csum.size() - 4);
    bad_csum[14 + 10] ^= 0xFF;
    bad_csum = ethpipe::testing::build_frame(kR0, kHost, 0x0800, ByteSpan(bad_csum).subspan(14));
    EXPECT_EQ(reason(fx.fwd(bad_csum)), DropReason::bad_ip_header);

    EXPECT_EQ(reason(fx.fwd(udp(ip4(10, 0, 1, 2), 64, kPeer))), DropReason::not_for_us);
    EXPECT_EQ(reason(fx.fwd(udp(ip4(10, 0, 1, 2)), 1)), DropReason::not_for_us); // kR0 arrives on port 1
    EXPECT_EQ(reason(fx.fwd(udp(ip4(172, 16, 0, 1)))), DropReason::no_route);
    EXPECT_EQ(reason(fx.fwd(udp(ip4(10, 0, 1, 2), 1))), DropReason::ttl_expired);
    EXPECT_EQ(reason(fx.fwd(udp(ip4(10, 0, 1, 2), 0))), DropReason::ttl_expired);
    EXPECT_EQ(reason(fx.fwd(udp(ip4(10, 0, 1, 77)))), DropReason::no_neighbor);

    // Several faults at once: the earliest check wins.
    EXPECT_EQ(reason(fx.fwd(udp(ip4(172, 16, 0, 1), 1, kPeer))), DropReason::not_for_us);
    EXPECT_EQ(reason(fx.fwd(udp(ip4(172, 16, 0, 1), 1))), DropReason::no_route);
}

TEST(Router, RandomPacketsOnlyTouchRewrittenBytes)
{
    Rng rng(43);
    Fixture fx;
    for (int i = 0; i < 500; ++i) {
        const auto ttl = static_cast<std::uint8_t>(rng.range(2, 255));
        const auto in = udp(ip4(10, 0, 1, 2), ttl, kR0, rng.range(18, 1400));
        const auto r = fx.fwd(in);
        ASSERT_TRUE(std::holds_alternative<Routed>(r));
        const auto& out = std::get<Routed>(r).frame;
        ASSERT_EQ(out.size(), in.size());
        for (std::size_t k = 0; k < in.size(); ++k) {
            const bool editable = k < 14 || k == 14 + 8 || k == 14 + 10 || k == 14 + 11 || k >= in.size() - 4;
            if (!editable) ASSERT_EQ(out[k], in[k]) << "byte " << k;
        }
        ASSERT_EQ(out[14 + 8], ttl - 1);
        ASSERT_GE(out[14 + 8], 1);
        ASSERT_EQ(fcs_verify(out), FcsVerdict::ok);
        ASSERT_TRUE(parse_ipv4(ByteSpan(out).subspan(14, out.size() - 18)).checksum_valid);
        ASSERT_EQ(out, ethpipe::testing::expected_router_rewrite(in, kPeer, kR1));
    }
}

TEST(Router, CountsPerPort)
{
    Fixture fx;
    Router r(RouterConfig{fx.routes, fx.neighbors, fx.macs});
    r.forward(udp(ip4(10, 0, 1, 2)), 0);
    r.forward(udp(ip4(172, 16, 0, 1)), 0);
    const auto& c = r.counters().at(0);
    EXPECT_EQ(c.rx_frames, 2u);
    EXPECT_EQ(c.forwarded, 1u);
    EXPECT_EQ(c.drops[static_cast<std::size_t>(DropReason::no_route)], 1u);
    EXPECT_EQ(c.dropped(), 1u);
}
