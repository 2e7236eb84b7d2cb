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
#include "ethpipe/switch_engine.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ethpipe;
using ethpipe::testing::Rng;

namespace {

const MacAddr A = MacAddr::from_u64(0x02000000000A);
const MacAddr B = MacAddr::from_u64(0x02000000000B);
const MacAddr C = MacAddr::from_u64(0x02000000000C);

Bytes frame(const MacAddr& dst, const MacAddr& src)
{
    return ethpipe::testing::build_frame(dst, src, 0x88B5, Bytes(46, 0x42));
}

Bytes corrupt(Bytes f)
{
    f[30] ^= 0x01;
    return f;
}

SwitchConfig config(SwitchPolicy policy, std::size_t ports = 4)
{
    SwitchConfig c;
    c.port_count = ports;
    c.policy = policy;
    return c;
}

} // namespace

TEST(MacTable, LearnLookupAndAging)
{
    MacTable t(1000);
    EXPECT_FALSE(t.lookup(A, 0));
    t.learn(A, 2, 100);
    EXPECT_EQ(t.lookup(A, 100), 2);
    EXPECT_EQ(t.lookup(A, 1100), 2); // exactly at the limit
    EXPECT_FALSE(t.lookup(A, 1101));
    t.learn(A, 3, 1200); // refresh moves the station
    EXPECT_EQ(t.lookup(A, 1300), 3);
    EXPECT_EQ(t.size(), 1u);
}

TEST(MacTable, RefusesBroadcastSource)
{
    MacTable t;
    try {
        t.learn(MacAddr::broadcast(), 0, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::refuse_broadcast_source);
    }
    EXPECT_EQ(t.size(), 0u);
}

TEST(MacTable, EntriesSorted)
{
    MacTable t;
    t.learn(C, 1, 0);
    t.learn(A, 2, 0);
    t.learn(B, 3, 0);
    const auto e = t.entries();
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0].mac, A);
    EXPECT_EQ(e[1].mac, B);
    EXPECT_EQ(e[2].mac, C);
}

TEST(Switch, RejectsBadConfig)
{
    EXPECT_THROW(Switch(config(SwitchPolicy::store_forward, 1)), Error);
    auto c = config(SwitchPolicy::hybrid);
    c.hybrid.window = 0;
    EXPECT_THROW(Switch{c}, Error);
    c = config(SwitchPolicy::hybrid);
    c.hybrid.enter_sf_threshold = 0.01;
    c.hybrid.exit_sf_threshold = 0.01;
    EXPECT_THROW(Switch{c}, Error);
}

TEST(Switch, FloodThenUnicastThenSameSegment)
{
    Switch sw(config(SwitchPolicy::store_forward));
    auto a = sw.process_frame(frame(B, A), 0, 0);
    EXPECT_EQ(a.kind, ActionKind::flood);
    EXPECT_EQ(a.ports, (std::vector<PortId>{1, 2, 3}));
    EXPECT_EQ(a.mode_used, SwitchMode::store_forward);

    a = sw.process_frame(frame(A, B), 2, 10);
    EXPECT_EQ(a.kind, ActionKind::unicast);
    EXPECT_EQ(a.ports, (std::vector<PortId>{0}));

    a = sw.process_frame(frame(B, C), 2, 20);
    EXPECT_EQ(a.kind, ActionKind::discard);
    EXPECT_EQ(a.reason, DiscardReason::same_segment);
    EXPECT_TRUE(a.ports.empty());

    EXPECT_EQ(sw.counters(0).floods, 1u);
    EXPECT_EQ(sw.counters(2).rx_frames, 2u);
    EXPECT_EQ(sw.counters(2).discards[0], 1u);
}

TEST(Switch, BroadcastAndMulticastFlood)
{
    Switch sw(config(SwitchPolicy::store_forward));
    sw.process_frame(frame(A, A), 1, 0);
    EXPECT_EQ(sw.process_frame(frame(MacAddr::broadcast(), B), 0, 1).kind, ActionKind::flood);
    EXPECT_EQ(sw.process_frame(frame(MacAddr::from_u64(0x01005E000001), B), 0, 2).kind, ActionKind::flood);
}

TEST(Switch, BroadcastSourceDiscardedAsMalformed)
{
    for (auto policy : {SwitchPolicy::store_forward, SwitchPolicy::cut_through}) {
        Switch sw(config(policy));
        const auto a = sw.process_frame(frame(A, MacAddr::broadcast()), 0, 0);
        EXPECT_EQ(a.kind, ActionKind::discard);
        EXPECT_EQ(a.reason, DiscardReason::malformed);
        EXPECT_EQ(sw.table().size(), 0u);
    }
}

TEST(Switch, StoreForwardNeverLearnsFromCorruptFrames)
{
    Switch sw(config(SwitchPolicy::store_forward));
    const auto a = sw.process_frame(corrupt(frame(B, A)), 0, 0);
    EXPECT_EQ(a.kind, ActionKind::discard);
    EXPECT_EQ(a.reason, DiscardReason::crc_error);
    EXPECT_EQ(sw.table().size(), 0u);
    EXPECT_EQ(sw.counters(0).crc_errors, 1u);
    // Runt input is malformed, not a CRC error.
    EXPECT_EQ(sw.process_frame(Bytes(30, 1), 0, 1).reason, DiscardReason::malformed);
}

TEST(Switch, CutThroughForwardsCorruptFramesButDoesNotLearn)
{
    Switch sw(config(SwitchPolicy::cut_through));
    const auto a = sw.process_frame(corrupt(frame(B, A)), 0, 0);
    EXPECT_EQ(a.kind, ActionKind::flood);
    EXPECT_EQ(a.mode_used, SwitchMode::cut_through);
    EXPECT_EQ(sw.table().size(), 0u);
    EXPECT_EQ(sw.counters(0).crc_errors, 1u);
    EXPECT_EQ(sw.counters(0).forwarded_bad_crc, 1u);

    sw.process_frame(frame(B, A), 0, 1);
    EXPECT_EQ(sw.table().lookup(A, 1), 0);
}

TEST(Switch, CutThroughDispatchDecidesOnHeaderAlone)
{
    Switch sw(config(SwitchPolicy::cut_through));
    sw.process_frame(frame(A, B), 3, 0);
    const auto f = frame(B, A);
    const auto a = sw.dispatch_cut_through(ByteSpan(f).first(14), 1, 5);
    EXPECT_EQ(a.kind, ActionKind::unicast);
    EXPECT_EQ(a.ports, (std::vector<PortId>{3}));
    EXPECT_FALSE(sw.table().lookup(A, 5)); // not yet learned
    sw.complete_cut_through(f, 1, a, 10);
    EXPECT_EQ(sw.table().lookup(A, 10), 1);
}

TEST(Switch, CutThroughOversizeCountsMalformed)
{
    Switch sw(config(SwitchPolicy::cut_through));
    auto big = ethpipe::testing::build_frame(B, A, 0x88B5, Bytes(1600, 0));
    const auto a = sw.process_frame(big, 0, 0);
    EXPECT_EQ(a.reason, DiscardReason::malformed);
    EXPECT_EQ(sw.table().size(), 0u);
}

TEST(Switch, NoReflectionAndFloodCompleteness)
{
    Rng rng(17);
    for (std::size_t ports : {2u, 3u, 8u}) {
        Switch sw(config(SwitchPolicy::store_forward, ports));
        std::vector<MacAddr> st;
        for (int i = 0; i < 6; ++i) st.push_back(rng.unicast_mac());
        for (int i = 0; i < 400; ++i) {
            const auto in = static_cast<PortId>(rng.range(0, ports - 1));
            const auto a = sw.process_frame(frame(st[rng.range(0, 5)], st[rng.range(0, 5)]), in, static_cast<BitTime>(i));
            for (auto p : a.ports) ASSERT_NE(p, in);
            if (a.kind == ActionKind::flood) {
                ASSERT_EQ(a.ports.size(), ports - 1);
                ASSERT_EQ(std::set<PortId>(a.ports.begin(), a.ports.end()).size(), ports - 1);
            }
        }
    }
}

TEST(Switch, CutThroughAndStoreForwardAgreeOnGoodFrames)
{
    Rng rng(23);
    Switch sf(config(SwitchPolicy::store_forward, 6));
    Switch ct(config(SwitchPolicy::cut_through, 6));
    std::vector<MacAddr> st;
    for (int i = 0; i < 8; ++i) st.push_back(rng.unicast_mac());
    st.push_back(MacAddr::broadcast());
    for (int i = 0; i < 1000; ++i) {
        const auto src = st[rng.range(0, 7)];
        const auto dst = st[rng.range(0, 8)];
        const auto in = static_cast<PortId>(rng.range(0, 5));
        const auto f = frame(dst, src);
        const auto a = sf.process_frame(f, in, static_cast<BitTime>(i));
        const auto b = ct.process_frame(f, in, static_cast<BitTime>(i));
        ASSERT_EQ(a.kind, b.kind) << i;
        ASSERT_EQ(a.ports, b.ports) << i;
    }
}

TEST(Switch, LearningConvergence)
{
    Rng rng(29);
    for (int topo = 0; topo < 20; ++topo) {
        const std::size_t ports = rng.range(2, 8);
        const std::size_t stations = rng.range(2, 8);
        Switch sw(config(SwitchPolicy::store_forward, ports));
        std::vector<std::pair<MacAddr, PortId>> st;
        for (std::size_t i = 0; i < stations; ++i) st.emplace_back(rng.unicast_mac(), static_cast<PortId>(rng.range(0, ports - 1)));
        BitTime t = 0;
        for (const auto& [mac, port] : st) sw.process_frame(frame(MacAddr::broadcast(), mac), port, t++);
        for (int i = 0; i < 300; ++i) {
            const auto& s = st[rng.range(0, stations - 1)];
            const auto& d = st[rng.range(0, stations - 1)];
            const auto a = sw.process_frame(frame(d.first, s.first), s.second, t++);
            ASSERT_NE(a.kind, ActionKind::flood);
            if (s.second == d.second)
                ASSERT_EQ(a.reason, DiscardReason::same_segment);
            else
                ASSERT_EQ(a.ports, (std::vector<PortId>{d.second}));
        }
    }
}

TEST(Hybrid, EntersAndExitsOnStrictCrossings)
{
    HybridState h; // W=100, enter 0.05, exit 0.01
    for (int i = 0; i < 100; ++i) ASSERT_EQ(h.update(true), SwitchMode::cut_through);
    for (int i = 0; i < 5; ++i) ASSERT_EQ(h.update(false), SwitchMode::cut_through) << i; // 5% is not above 5%
    EXPECT_EQ(h.update(false), SwitchMode::store_forward); // 6%
    EXPECT_EQ(h.bad_count(), 6u);
    // Drain: the mode holds until the fraction is strictly below 1%, i.e. zero.
    int steps = 0;
    while (h.update(true) == SwitchMode::store_forward) ++steps;
    EXPECT_EQ(h.bad_count(), 0u);
    EXPECT_EQ(steps, 99); // the six bad verdicts age out on updates 95..100
}

TEST(Hybrid, NoChatterInsideBand)
{
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        HybridState h;
        SwitchMode prev = h.mode();
        for (int i = 0; i < 3000; ++i) {
            const double p = (i / 500) % 2 ? 0.08 : 0.002;
            const auto m = h.update(!rng.coin(p));
            if (m != prev) {
                if (m == SwitchMode::store_forward)
                    ASSERT_GT(h.bad_fraction(), 0.05);
                else
                    ASSERT_LT(h.bad_fraction(), 0.01);
            } else if (m == SwitchMode::cut_through) {
                ASSERT_LE(h.bad_fraction(), 0.05);
            } else {
                ASSERT_GE(h.bad_fraction(), 0.01);
            }
            prev = m;
        }
    }
}

TEST(Hybrid, SwitchUsesHybridMode)
{
    Switch sw(config(SwitchPolicy::hybrid));
    EXPECT_EQ(sw.current_mode(), SwitchMode::cut_through);
    for (int i = 0; i < 6; ++i) sw.process_frame(corrupt(frame(B, A)), 0, static_cast<BitTime>(i));
    EXPECT_EQ(sw.current_mode(), SwitchMode::store_forward);
    EXPECT_EQ(sw.process_frame(frame(B, A), 0, 10).mode_used, SwitchMode::store_forward);
}

TEST(Switch, UnknownIngress)
{
    Switch sw(config(SwitchPolicy::store_forward, 2));
    try {
        sw.process_frame(frame(A, B), 5, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unknown_port);
    }
}
