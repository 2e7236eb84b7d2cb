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
#include "ethpipe/fabric_sim.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace ethpipe;
using ethpipe::testing::Rng;

namespace {

const MacAddr A = MacAddr::from_u64(0x02000000000A);
const MacAddr B = MacAddr::from_u64(0x02000000000B);

Bytes sized(const MacAddr& dst, const MacAddr& src, std::size_t len)
{
    return ethpipe::testing::build_frame(dst, src, 0x88B5, Bytes(len - 18, 0x33));
}

SimConfig switch_sim(SwitchPolicy policy, std::size_t ports = 4)
{
    SimConfig c;
    SwitchConfig sw;
    sw.port_count = ports;
    sw.policy = policy;
    c.device = sw;
    c.links.assign(ports, LinkModel{});
    return c;
}

// Processing delay for the default five-stage pipeline at 8 bit-times per tick.
constexpr SimTime kProc = 5 * 8;

std::map<std::pair<std::uint64_t, PortId>, SimTime> first_out(const SimResult& r)
{
    std::map<std::pair<std::uint64_t, PortId>, SimTime> m;
    for (const auto& ps : r.ports)
        for (const auto& s : ps.latencies) m[{s.frame_id, s.egress}] = s.first_out;
    return m;
}

void expect_egress_gaps(const SimResult& r, const SimConfig& cfg)
{
    std::map<PortId, SimTime> last_end;
    const std::uint64_t fastest = r.timebase_bps;
    for (const auto& e : r.events) {
        const auto upb = fastest / cfg.links[e.port].rate_bps;
        if (e.kind == "tx_start") {
            if (auto it = last_end.find(e.port); it != last_end.end())
                ASSERT_GE(e.time - it->second, SimTime{96} * upb) << e.to_string();
        } else if (e.kind == "tx_end") {
            last_end[e.port] = e.time;
        }
    }
}

} // namespace

TEST(FabricSim, WireBits)
{
    EXPECT_EQ(wire_bits(64), 576u);
    EXPECT_EQ(wire_bits(1518), 12208u);
}

TEST(FabricSim, StoreForwardFirstBitOut)
{
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 1000, 0, {}, false}};
    const auto r = run_simulation(cfg, sched, 1);
    ASSERT_EQ(r.ports[0].latencies.size(), 3u); // flooded
    for (const auto& s : r.ports[0].latencies) {
        EXPECT_EQ(s.first_out, 576u + kProc);
        EXPECT_EQ(s.last_out, 576u + kProc + 576u);
    }
}

TEST(FabricSim, CutThroughFirstBitOut)
{
    const auto cfg = switch_sim(SwitchPolicy::cut_through);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 1000, 0, {}, false}};
    const auto r = run_simulation(cfg, sched, 1);
    ASSERT_EQ(r.ports[0].latencies.size(), 3u);
    for (const auto& s : r.ports[0].latencies) EXPECT_EQ(s.first_out, 176u + kProc);
}

TEST(FabricSim, CutThroughOnFasterEgressWaitsForLastBit)
{
    auto cfg = switch_sim(SwitchPolicy::cut_through, 2);
    cfg.links[1].rate_bps = 1'000'000'000;
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 0, {}, false}};
    const auto r = run_simulation(cfg, sched, 1);
    EXPECT_EQ(r.timebase_bps, 1'000'000'000u);
    ASSERT_EQ(r.ports[0].latencies.size(), 1u);
    // Ingress at 100M: one bit is ten units. The 576-unit copy ends with the arrival.
    EXPECT_EQ(r.ports[0].latencies[0].last_out, 5760u);
    EXPECT_EQ(r.ports[0].latencies[0].first_out, 5760u - 576u);
}

TEST(FabricSim, OverlappingArrivalsRejected)
{
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 0, {}, false}, {sized(B, A, 64), 575, 0, {}, false}};
    try {
        run_simulation(cfg, sched, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::schedule_overlap);
    }
}

TEST(FabricSim, ShortIngressGapCountedNotFatal)
{
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 0, {}, false}, {sized(B, A, 64), 576 + 95, 0, {}, false},
                                        {sized(B, A, 64), 2 * 576 + 95 + 96, 0, {}, false}};
    const auto r = run_simulation(cfg, sched, 1);
    EXPECT_EQ(r.ports[0].ifg_violations, 1u);
    EXPECT_EQ(std::count_if(r.events.begin(), r.events.end(), [](const auto& e) { return e.kind == "ifg_violation"; }), 1);
}

TEST(FabricSim, UnknownPortRejected)
{
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 9, {}, false}};
    EXPECT_THROW(run_simulation(cfg, sched, 1), Error);
}

TEST(FabricSim, EgressQueueKeepsInterframeGap)
{
    // Three ingress ports all aimed at port 3, so its queue stays busy.
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const auto D = MacAddr::from_u64(0x0200000000DD);
    std::vector<TimedFrame> sched{{sized(A, D, 64), 0, 3, {}, false}};
    Rng rng(5);
    for (PortId p = 0; p < 3; ++p) {
        SimTime t = 2000;
        for (int i = 0; i < 30; ++i) {
            const auto len = rng.range(64, 600);
            sched.push_back({sized(D, MacAddr::from_u64(0x020000000100 + p), len), t, p, {}, false});
            t += wire_bits(len) + 96 + rng.range(0, 50);
        }
    }
    const auto r = run_simulation(cfg, sched, 1);
    expect_egress_gaps(r, cfg);
    EXPECT_EQ(r.ports[3].tx_frames, 90u);
}

TEST(FabricSim, BufferOverflowDropsCopies)
{
    auto cfg = switch_sim(SwitchPolicy::store_forward);
    cfg.buffer_frames = 1;
    const auto D = MacAddr::from_u64(0x0200000000DD);
    std::vector<TimedFrame> sched{{sized(A, D, 64), 0, 3, {}, false}};
    for (PortId p = 0; p < 3; ++p)
        for (int i = 0; i < 5; ++i)
            sched.push_back({sized(D, MacAddr::from_u64(0x020000000100 + p), 1518), 2000 + SimTime(i) * 20000, p, {}, false});
    const auto r = run_simulation(cfg, sched, 1);
    EXPECT_GT(r.ports[3].overflow_copies, 0u);
    std::uint64_t overflow_drops = 0;
    for (const auto& ps : r.ports) {
        EXPECT_EQ(ps.rx_frames, ps.forwarded + ps.dropped());
        if (auto it = ps.drops.find("overflow"); it != ps.drops.end()) overflow_drops += it->second;
    }
    EXPECT_EQ(overflow_drops, r.ports[3].overflow_copies);
    expect_egress_gaps(r, cfg);
}

TEST(FabricSim, CorruptFramesInCutThroughAreCounted)
{
    const auto cfg = switch_sim(SwitchPolicy::cut_through);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 0, 100, false}};
    const auto r = run_simulation(cfg, sched, 1);
    EXPECT_EQ(r.ports[0].crc_errors, 1u);
    EXPECT_EQ(r.ports[0].forwarded_bad_crc, 1u);
    EXPECT_EQ(r.ports[1].tx_frames, 1u);
}

TEST(FabricSim, StoreForwardDropsCorruptFrames)
{
    const auto cfg = switch_sim(SwitchPolicy::store_forward);
    const std::vector<TimedFrame> sched{{sized(B, A, 64), 0, 0, {}, true}};
    const auto r = run_simulation(cfg, sched, 99);
    EXPECT_EQ(r.ports[0].crc_errors, 1u);
    EXPECT_EQ(r.ports[0].drops.at("crc_error"), 1u);
    EXPECT_EQ(r.ports[1].tx_frames, 0u);
}

TEST(FabricSim, DeterministicLogs)
{
    const auto cfg = switch_sim(SwitchPolicy::hybrid);
    Rng rng(6);
    std::vector<TimedFrame> sched;
    std::vector<SimTime> next(4, 0);
    for (int i = 0; i < 300; ++i) {
        const auto p = static_cast<PortId>(rng.range(0, 3));
        auto f = ethpipe::testing::random_frame(rng);
        sched.push_back({f, next[p], p, {}, rng.coin(0.1)});
        next[p] += wire_bits(f.size()) + 96 + rng.range(0, 500);
    }
    const auto a = run_simulation(cfg, sched, 1234).render_log();
    const auto b = run_simulation(cfg, sched, 1234).render_log();
    const auto c = run_simulation(cfg, sched, 4321).render_log();
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(FabricSim, RouterDevice)
{
    SimConfig cfg;
    RouterConfig rc;
    rc.routes.insert({0x0A000100, 24, 0, 1});
    rc.neighbors.set(0x0A000102, {B, 1});
    rc.port_macs = {{0, MacAddr::from_u64(0x020000000100)}, {1, MacAddr::from_u64(0x020000000101)}};
    cfg.device = rc;
    cfg.links.assign(2, LinkModel{});
    const auto in = ethpipe::testing::build_udp_frame(MacAddr::from_u64(0x020000000100), A, 0x0A000001, 0x0A000102, 64, 1, 2, 18);
    const auto lost = ethpipe::testing::build_udp_frame(MacAddr::from_u64(0x020000000100), A, 0x0A000001, 0x0B000102, 64, 1, 2, 18);
    const std::vector<TimedFrame> sched{{in, 0, 0, {}, false}, {lost, 1000, 0, {}, false}};
    const auto r = run_simulation(cfg, sched, 1);
    EXPECT_EQ(r.ports[0].rx_frames, 2u);
    EXPECT_EQ(r.ports[0].forwarded, 1u);
    EXPECT_EQ(r.ports[0].drops.at("no_route"), 1u);
    EXPECT_EQ(r.ports[1].tx_frames, 1u);
    ASSERT_EQ(r.ports[0].latencies.size(), 1u);
    EXPECT_EQ(r.ports[0].latencies[0].first_out, 576u + kProc);
}

TEST(FabricSim, RouterEgressMustExist)
{
    SimConfig cfg;
    RouterConfig rc;
    rc.routes.insert({0, 0, 0, 5});
    cfg.device = rc;
    cfg.links.assign(2, LinkModel{});
    EXPECT_THROW(run_simulation(cfg, {}, 1), Error);
}

TEST(FabricSim, InjectError)
{
    const Bytes f{0x00, 0x00};
    EXPECT_EQ(inject_error(f, 0), (Bytes{0x01, 0x00}));
    EXPECT_EQ(inject_error(f, 15), (Bytes{0x00, 0x80}));
    try {
        inject_error(f, 16);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::index_out_of_range);
    }
}

TEST(FabricSim, HybridRampShowsOneEntryAndOneExit)
{
    const auto cfg = switch_sim(SwitchPolicy::hybrid, 2);
    std::vector<TimedFrame> sched;
    SimTime t = 0;
    auto add = [&](bool bad) {
        sched.push_back({sized(B, A, 64), t, 0, bad ? std::optional<std::size_t>(200) : std::nullopt, false});
        t += 576 + 96;
    };
    for (int i = 0; i < 200; ++i) add(false);
    for (int i = 0; i < 200; ++i) add(i % 10 == 0);
    for (int i = 0; i < 300; ++i) add(false);
    const auto r = run_simulation(cfg, sched, 1);
    std::vector<SimEvent> modes;
    for (const auto& e : r.events)
        if (e.kind == "mode") modes.push_back(e);
    ASSERT_EQ(modes.size(), 2u);
    EXPECT_EQ(modes[0].detail, "from=ct to=sf bad=6");
    EXPECT_EQ(modes[1].detail, "from=sf to=ct bad=0");
}
