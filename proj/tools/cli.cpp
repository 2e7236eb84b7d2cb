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

#include "cli.hpp"

#include "report.hpp"

#include <CLI11.hpp>

#include "ethpipe/capture.hpp"
#include "ethpipe/config.hpp"
#include "ethpipe/error.hpp"
#include "ethpipe/fabric_sim.hpp"
#include "ethpipe/fcs32.hpp"
#include "ethpipe/frame_codec.hpp"
#include "ethpipe/header_parse.hpp"
#include "ethpipe/hexdump.hpp"
#include "ethpipe/router_engine.hpp"
#include "ethpipe/switch_engine.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace ethpipe::cli {

namespace {

std::string hex16(std::uint16_t v)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%04x", v);
    return buf;
}

std::string hex32(std::uint32_t v)
{
    char buf[12];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

std::string join_ports(const std::vector<PortId>& ports)
{
    std::string s;
    for (std::size_t i = 0; i < ports.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ports[i]);
    }
    return s;
}

// A frame read from a hex dump or capture, and whether its FCS is on board.
struct InputFrame {
    Bytes bytes;
    bool has_fcs = true;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> timestamp;
};

bool looks_like_pcap(const Bytes& head)
{
    if (head.size() < 4) return false;
    const std::uint32_t le = std::uint32_t{head[0]} | (std::uint32_t{head[1]} << 8) |
                             (std::uint32_t{head[2]} << 16) | (std::uint32_t{head[3]} << 24);
    const std::uint32_t be = load_be32(head, 0);
    return le == kPcapMagic || be == kPcapMagic;
}

std::vector<InputFrame> load_frames(const std::string& path, bool has_fcs_flag)
{
    const Bytes raw = read_file_bytes(path);
    std::vector<InputFrame> out;
    if (looks_like_pcap(raw)) {
        for (auto& rec : parse_capture(raw))
            out.push_back({std::move(rec.data), has_fcs_flag, std::make_pair(rec.ts_sec, rec.ts_usec)});
    } else {
        for (auto& f : parse_hexdump(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size())))
            out.push_back({std::move(f), true, std::nullopt});
    }
    return out;
}

void describe_packet(Record& r, const ParsedPacket& m)
{
    r.set("dst", m.dst_mac.to_string()).set("src", m.src_mac.to_string());
    r.set("l2", std::string(to_string(m.l2.kind)));
    switch (m.l2.kind) {
    case L2Kind::ethernet_ii: r.set("ethertype", hex16(m.l2.value)); break;
    case L2Kind::ieee8023: r.set("length", static_cast<std::uint64_t>(m.l2.value)); break;
    case L2Kind::malformed: r.set("length_type", hex16(m.l2.value)); break;
    }
    if (m.ip) {
        const auto& ip = *m.ip;
        r.set("ip.src", format_ipv4(ip.src_ip)).set("ip.dst", format_ipv4(ip.dst_ip));
        r.set("ip.proto", static_cast<std::uint64_t>(ip.protocol)).set("ip.ttl", static_cast<std::uint64_t>(ip.ttl));
        r.set("ip.total_length", static_cast<std::uint64_t>(ip.total_length));
        r.set("ip.checksum", ip.checksum_valid ? "valid" : "invalid");
        r.set("ip.fragment", ip.is_fragment());
    }
    if (m.l4) {
        const std::string proto = m.l4->proto == kIpProtoUdp ? "udp" : "tcp";
        r.set(proto + ".src_port", static_cast<std::uint64_t>(m.l4->src_port));
        r.set(proto + ".dst_port", static_cast<std::uint64_t>(m.l4->dst_port));
    }
}

struct Common {
    bool json = false;
};

int emit(const Report& report, const Common& c, std::ostream& out, const Terminal& term)
{
    if (c.json) {
        report.render_json(out);
    } else {
        const char* env = std::getenv("ETHPIPE_COLOR");
        const bool color = term.stdout_is_tty && !(env && std::string(env) == "0");
        report.render_kv(out, {color});
    }
    return kExitOk;
}

int cmd_decode(const std::string& path, bool has_fcs, Report& report)
{
    int rc = kExitOk;
    const auto frames = load_frames(path, has_fcs);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& in = frames[i];
        auto& r = report.add("frame");
        r.set("index", static_cast<std::uint64_t>(i));
        if (in.timestamp) r.set("ts", std::to_string(in.timestamp->first) + "." + std::to_string(in.timestamp->second));
        Bytes bytes = in.bytes;
        if (!in.has_fcs) append_fcs(bytes, crc32_compute(bytes));
        r.set("len", static_cast<std::uint64_t>(bytes.size()));
        try {
            const auto m = extract_metadata(bytes, in.has_fcs);
            describe_packet(r, m);
            r.set("fcs", in.has_fcs ? std::string(to_string(m.fcs_verdict)) : "recomputed");
        } catch (const Error& e) {
            r.set("error", std::string(to_string(e.code())));
            rc = kExitInputError;
        }
    }
    report.add("summary").set("frames", static_cast<std::uint64_t>(frames.size()));
    return rc;
}

int cmd_crc(const std::string& path, bool has_fcs, Report& report)
{
    int rc = kExitOk;
    std::uint64_t ok = 0, bad = 0, absent = 0;
    const auto frames = load_frames(path, has_fcs);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& in = frames[i];
        auto& r = report.add("frame");
        r.set("index", static_cast<std::uint64_t>(i)).set("len", static_cast<std::uint64_t>(in.bytes.size()));
        if (!in.has_fcs) {
            r.set("fcs", "absent").set("computed", hex32(crc32_compute(in.bytes).value));
            ++absent;
            continue;
        }
        if (in.bytes.size() < 5) {
            r.set("error", std::string(to_string(Errc::input_too_short)));
            rc = kExitInputError;
            continue;
        }
        const auto verdict = fcs_verify(in.bytes);
        r.set("fcs", std::string(to_string(verdict)));
        r.set("stored", hex32(read_fcs(in.bytes)));
        r.set("computed", hex32(crc32_compute(ByteSpan(in.bytes).first(in.bytes.size() - 4)).value));
        (verdict == FcsVerdict::ok ? ok : bad)++;
    }
    report.add("summary")
        .set("frames", static_cast<std::uint64_t>(frames.size()))
        .set("ok", ok)
        .set("bad", bad)
        .set("absent", absent);
    return rc;
}

int cmd_switch(const std::string& config, const std::string& trace, Report& report)
{
    Switch sw(load_switch_config(config));
    const auto frames = read_trace(trace);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& tf = frames[i];
        const SwitchMode before = sw.current_mode();
        const auto a = sw.process_frame(tf.frame, tf.port, tf.time);
        auto& r = report.add("action");
        r.set("frame", static_cast<std::uint64_t>(i)).set("port", static_cast<std::uint64_t>(tf.port));
        r.set("time", tf.time).set("mode", std::string(to_string(a.mode_used)));
        r.set("action", std::string(to_string(a.kind)));
        r.set("ports", join_ports(a.ports));
        r.set("reason", a.reason ? std::string(to_string(*a.reason)) : "-");
        if (sw.current_mode() != before)
            report.add("mode")
                .set("frame", static_cast<std::uint64_t>(i))
                .set("from", std::string(to_string(before)))
                .set("to", std::string(to_string(sw.current_mode())));
    }
    for (std::size_t p = 0; p < sw.config().port_count; ++p) {
        const auto& c = sw.counters(static_cast<PortId>(p));
        report.add("port")
            .set("port", static_cast<std::uint64_t>(p))
            .set("rx_frames", c.rx_frames)
            .set("forwarded", c.forwarded)
            .set("floods", c.floods)
            .set("crc_errors", c.crc_errors)
            .set("forwarded_bad_crc", c.forwarded_bad_crc)
            .set("drops.same_segment", c.discards[0])
            .set("drops.crc_error", c.discards[1])
            .set("drops.malformed", c.discards[2]);
    }
    for (const auto& e : sw.table().entries())
        report.add("mac").set("mac", e.mac.to_string()).set("port", static_cast<std::uint64_t>(e.port)).set("learned_at", e.learned_at);
    return kExitOk;
}

int cmd_route(const std::string& config, const std::string& trace, const std::string& out_path, Report& report)
{
    Router router(load_router_config(config));
    const auto frames = read_trace(trace);
    std::vector<Bytes> routed_frames;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& tf = frames[i];
        const auto result = router.forward(tf.frame, tf.port);
        auto& r = report.add("packet");
        r.set("frame", static_cast<std::uint64_t>(i)).set("port", static_cast<std::uint64_t>(tf.port));
        if (const auto* d = std::get_if<Drop>(&result)) {
            r.set("result", "drop").set("reason", std::string(to_string(d->reason)));
        } else {
            const auto& ok = std::get<Routed>(result);
            r.set("result", "forward").set("egress", static_cast<std::uint64_t>(ok.egress));
            r.set("dst", MacAddr::from_bytes(ok.frame, 0).to_string());
            r.set("ttl", static_cast<std::uint64_t>(ok.frame[kHeaderLen + 8]));
            routed_frames.push_back(ok.frame);
        }
    }
    for (const auto& [port, c] : router.counters()) {
        auto& r = report.add("port");
        r.set("port", static_cast<std::uint64_t>(port)).set("rx_frames", c.rx_frames).set("forwarded", c.forwarded);
        for (std::size_t k = 0; k < kDropReasonCount; ++k)
            r.set("drops." + std::string(to_string(static_cast<DropReason>(k))), c.drops[k]);
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::trunc);
        if (!f) throw Error(Errc::io_failure, "cannot open " + out_path);
        f << format_hexdump(routed_frames);
    }
    return kExitOk;
}

int cmd_sim(const std::string& path, std::optional<std::uint64_t> seed, const std::string& log_path,
            bool latencies, Report& report)
{
    const Scenario sc = load_scenario(path);
    const std::uint64_t used_seed = seed.value_or(sc.seed);
    const SimResult res = run_simulation(sc.config, sc.schedule, used_seed);

    report.add("sim")
        .set("frames", static_cast<std::uint64_t>(sc.schedule.size()))
        .set("events", static_cast<std::uint64_t>(res.events.size()))
        .set("seed", used_seed)
        .set("timebase_bps", res.timebase_bps)
        .set("end_time", res.end_time);

    for (std::size_t p = 0; p < res.ports.size(); ++p) {
        const auto& ps = res.ports[p];
        auto& r = report.add("port");
        r.set("port", static_cast<std::uint64_t>(p))
            .set("rx_frames", ps.rx_frames)
            .set("tx_frames", ps.tx_frames)
            .set("forwarded", ps.forwarded)
            .set("dropped", ps.dropped())
            .set("crc_errors", ps.crc_errors)
            .set("forwarded_bad_crc", ps.forwarded_bad_crc)
            .set("floods", ps.floods)
            .set("ifg_violations", ps.ifg_violations)
            .set("overflow_copies", ps.overflow_copies);
        for (const auto& [reason, n] : ps.drops) r.set("drops." + reason, n);
        if (!ps.latencies.empty()) {
            auto [lo, hi] = std::minmax_element(ps.latencies.begin(), ps.latencies.end(),
                                                [](const auto& a, const auto& b) { return a.first_out < b.first_out; });
            r.set("latency.first_out.min", lo->first_out).set("latency.first_out.max", hi->first_out);
        }
    }
    if (latencies) {
        for (std::size_t p = 0; p < res.ports.size(); ++p)
            for (const auto& s : res.ports[p].latencies)
                report.add("latency")
                    .set("frame", s.frame_id)
                    .set("ingress", static_cast<std::uint64_t>(p))
                    .set("egress", static_cast<std::uint64_t>(s.egress))
                    .set("first_out", s.first_out)
                    .set("last_out", s.last_out);
    }

    if (!log_path.empty()) {
        std::ofstream f(log_path, std::ios::trunc | std::ios::binary);
        if (!f) throw Error(Errc::io_failure, "cannot open " + log_path);
        f << res.render_log();
    } else {
        for (const auto& e : res.events) {
            auto& r = report.add("event");
            r.set("t", e.time).set("ev", e.kind).set("port", static_cast<std::uint64_t>(e.port)).set("frame", e.frame);
            std::istringstream detail(e.detail);
            for (std::string tok; detail >> tok;) {
                const auto eq = tok.find('=');
                r.set(tok.substr(0, eq), eq == std::string::npos ? std::string() : tok.substr(eq + 1));
            }
        }
    }
    return kExitOk;
}

} // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err, Terminal term)
{
    CLI::App app{"Ethernet packet processing toolkit: frame decode, FCS, switch, router, fabric simulation"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "Emit a JSON document instead of key=value lines");

    std::string file;
    bool has_fcs = false;
    auto* decode = app.add_subcommand("decode", "Print parsed L2/L3/L4 fields per frame");
    decode->add_option("file", file, "Hex dump or pcap file")->required();
    decode->add_flag("--has-fcs", has_fcs, "Capture frames carry their FCS");
    decode->add_flag("--json", common.json, "Emit JSON");

    auto* crc = app.add_subcommand("crc", "Check the FCS of every frame");
    crc->add_option("file", file, "Hex dump or pcap file")->required();
    crc->add_flag("--has-fcs", has_fcs, "Capture frames carry their FCS");
    crc->add_flag("--json", common.json, "Emit JSON");

    std::string config, trace, out_path;
    auto* sw = app.add_subcommand("switch", "Replay a trace through the learning switch");
    sw->add_option("--config", config, "Switch config file")->required();
    sw->add_option("--trace", trace, "Annotated hex dump trace")->required();
    sw->add_flag("--json", common.json, "Emit JSON");

    auto* route = app.add_subcommand("route", "Replay a trace through the IPv4 router");
    route->add_option("--config", config, "Router config file")->required();
    route->add_option("--trace", trace, "Annotated hex dump trace")->required();
    route->add_option("--out", out_path, "Write routed frames as a hex dump");
    route->add_flag("--json", common.json, "Emit JSON");

    std::string scenario, log_path;
    std::optional<std::uint64_t> seed;
    bool latencies = false;
    auto* sim = app.add_subcommand("sim", "Run the bit-time fabric simulator");
    sim->add_option("--scenario", scenario, "Scenario file")->required();
    sim->add_option("--seed", seed, "Override the scenario seed");
    sim->add_option("--log", log_path, "Write the event log here instead of stdout");
    sim->add_flag("--latencies", latencies, "List every latency sample");
    sim->add_flag("--json", common.json, "Emit JSON");

    std::vector<const char*> argv{"ethpipe"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    Report report;
    int rc = kExitOk;
    try {
        if (*decode)
            rc = cmd_decode(file, has_fcs, report);
        else if (*crc)
            rc = cmd_crc(file, has_fcs, report);
        else if (*sw)
            rc = cmd_switch(config, trace, report);
        else if (*route)
            rc = cmd_route(config, trace, out_path, report);
        else if (*sim)
            rc = cmd_sim(scenario, seed, log_path, latencies, report);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    emit(report, common, out, term);
    return rc;
}

} // namespace ethpipe::cli
