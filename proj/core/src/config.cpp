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

#include "ethpipe/config.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/frame_codec.hpp"
#include "ethpipe/header_parse.hpp"
#include "ethpipe/hexdump.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace ethpipe {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
    throw Error(Errc::bad_config, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T number(std::string_view s, std::size_t line)
{
    T v{};
    int base = 10;
    if constexpr (std::is_integral_v<T>) {
        if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
            s.remove_prefix(2);
            base = 16;
        }
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
        if (ec != std::errc{} || p != s.data() + s.size()) fail(line, "bad number '" + std::string(s) + "'");
    } else {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) fail(line, "bad number '" + std::string(s) + "'");
    }
    return v;
}

MacAddr mac(std::string_view s, std::size_t line)
{
    auto m = MacAddr::parse(s);
    if (!m) fail(line, "bad MAC '" + std::string(s) + "'");
    return *m;
}

std::uint32_t ip(std::string_view s, std::size_t line)
{
    auto a = parse_ipv4_addr(s);
    if (!a) fail(line, "bad IPv4 address '" + std::string(s) + "'");
    return *a;
}

PortId port(std::string_view s, std::size_t line)
{
    return number<PortId>(s, line);
}

const std::vector<ConfigLine>& section(const SectionedText& t, const std::string& name)
{
    static const std::vector<ConfigLine> empty;
    auto it = t.find(name);
    return it == t.end() ? empty : it->second;
}

// `key=value` tokens after the positional fields.
std::map<std::string, std::string> options(const ConfigLine& l, std::size_t first)
{
    std::map<std::string, std::string> out;
    for (std::size_t i = first; i < l.fields.size(); ++i) {
        const auto& f = l.fields[i];
        const auto eq = f.find('=');
        if (eq == std::string::npos) fail(l.line_no, "expected key=value, got '" + f + "'");
        out[f.substr(0, eq)] = f.substr(eq + 1);
    }
    return out;
}

SwitchPolicy policy(std::string_view s, std::size_t line)
{
    if (s == "sf") return SwitchPolicy::store_forward;
    if (s == "ct") return SwitchPolicy::cut_through;
    if (s == "hybrid") return SwitchPolicy::hybrid;
    fail(line, "mode must be sf, ct or hybrid");
}

// Applies switch keys; unknown keys are left for the caller.
bool apply_switch_key(SwitchConfig& cfg, double& aging_s, std::uint64_t& rate, const ConfigLine& l)
{
    if (l.fields.size() != 2) return false;
    const auto& k = l.fields[0];
    const auto& v = l.fields[1];
    if (k == "ports")
        cfg.port_count = number<std::size_t>(v, l.line_no);
    else if (k == "mode")
        cfg.policy = policy(v, l.line_no);
    else if (k == "window")
        cfg.hybrid.window = number<std::size_t>(v, l.line_no);
    else if (k == "enter")
        cfg.hybrid.enter_sf_threshold = number<double>(v, l.line_no);
    else if (k == "exit")
        cfg.hybrid.exit_sf_threshold = number<double>(v, l.line_no);
    else if (k == "aging")
        aging_s = number<double>(v, l.line_no);
    else if (k == "rate")
        rate = parse_rate(v);
    else
        return false;
    return true;
}

BitTime aging_bit_times(double seconds, std::uint64_t rate)
{
    return static_cast<BitTime>(std::llround(seconds * static_cast<double>(rate)));
}

} // namespace

SectionedText parse_sections(std::string_view text)
{
    SectionedText out;
    std::string current;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            out[current];
            continue;
        }
        ConfigLine cl;
        cl.line_no = line_no;
        const auto eq = line.find('=');
        const auto sp = line.find_first_of(" \t");
        if (eq != std::string_view::npos && (sp == std::string_view::npos || trim(line.substr(0, eq)).find_first_of(" \t") == std::string_view::npos)) {
            cl.fields = {std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
        } else {
            std::istringstream ls{std::string(line)};
            std::string tok;
            while (ls >> tok) cl.fields.push_back(tok);
        }
        out[current].push_back(std::move(cl));
    }
    return out;
}

std::uint64_t parse_rate(std::string_view s)
{
    std::uint64_t mult = 1;
    if (!s.empty()) {
        switch (s.back()) {
        case 'k': case 'K': mult = 1'000; break;
        case 'M': mult = 1'000'000; break;
        case 'G': mult = 1'000'000'000; break;
        default: break;
        }
        if (mult != 1) s.remove_suffix(1);
    }
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0)
        throw Error(Errc::bad_config, "bad link rate '" + std::string(s) + "'");
    return v * mult;
}

SwitchConfig parse_switch_config(std::string_view text)
{
    SwitchConfig cfg;
    double aging_s = 300.0;
    std::uint64_t rate = 100'000'000;
    for (const auto& [name, lines] : parse_sections(text)) {
        if (!name.empty() && name != "switch" && name != "device") {
            if (!lines.empty()) fail(lines.front().line_no, "unexpected section '" + name + "'");
            continue;
        }
        for (const auto& l : lines) {
            if (l.fields.size() == 2 && l.fields[0] == "kind") continue;
            if (!apply_switch_key(cfg, aging_s, rate, l))
                fail(l.line_no, "unknown switch setting '" + l.fields[0] + "'");
        }
    }
    cfg.aging = aging_bit_times(aging_s, rate);
    return cfg;
}

SwitchConfig load_switch_config(const std::filesystem::path& path)
{
    return parse_switch_config(read_text_file(path));
}

namespace {

void add_routes(RouteTable& t, const std::vector<ConfigLine>& lines)
{
    for (const auto& l : lines) {
        if (l.fields.size() != 3) fail(l.line_no, "route needs <prefix>/<len> <next_hop|direct> <port>");
        const auto& pfx = l.fields[0];
        const auto slash = pfx.find('/');
        if (slash == std::string::npos) fail(l.line_no, "route prefix needs /len");
        RouteEntry e;
        e.prefix = ip(std::string_view(pfx).substr(0, slash), l.line_no);
        const auto len = number<unsigned>(std::string_view(pfx).substr(slash + 1), l.line_no);
        if (len > 32) fail(l.line_no, "prefix length above 32");
        e.prefix_len = static_cast<std::uint8_t>(len);
        e.next_hop_ip = l.fields[1] == "direct" ? 0 : ip(l.fields[1], l.line_no);
        e.egress_port = port(l.fields[2], l.line_no);
        t.insert(e);
    }
}

void add_neighbors(NeighborTable& t, const std::vector<ConfigLine>& lines)
{
    for (const auto& l : lines) {
        if (l.fields.size() != 3) fail(l.line_no, "neighbor needs <ip> <mac> <port>");
        t.set(ip(l.fields[0], l.line_no), {mac(l.fields[1], l.line_no), port(l.fields[2], l.line_no)});
    }
}

void add_port_macs(PortMacs& m, const std::vector<ConfigLine>& lines)
{
    for (const auto& l : lines) {
        if (l.fields.size() != 2) fail(l.line_no, "port MAC needs <port> <mac>");
        m[port(l.fields[0], l.line_no)] = mac(l.fields[1], l.line_no);
    }
}

std::vector<ConfigLine> all_lines(const SectionedText& t)
{
    std::vector<ConfigLine> out;
    for (const auto& [name, lines] : t) out.insert(out.end(), lines.begin(), lines.end());
    return out;
}

} // namespace

RouteTable parse_routes(std::string_view text)
{
    RouteTable t;
    add_routes(t, all_lines(parse_sections(text)));
    return t;
}

NeighborTable parse_neighbors(std::string_view text)
{
    NeighborTable t;
    add_neighbors(t, all_lines(parse_sections(text)));
    return t;
}

PortMacs parse_port_macs(std::string_view text)
{
    PortMacs m;
    add_port_macs(m, all_lines(parse_sections(text)));
    return m;
}

namespace {

RouterConfig router_from_sections(const SectionedText& s)
{
    RouterConfig cfg;
    add_routes(cfg.routes, section(s, "routes"));
    add_neighbors(cfg.neighbors, section(s, "neighbors"));
    add_port_macs(cfg.port_macs, section(s, "ports"));
    return cfg;
}

} // namespace

RouterConfig parse_router_config(std::string_view text)
{
    const auto s = parse_sections(text);
    for (const auto& [name, lines] : s)
        if (name != "routes" && name != "neighbors" && name != "ports" && !lines.empty())
            fail(lines.front().line_no, "unexpected section '" + name + "'");
    return router_from_sections(s);
}

RouterConfig load_router_config(const std::filesystem::path& path)
{
    return parse_router_config(read_text_file(path));
}

namespace {

Bytes generate_frame(const std::map<std::string, std::string>& opt, std::size_t line)
{
    for (const auto& [k, v] : opt)
        if (k != "dst" && k != "src" && k != "type" && k != "size" && k != "fill")
            fail(line, "unknown gen option '" + k + "'");
    auto get = [&](const char* k, const char* dflt) {
        auto it = opt.find(k);
        return it == opt.end() ? std::string(dflt) : it->second;
    };
    const MacAddr dst = mac(get("dst", "ff:ff:ff:ff:ff:ff"), line);
    const MacAddr src = mac(get("src", "02:00:00:00:00:01"), line);
    const auto type = number<std::uint16_t>(get("type", "0x0800"), line);
    const auto size = number<std::size_t>(get("size", "64"), line);
    const auto fill = number<std::uint8_t>(get("fill", "0"), line);
    if (size < kMinFrameLen || size > kMaxFrameLen) fail(line, "gen size must be within 64..1518");
    const Bytes payload(size - kHeaderLen - kFcsLen, fill);
    return encode_frame(dst, src, type, payload, Pad::no);
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    const auto s = parse_sections(text);
    Scenario sc;

    std::string kind = "switch";
    SwitchConfig sw;
    double aging_s = 300.0;
    std::uint64_t unused_rate = 0;
    bool ports_given = false;
    for (const auto& l : section(s, "device")) {
        if (l.fields.size() == 2 && l.fields[0] == "kind") {
            kind = l.fields[1];
            continue;
        }
        if (l.fields.size() == 2 && l.fields[0] == "ports") ports_given = true;
        if (!apply_switch_key(sw, aging_s, unused_rate, l))
            fail(l.line_no, "unknown device setting '" + l.fields[0] + "'");
    }
    if (kind != "switch" && kind != "router") fail(0, "device kind must be switch or router");

    for (const auto& l : section(s, "sim")) {
        if (l.fields.size() != 2) fail(l.line_no, "expected key = value");
        const auto& k = l.fields[0];
        const auto& v = l.fields[1];
        if (k == "seed")
            sc.seed = number<std::uint64_t>(v, l.line_no);
        else if (k == "bit_times_per_tick")
            sc.config.bit_times_per_tick = number<std::uint32_t>(v, l.line_no);
        else if (k == "cut_through_bytes")
            sc.config.cut_through_bytes = number<std::size_t>(v, l.line_no);
        else if (k == "buffer_frames")
            sc.config.buffer_frames = number<std::size_t>(v, l.line_no);
        else
            fail(l.line_no, "unknown sim setting '" + k + "'");
    }

    const auto& link_lines = section(s, "links");
    if (!link_lines.empty()) {
        std::map<PortId, LinkModel> links;
        for (const auto& l : link_lines) {
            if (l.fields.size() < 2) fail(l.line_no, "link needs <port> <rate>");
            LinkModel lm;
            lm.rate_bps = parse_rate(l.fields[1]);
            for (const auto& [k, v] : options(l, 2)) {
                if (k != "ifg") fail(l.line_no, "unknown link option '" + k + "'");
                lm.ifg_bits = number<std::uint32_t>(v, l.line_no);
            }
            links[port(l.fields[0], l.line_no)] = lm;
        }
        sc.config.links.clear();
        for (const auto& [p, lm] : links) {
            if (p != sc.config.links.size()) fail(0, "link ports must be numbered 0..N-1");
            sc.config.links.push_back(lm);
        }
    } else {
        sc.config.links.assign(ports_given ? sw.port_count : 4, LinkModel{});
    }

    std::uint64_t fastest = 0;
    for (const auto& lm : sc.config.links) fastest = std::max(fastest, lm.rate_bps);

    if (kind == "switch") {
        if (!ports_given) sw.port_count = sc.config.links.size();
        sw.aging = aging_bit_times(aging_s, fastest);
        sc.config.device = sw;
    } else {
        sc.config.device = router_from_sections(s);
    }

    for (const auto& l : section(s, "schedule")) {
        if (l.fields.size() < 3) fail(l.line_no, "schedule line needs <time> <port> <hex|gen> ...");
        TimedFrame tf;
        tf.arrival_start = number<SimTime>(l.fields[0], l.line_no);
        tf.port = port(l.fields[1], l.line_no);
        std::size_t first_opt = 3;
        if (l.fields[2] == "hex") {
            if (l.fields.size() < 4) fail(l.line_no, "hex needs octets");
            std::string hex;
            for (char c : l.fields[3]) {
                hex += c;
                if (hex.size() % 3 == 2) hex += ' ';
            }
            auto frames = parse_hexdump(hex);
            if (frames.size() != 1) fail(l.line_no, "bad hex frame");
            tf.frame = std::move(frames.front());
            first_opt = 4;
        } else if (l.fields[2] != "gen") {
            fail(l.line_no, "frame source must be hex or gen");
        }
        auto opt = options(l, first_opt);
        if (auto it = opt.find("corrupt"); it != opt.end()) {
            if (it->second == "random")
                tf.corrupt_random = true;
            else
                tf.corrupt_bit = number<std::size_t>(it->second, l.line_no);
            opt.erase(it);
        }
        if (l.fields[2] == "gen")
            tf.frame = generate_frame(opt, l.line_no);
        else if (!opt.empty())
            fail(l.line_no, "unknown option '" + opt.begin()->first + "'");
        sc.schedule.push_back(std::move(tf));
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    return parse_scenario(read_text_file(path));
}

} // namespace ethpipe
