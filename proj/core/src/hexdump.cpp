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

#include "ethpipe/hexdump.hpp"

#include "ethpipe/fabric_sim.hpp"
#include "ethpipe/frame_codec.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace ethpipe {

HexTokenError::HexTokenError(std::size_t line, std::size_t column, std::string_view token)
    : Error(Errc::bad_hex_token,
            "line " + std::to_string(line) + " column " + std::to_string(column) + ": '" + std::string(token) + "'")
    , line_(line)
    , column_(column)
{
}

namespace {

struct Directive {
    std::optional<PortId> port;
    std::optional<BitTime> time;
};

std::optional<Directive> parse_directive(std::string_view comment, std::size_t line)
{
    // comment starts just after '#'
    if (comment.empty() || comment.front() != '@') return std::nullopt;
    Directive d;
    std::istringstream in{std::string(comment.substr(1))};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        const auto key = tok.substr(0, eq);
        std::uint64_t v = 0;
        const char* b = tok.data() + eq + 1;
        const char* e = tok.data() + tok.size();
        if (eq == std::string::npos || std::from_chars(b, e, v).ptr != e)
            throw Error(Errc::bad_config, "line " + std::to_string(line) + ": bad directive '" + tok + "'");
        if (key == "port")
            d.port = static_cast<PortId>(v);
        else if (key == "time")
            d.time = v;
        else
            throw Error(Errc::bad_config, "line " + std::to_string(line) + ": unknown directive '" + key + "'");
    }
    return d;
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Frames plus the directive in force when each one started.
std::vector<std::pair<Bytes, Directive>> parse_annotated(std::string_view text)
{
    std::vector<std::pair<Bytes, Directive>> frames;
    Bytes current;
    Directive pending;
    bool in_frame = false;

    auto flush = [&] {
        if (in_frame) frames.emplace_back(std::move(current), pending);
        current.clear();
        pending = {};
        in_frame = false;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, nl - pos);
        ++line_no;
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::string_view data = line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            if (auto d = parse_directive(line.substr(hash + 1), line_no)) {
                if (in_frame) flush();
                if (d->port) pending.port = d->port;
                if (d->time) pending.time = d->time;
            }
            data = line.substr(0, hash);
        }

        const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
        if (blank) {
            flush();
            continue;
        }

        std::size_t i = 0;
        while (i < data.size()) {
            if (data[i] == ' ' || data[i] == '\t') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < data.size() && data[j] != ' ' && data[j] != '\t') ++j;
            const auto tok = data.substr(i, j - i);
            const int hi = tok.size() == 2 ? hex_value(tok[0]) : -1;
            const int lo = tok.size() == 2 ? hex_value(tok[1]) : -1;
            if (hi < 0 || lo < 0) throw HexTokenError(line_no, i + 1, tok);
            current.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
            in_frame = true;
            i = j;
        }
        if (nl == text.size()) break;
    }
    flush();
    return frames;
}

} // namespace

std::vector<Bytes> parse_hexdump(std::string_view text)
{
    std::vector<Bytes> out;
    for (auto& [bytes, d] : parse_annotated(text)) out.push_back(std::move(bytes));
    return out;
}

std::vector<Bytes> read_hexdump(const std::filesystem::path& path)
{
    return parse_hexdump(read_text_file(path));
}

std::string format_hexdump(std::span<const Bytes> frames, std::size_t per_line)
{
    std::string out;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        if (f) out += '\n';
        const auto& b = frames[f];
        for (std::size_t i = 0; i < b.size(); i += per_line) {
            out += to_hex(ByteSpan(b).subspan(i, std::min(per_line, b.size() - i)));
            out += '\n';
        }
    }
    return out;
}

std::vector<TraceFrame> parse_trace(std::string_view text)
{
    std::vector<TraceFrame> out;
    PortId port = 0;
    BitTime next_time = 0;
    for (auto& [bytes, d] : parse_annotated(text)) {
        if (d.port) port = *d.port;
        const BitTime t = d.time ? *d.time : next_time;
        next_time = t + wire_bits(bytes.size()) + kIfgBits;
        out.push_back({std::move(bytes), port, t});
    }
    return out;
}

std::vector<TraceFrame> read_trace(const std::filesystem::path& path)
{
    return parse_trace(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace ethpipe
