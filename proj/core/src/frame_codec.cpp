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

#include "ethpipe/frame_codec.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"

#include <algorithm>
#include <string>

namespace ethpipe {

Frame decode_frame(ByteSpan raw)
{
    if (raw.size() < kMinFrameLen)
        throw Error(Errc::frame_too_short, std::to_string(raw.size()) + " bytes");
    if (raw.size() > kMaxFrameLen)
        throw Error(Errc::frame_too_long, std::to_string(raw.size()) + " bytes");

    Frame f;
    f.dst = MacAddr::from_bytes(raw, 0);
    f.src = MacAddr::from_bytes(raw, 6);
    f.length_type = load_be16(raw, 12);
    const auto payload = raw.subspan(kHeaderLen, raw.size() - kHeaderLen - kFcsLen);
    f.payload.assign(payload.begin(), payload.end());
    f.fcs = read_fcs(raw);
    return f;
}

Bytes encode_frame(const MacAddr& dst, const MacAddr& src, std::uint16_t length_type,
                   ByteSpan payload, Pad pad)
{
    if (payload.size() > kMaxPayload)
        throw Error(Errc::payload_too_long, std::to_string(payload.size()) + " bytes");
    if (payload.size() < kMinPayload && pad == Pad::no)
        throw Error(Errc::payload_too_short, std::to_string(payload.size()) + " bytes");

    const std::size_t body = std::max(payload.size(), kMinPayload);
    Bytes out(kHeaderLen + body, 0);
    dst.write_to(out, 0);
    src.write_to(out, 6);
    store_be16(out, 12, length_type);
    std::copy(payload.begin(), payload.end(), out.begin() + kHeaderLen);
    append_fcs(out, crc32_compute(out));
    return out;
}

std::string_view to_string(SyncFault f) noexcept
{
    switch (f) {
    case SyncFault::ifg_short: return "ifg_short";
    case SyncFault::runt: return "runt";
    case SyncFault::no_sfd: return "no_sfd";
    }
    return "unknown";
}

void append_wire_frame(BitStream& out, ByteSpan frame)
{
    out.reserve(out.size() + kPreambleBits + kSfdBits + frame.size() * 8);
    for (std::size_t i = 0; i < kPreambleBits; ++i)
        out.push_back(i % 2 == 0 ? WireSymbol::one : WireSymbol::zero);
    out.push_back(WireSymbol::one);
    out.push_back(WireSymbol::one);
    for (auto byte : frame)
        for (int bit = 0; bit < 8; ++bit)
            out.push_back(((byte >> bit) & 1) ? WireSymbol::one : WireSymbol::zero);
}

void append_idle(BitStream& out, std::size_t bit_times)
{
    out.insert(out.end(), bit_times, WireSymbol::idle);
}

namespace {

// Index just past the SFD within [begin, end), or end if none.
std::size_t find_sfd(std::span<const WireSymbol> s, std::size_t begin, std::size_t end)
{
    std::size_t run = 0; // alternating run ending at the previous symbol
    for (std::size_t j = begin; j < end; ++j) {
        const bool have_prev = j > begin;
        if (have_prev && s[j] == WireSymbol::one && s[j - 1] == WireSymbol::one) {
            // run covers the preamble plus the first SFD bit.
            if (run >= kPreambleBits + 1) return j + 1;
        }
        run = (have_prev && s[j] != s[j - 1]) ? run + 1 : 1;
    }
    return end;
}

} // namespace

SyncReport sync_bitstream(std::span<const WireSymbol> s)
{
    SyncReport report;
    std::size_t i = 0;
    std::size_t idle_run = 0;

    while (i < s.size()) {
        if (s[i] == WireSymbol::idle) {
            ++idle_run;
            ++i;
            continue;
        }
        const std::size_t burst_begin = i;
        while (i < s.size() && s[i] != WireSymbol::idle) ++i;
        const std::size_t burst_end = i;
        const std::size_t gap_before = idle_run;
        idle_run = 0;

        const std::size_t data_begin = find_sfd(s, burst_begin, burst_end);
        if (data_begin == burst_end) {
            report.violations.push_back({report.frames.size(), SyncFault::no_sfd});
            continue;
        }
        const std::size_t nbits = burst_end - data_begin;
        if (nbits == 0 || nbits % 8 != 0) {
            report.violations.push_back({report.frames.size(), SyncFault::runt});
            continue;
        }

        RecoveredFrame rf;
        rf.bit_offset = data_begin;
        rf.bytes.resize(nbits / 8, 0);
        for (std::size_t k = 0; k < nbits; ++k)
            if (s[data_begin + k] == WireSymbol::one)
                rf.bytes[k / 8] = static_cast<std::uint8_t>(rf.bytes[k / 8] | (1u << (k % 8)));

        if (!report.frames.empty()) {
            report.gaps.push_back(gap_before);
            if (gap_before < kIfgBits)
                report.violations.push_back({report.frames.size(), SyncFault::ifg_short});
        }
        report.frames.push_back(std::move(rf));
    }
    return report;
}

} // namespace ethpipe
