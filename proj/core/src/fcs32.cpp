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

#include "ethpipe/fcs32.hpp"

#include "ethpipe/error.hpp"

namespace ethpipe {

std::string_view to_string(FcsVerdict v) noexcept
{
    switch (v) {
    case FcsVerdict::ok: return "ok";
    case FcsVerdict::bad: return "bad";
    case FcsVerdict::unchecked: return "unchecked";
    }
    return "unknown";
}

Crc32Value crc32_compute(ByteSpan data)
{
    Crc32Register r;
    r.update(data);
    return r.value();
}

namespace {

std::uint32_t reverse_bits(std::uint32_t v, int width)
{
    std::uint32_t out = 0;
    for (int i = 0; i < width; ++i) {
        out = (out << 1) | (v & 1u);
        v >>= 1;
    }
    return out;
}

} // namespace

Crc32Value crc32_bitwise_oracle(ByteSpan data)
{
    // Non-reflected division: feed each octet LSB first (as it leaves the
    // wire) into an MSB-first LFSR, then bit-reverse the remainder.
    constexpr std::uint32_t poly = 0x04C11DB7u;
    std::uint32_t reg = 0xFFFFFFFFu;
    for (auto byte : data) {
        for (int bit = 0; bit < 8; ++bit) {
            const std::uint32_t in = (byte >> bit) & 1u;
            const std::uint32_t top = reg >> 31;
            reg <<= 1;
            if (top ^ in) reg ^= poly;
        }
    }
    return {reverse_bits(reg, 32) ^ 0xFFFFFFFFu};
}

void append_fcs(Bytes& frame, Crc32Value crc)
{
    for (int i = 0; i < 4; ++i) frame.push_back(static_cast<std::uint8_t>(crc.value >> (8 * i)));
}

std::uint32_t read_fcs(ByteSpan f)
{
    const std::size_t n = f.size();
    return std::uint32_t{f[n - 4]} | (std::uint32_t{f[n - 3]} << 8) |
           (std::uint32_t{f[n - 2]} << 16) | (std::uint32_t{f[n - 1]} << 24);
}

FcsVerdict fcs_verify(ByteSpan f)
{
    if (f.size() < 5) throw Error(Errc::input_too_short, "need at least 5 bytes");
    const auto computed = crc32_compute(f.first(f.size() - 4));
    return computed.value == read_fcs(f) ? FcsVerdict::ok : FcsVerdict::bad;
}

FcsVerdict fcs_verify_residue(ByteSpan f)
{
    if (f.size() < 5) throw Error(Errc::input_too_short, "need at least 5 bytes");
    Crc32Register r;
    r.update(f);
    return r.raw() == kFcsResidue ? FcsVerdict::ok : FcsVerdict::bad;
}

} // namespace ethpipe
