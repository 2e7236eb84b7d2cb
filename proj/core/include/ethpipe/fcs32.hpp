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

#include <array>
#include <compare>
#include <cstdint>

namespace ethpipe {

/// IEEE 802.3 CRC-32: poly 0x04C11DB7, reflected in/out, init and xorout 0xFFFFFFFF.
struct Crc32Value {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(const Crc32Value&, const Crc32Value&) = default;
};

enum class FcsVerdict { ok, bad, unchecked };

std::string_view to_string(FcsVerdict v) noexcept;

namespace detail {

inline constexpr std::uint32_t kReflectedPoly = 0xEDB88320u;

constexpr std::array<std::uint32_t, 256> make_crc32_table()
{
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1u) ? (c >> 1) ^ kReflectedPoly : c >> 1;
        t[i] = c;
    }
    return t;
}

inline constexpr auto kCrc32Table = make_crc32_table();

} // namespace detail

/// Streaming CRC register. `raw()` is the shift register before the final XOR.
class Crc32Register {
public:
    constexpr void update(ByteSpan data)
    {
        for (auto b : data) reg_ = detail::kCrc32Table[(reg_ ^ b) & 0xFFu] ^ (reg_ >> 8);
    }
    constexpr void update(std::uint8_t b)
    {
        reg_ = detail::kCrc32Table[(reg_ ^ b) & 0xFFu] ^ (reg_ >> 8);
    }
    constexpr std::uint32_t raw() const { return reg_; }
    constexpr Crc32Value value() const { return {reg_ ^ 0xFFFFFFFFu}; }

private:
    std::uint32_t reg_ = 0xFFFFFFFFu;
};

namespace detail {

constexpr std::uint32_t compute_residue()
{
    // The FCS of an empty message is zero, so consuming four zero bytes
    // from the initial state lands on the residue shared by every valid frame.
    Crc32Register r;
    for (int i = 0; i < 4; ++i) r.update(std::uint8_t{0});
    return r.raw();
}

} // namespace detail

/// Raw register value after consuming any message followed by its own FCS.
inline constexpr std::uint32_t kFcsResidue = detail::compute_residue();

Crc32Value crc32_compute(ByteSpan data);

/// Bit-serial GF(2) long division. Slow; reference for tests only.
Crc32Value crc32_bitwise_oracle(ByteSpan data);

/// Least-significant byte first.
void append_fcs(Bytes& frame, Crc32Value crc);
std::uint32_t read_fcs(ByteSpan frame_with_fcs);

/// Compares the trailing FCS against a recomputation over the preceding bytes.
/// Throws Errc::input_too_short when fewer than five bytes are given.
FcsVerdict fcs_verify(ByteSpan frame_with_fcs);

/// Same verdict, reached by running the FCS bytes through the register and
/// checking for kFcsResidue.
FcsVerdict fcs_verify_residue(ByteSpan frame_with_fcs);

} // namespace ethpipe
