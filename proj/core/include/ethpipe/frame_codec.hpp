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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ethpipe {

inline constexpr std::size_t kHeaderLen = 14;
inline constexpr std::size_t kFcsLen = 4;
inline constexpr std::size_t kMinPayload = 46;
inline constexpr std::size_t kMaxPayload = 1500;
inline constexpr std::size_t kMinFrameLen = kHeaderLen + kMinPayload + kFcsLen; // 64
inline constexpr std::size_t kMaxFrameLen = kHeaderLen + kMaxPayload + kFcsLen; // 1518

inline constexpr std::size_t kPreambleBits = 62;
inline constexpr std::size_t kSfdBits = 2;
inline constexpr std::size_t kPreambleBytes = (kPreambleBits + kSfdBits) / 8;
inline constexpr std::size_t kIfgBits = 96;

struct Frame {
    MacAddr dst;
    MacAddr src;
    std::uint16_t length_type = 0;
    Bytes payload;
    std::uint32_t fcs = 0;

    std::size_t wire_length() const { return kHeaderLen + payload.size() + kFcsLen; }

    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Slices a full frame (FCS included, no preamble) at the fixed field
/// offsets. The FCS is read but not checked.
Frame decode_frame(ByteSpan raw);

enum class Pad : bool { no = false, yes = true };

/// Serializes the header and payload and appends the computed FCS.
Bytes encode_frame(const MacAddr& dst, const MacAddr& src, std::uint16_t length_type,
                   ByteSpan payload, Pad pad);

// --- wire-level bit stream ---------------------------------------------------

/// One symbol time on the line. `idle` is absence of carrier.
enum class WireSymbol : std::uint8_t { zero, one, idle };
using BitStream = std::vector<WireSymbol>;

/// Appends 62 alternating preamble bits, the "11" SFD, then the frame octets
/// least-significant bit first.
void append_wire_frame(BitStream& out, ByteSpan frame);
void append_idle(BitStream& out, std::size_t bit_times);

struct RecoveredFrame {
    Bytes bytes;
    std::size_t bit_offset = 0; ///< stream index of the first bit after the SFD
};

enum class SyncFault { ifg_short, runt, no_sfd };
std::string_view to_string(SyncFault f) noexcept;

struct SyncViolation {
    std::size_t frame_index = 0;
    SyncFault reason = SyncFault::ifg_short;

    friend bool operator==(const SyncViolation&, const SyncViolation&) = default;
};

struct SyncReport {
    std::vector<RecoveredFrame> frames;
    std::vector<std::size_t> gaps; ///< idle bit-times before frames[1..]
    std::vector<SyncViolation> violations;
};

/// Recovers frames from a tri-state symbol stream.
///
/// Each carrier burst is scanned for at least 62 alternating bits followed by
/// "11". Bits after the SFD are packed LSB-first into octets until carrier
/// drops. A burst that ends mid-octet is reported as a runt and discarded; a
/// burst with no SFD is reported as no_sfd. Violations are indexed by the
/// frame they precede (or, for ifg_short, the frame whose leading gap is
/// short). The gap for frame i>0 is the idle run immediately preceding its
/// carrier burst.
SyncReport sync_bitstream(std::span<const WireSymbol> stream);

} // namespace ethpipe
