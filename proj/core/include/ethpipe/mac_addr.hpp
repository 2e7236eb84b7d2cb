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
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ethpipe {

/// 48-bit Ethernet address, octets in transmission order.
class MacAddr {
public:
    using Octets = std::array<std::uint8_t, 6>;

    constexpr MacAddr() = default;
    constexpr explicit MacAddr(const Octets& octets) : octets_(octets) {}

    /// Reads six octets starting at `off`.
    static MacAddr from_bytes(ByteSpan b, std::size_t off = 0);
    static constexpr MacAddr from_u64(std::uint64_t v)
    {
        Octets o{};
        for (int i = 5; i >= 0; --i) {
            o[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xFF);
            v >>= 8;
        }
        return MacAddr(o);
    }
    static constexpr MacAddr broadcast() { return MacAddr({0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF}); }

    /// Accepts "aa:bb:cc:dd:ee:ff" or "aa-bb-cc-dd-ee-ff".
    static std::optional<MacAddr> parse(std::string_view text);

    constexpr const Octets& octets() const { return octets_; }
    constexpr bool is_broadcast() const
    {
        for (auto o : octets_)
            if (o != 0xFF) return false;
        return true;
    }
    constexpr bool is_multicast() const { return (octets_[0] & 0x01) != 0; }

    constexpr std::uint64_t to_u64() const
    {
        std::uint64_t v = 0;
        for (auto o : octets_) v = (v << 8) | o;
        return v;
    }

    void write_to(std::span<std::uint8_t> b, std::size_t off) const;
    std::string to_string() const;

    friend constexpr auto operator<=>(const MacAddr&, const MacAddr&) = default;

private:
    Octets octets_{};
};

} // namespace ethpipe

template <>
struct std::hash<ethpipe::MacAddr> {
    std::size_t operator()(const ethpipe::MacAddr& m) const noexcept
    {
        return std::hash<std::uint64_t>{}(m.to_u64());
    }
};
