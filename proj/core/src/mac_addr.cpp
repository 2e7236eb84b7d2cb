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

#include "ethpipe/mac_addr.hpp"

#include <algorithm>
#include <charconv>

namespace ethpipe {

MacAddr MacAddr::from_bytes(ByteSpan b, std::size_t off)
{
    Octets o{};
    std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off), 6, o.begin());
    return MacAddr(o);
}

std::optional<MacAddr> MacAddr::parse(std::string_view text)
{
    if (text.size() != 17) return std::nullopt;
    Octets o{};
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t pos = i * 3;
        if (i != 0 && text[pos - 1] != ':' && text[pos - 1] != '-') return std::nullopt;
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + 2, v, 16);
        if (ec != std::errc{} || ptr != text.data() + pos + 2) return std::nullopt;
        o[i] = static_cast<std::uint8_t>(v);
    }
    return MacAddr(o);
}

void MacAddr::write_to(std::span<std::uint8_t> b, std::size_t off) const
{
    std::copy(octets_.begin(), octets_.end(), b.begin() + static_cast<std::ptrdiff_t>(off));
}

std::string MacAddr::to_string() const
{
    return to_hex(octets_, ':');
}

} // namespace ethpipe
