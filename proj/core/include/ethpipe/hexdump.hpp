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
#include "ethpipe/error.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ethpipe {

/// Errc::bad_hex_token with a 1-based position.
class HexTokenError : public Error {
public:
    HexTokenError(std::size_t line, std::size_t column, std::string_view token);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Whitespace-separated two-digit hex octets; a blank line ends a frame and
/// `#` starts a comment that runs to end of line.
std::vector<Bytes> parse_hexdump(std::string_view text);
std::vector<Bytes> read_hexdump(const std::filesystem::path& path);

std::string format_hexdump(std::span<const Bytes> frames, std::size_t octets_per_line = 16);

/// A frame with the ingress port and arrival time used by the switch and
/// route replays.
struct TraceFrame {
    Bytes frame;
    PortId port = 0;
    BitTime time = 0;
};

/// Hex dump with optional `#@ port=N time=T` comment directives applying to
/// the frame that follows. Without a time, a frame arrives one wire time plus
/// the minimum gap after its predecessor. Plain hex dumps parse unchanged
/// with every frame on port 0.
std::vector<TraceFrame> parse_trace(std::string_view text);
std::vector<TraceFrame> read_trace(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

} // namespace ethpipe
