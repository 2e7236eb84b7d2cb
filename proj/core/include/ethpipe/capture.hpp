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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ethpipe {

/// Classic microsecond pcap, link type 1 (Ethernet).
inline constexpr std::uint32_t kPcapMagic = 0xA1B2C3D4u;
inline constexpr std::uint32_t kPcapLinkEthernet = 1;
inline constexpr std::size_t kPcapGlobalHeaderLen = 24;
inline constexpr std::size_t kPcapRecordHeaderLen = 16;

struct CaptureRecord {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::uint32_t orig_len = 0; ///< raised to data.size() on write if smaller
    Bytes data;
    /// Set on read when the trailing four bytes verify as an FCS. Most
    /// captures strip it, so consumers recompute when this is false.
    bool fcs_present = false;

    friend bool operator==(const CaptureRecord& a, const CaptureRecord& b)
    {
        return a.ts_sec == b.ts_sec && a.ts_usec == b.ts_usec && a.orig_len == b.orig_len && a.data == b.data;
    }
};

/// Throws Errc::bad_magic, Errc::unsupported_link_type, Errc::truncated_record.
std::vector<CaptureRecord> parse_capture(ByteSpan file);
/// As parse_capture; Errc::io_failure if the file cannot be read.
std::vector<CaptureRecord> read_capture(const std::filesystem::path& path);

/// Host byte order, version 2.4, link type 1.
Bytes serialize_capture(std::span<const CaptureRecord> records, std::uint32_t snaplen = 65535);
void write_capture(const std::filesystem::path& path, std::span<const CaptureRecord> records,
                   std::uint32_t snaplen = 65535);

Bytes read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, ByteSpan data);

} // namespace ethpipe
