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

#include "ethpipe/capture.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace ethpipe {

namespace {

class Reader {
public:
    Reader(ByteSpan b, bool swapped) : b_(b), swapped_(swapped) {}

    std::uint32_t u32(std::size_t off) const
    {
        std::uint32_t v;
        std::memcpy(&v, b_.data() + off, 4);
        return swapped_ ? byteswap32(v) : v;
    }
    std::uint16_t u16(std::size_t off) const
    {
        std::uint16_t v;
        std::memcpy(&v, b_.data() + off, 2);
        return swapped_ ? static_cast<std::uint16_t>((v >> 8) | (v << 8)) : v;
    }

    static std::uint32_t byteswap32(std::uint32_t v)
    {
        return (v >> 24) | ((v >> 8) & 0xFF00u) | ((v << 8) & 0xFF0000u) | (v << 24);
    }

private:
    ByteSpan b_;
    bool swapped_;
};

template <typename T>
void put(Bytes& out, T v)
{
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

} // namespace

std::vector<CaptureRecord> parse_capture(ByteSpan file)
{
    if (file.size() < kPcapGlobalHeaderLen) throw Error(Errc::truncated_record, "global header");
    std::uint32_t magic;
    std::memcpy(&magic, file.data(), 4);
    bool swapped;
    if (magic == kPcapMagic)
        swapped = false;
    else if (magic == Reader::byteswap32(kPcapMagic))
        swapped = true;
    else
        throw Error(Errc::bad_magic, std::to_string(magic));

    const Reader r(file, swapped);
    const std::uint32_t network = r.u32(20);
    if (network != kPcapLinkEthernet) throw Error(Errc::unsupported_link_type, std::to_string(network));

    std::vector<CaptureRecord> out;
    std::size_t off = kPcapGlobalHeaderLen;
    while (off < file.size()) {
        if (file.size() - off < kPcapRecordHeaderLen)
            throw Error(Errc::truncated_record, "record header at offset " + std::to_string(off));
        CaptureRecord rec;
        rec.ts_sec = r.u32(off);
        rec.ts_usec = r.u32(off + 4);
        const std::uint32_t incl = r.u32(off + 8);
        rec.orig_len = r.u32(off + 12);
        off += kPcapRecordHeaderLen;
        if (file.size() - off < incl)
            throw Error(Errc::truncated_record,
                        "record declares " + std::to_string(incl) + " bytes, " + std::to_string(file.size() - off) + " remain");
        rec.data.assign(file.begin() + static_cast<std::ptrdiff_t>(off),
                        file.begin() + static_cast<std::ptrdiff_t>(off + incl));
        off += incl;
        rec.fcs_present = rec.data.size() >= 5 && fcs_verify(rec.data) == FcsVerdict::ok;
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<CaptureRecord> read_capture(const std::filesystem::path& path)
{
    return parse_capture(read_file_bytes(path));
}

Bytes serialize_capture(std::span<const CaptureRecord> records, std::uint32_t snaplen)
{
    Bytes out;
    put<std::uint32_t>(out, kPcapMagic);
    put<std::uint16_t>(out, 2);
    put<std::uint16_t>(out, 4);
    put<std::int32_t>(out, 0);
    put<std::uint32_t>(out, 0);
    put<std::uint32_t>(out, snaplen);
    put<std::uint32_t>(out, kPcapLinkEthernet);
    for (const auto& rec : records) {
        const auto incl = static_cast<std::uint32_t>(rec.data.size());
        put<std::uint32_t>(out, rec.ts_sec);
        put<std::uint32_t>(out, rec.ts_usec);
        put<std::uint32_t>(out, incl);
        put<std::uint32_t>(out, std::max(rec.orig_len, incl));
        out.insert(out.end(), rec.data.begin(), rec.data.end());
    }
    return out;
}

void write_capture(const std::filesystem::path& path, std::span<const CaptureRecord> records, std::uint32_t snaplen)
{
    write_file_bytes(path, serialize_capture(records, snaplen));
}

Bytes read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, ByteSpan data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_failure, "cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::io_failure, "write failed: " + path.string());
}

} // namespace ethpipe
