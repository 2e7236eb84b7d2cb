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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ethpipe {

/// Every failure the library reports by exception carries one of these codes.
enum class Errc {
    // frame_codec
    frame_too_short,
    frame_too_long,
    payload_too_short,
    payload_too_long,
    // fcs32
    input_too_short,
    // header_parse
    ip_too_short,
    bad_version,
    bad_ihl,
    bad_total_length,
    bad_length,
    ttl_already_zero,
    // pipeline
    unknown_stage,
    ordering_violation,
    // switch_engine
    refuse_broadcast_source,
    // router_engine
    dirty_prefix,
    // fabric_sim
    schedule_overlap,
    unknown_port,
    index_out_of_range,
    // tool_io
    bad_magic,
    unsupported_link_type,
    truncated_record,
    io_failure,
    bad_hex_token,
    bad_config,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    explicit Error(Errc code);
    Error(Errc code, const std::string& detail);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace ethpipe
