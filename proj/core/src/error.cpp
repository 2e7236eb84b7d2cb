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

#include "ethpipe/error.hpp"

namespace ethpipe {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::frame_too_short: return "FrameTooShort";
    case Errc::frame_too_long: return "FrameTooLong";
    case Errc::payload_too_short: return "PayloadTooShort";
    case Errc::payload_too_long: return "PayloadTooLong";
    case Errc::input_too_short: return "InputTooShort";
    case Errc::ip_too_short: return "TooShort";
    case Errc::bad_version: return "BadVersion";
    case Errc::bad_ihl: return "BadIhl";
    case Errc::bad_total_length: return "BadTotalLength";
    case Errc::bad_length: return "BadLength";
    case Errc::ttl_already_zero: return "TtlAlreadyZero";
    case Errc::unknown_stage: return "UnknownStage";
    case Errc::ordering_violation: return "OrderingViolation";
    case Errc::refuse_broadcast_source: return "RefuseBroadcastSource";
    case Errc::dirty_prefix: return "DirtyPrefix";
    case Errc::schedule_overlap: return "ScheduleOverlap";
    case Errc::unknown_port: return "UnknownPort";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::bad_magic: return "BadMagic";
    case Errc::unsupported_link_type: return "UnsupportedLinkType";
    case Errc::truncated_record: return "TruncatedRecord";
    case Errc::io_failure: return "IoFailure";
    case Errc::bad_hex_token: return "BadHexToken";
    case Errc::bad_config: return "BadConfig";
    }
    return "Unknown";
}

Error::Error(Errc code)
    : std::runtime_error(std::string(to_string(code)))
    , code_(code)
{
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail)
    , code_(code)
{
}

} // namespace ethpipe
