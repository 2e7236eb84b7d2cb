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
#include "ethpipe/header_parse.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ethpipe {

/// The fixed registry of extraction blocks a pipeline can be built from.
enum class StageKind { sfd_check, mac_extract, length_count, l3l4_parse, crc_check };

std::string_view to_string(StageKind k) noexcept;
std::optional<StageKind> stage_from_name(std::string_view name) noexcept;

struct StageId {
    std::string name;
    std::size_t index = 0;
    StageKind kind = StageKind::sfd_check;
};

struct TraceEntry {
    std::size_t stage = 0;
    std::uint64_t tick = 0;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// One frame in flight. Stage transforms fill `meta` progressively; a framing
/// problem is recorded in `fault` and the slot keeps flowing.
struct PipelineSlot {
    std::uint64_t id = 0;
    Bytes frame;
    ParsedPacket meta;
    std::optional<Errc> fault;
    std::uint64_t entry_tick = 0;
    std::uint64_t exit_tick = 0;
    std::vector<TraceEntry> trace;
};

/// Synchronous pipeline: one slot per stage, every occupied slot moves one
/// stage per tick.
class Pipeline {
public:
    static const std::vector<std::string>& default_stage_names();

    /// Throws Errc::unknown_stage or Errc::ordering_violation. crc_check must
    /// come last if present; mac_extract must precede l3l4_parse.
    static Pipeline build(std::span<const std::string> stage_names);
    static Pipeline build_default() { return build(default_stage_names()); }

    /// Accepted iff stage 0 is free this tick.
    bool inject(Bytes frame);

    /// Runs one clock: each slot executes the stage it occupies and moves on.
    /// Slots leaving the last stage are returned.
    std::vector<PipelineSlot> tick();

    std::size_t depth() const { return stages_.size(); }
    const std::vector<StageId>& stages() const { return stages_; }
    std::uint64_t current_tick() const { return tick_; }
    std::uint64_t injected() const { return injected_; }
    std::uint64_t completed() const { return completed_; }
    std::size_t in_flight() const;

private:
    explicit Pipeline(std::vector<StageId> stages);

    static void run_stage(StageKind kind, PipelineSlot& slot);

    std::vector<StageId> stages_;
    std::vector<std::optional<PipelineSlot>> slots_;
    std::uint64_t tick_ = 0;
    std::uint64_t injected_ = 0;
    std::uint64_t completed_ = 0;
};

} // namespace ethpipe
