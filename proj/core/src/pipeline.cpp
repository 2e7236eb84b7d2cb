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

#include "ethpipe/pipeline.hpp"

#include "ethpipe/frame_codec.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace ethpipe {

namespace {

constexpr std::array<std::pair<StageKind, std::string_view>, 5> kRegistry{{
    {StageKind::sfd_check, "sfd_check"},
    {StageKind::mac_extract, "mac_extract"},
    {StageKind::length_count, "length_count"},
    {StageKind::l3l4_parse, "l3l4_parse"},
    {StageKind::crc_check, "crc_check"},
}};

} // namespace

std::string_view to_string(StageKind k) noexcept
{
    for (const auto& [kind, name] : kRegistry)
        if (kind == k) return name;
    return "unknown";
}

std::optional<StageKind> stage_from_name(std::string_view name) noexcept
{
    for (const auto& [kind, n] : kRegistry)
        if (n == name) return kind;
    return std::nullopt;
}

const std::vector<std::string>& Pipeline::default_stage_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& entry : kRegistry) v.emplace_back(entry.second);
        return v;
    }();
    return names;
}

Pipeline Pipeline::build(std::span<const std::string> names)
{
    if (names.empty()) throw Error(Errc::unknown_stage, "empty stage list");
    std::vector<StageId> stages;
    std::set<StageKind> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto kind = stage_from_name(names[i]);
        if (!kind) throw Error(Errc::unknown_stage, names[i]);
        if (!seen.insert(*kind).second) throw Error(Errc::ordering_violation, "duplicate " + names[i]);
        stages.push_back({names[i], i, *kind});
    }

    auto position = [&](StageKind k) -> std::optional<std::size_t> {
        for (const auto& s : stages)
            if (s.kind == k) return s.index;
        return std::nullopt;
    };
    if (auto crc = position(StageKind::crc_check); crc && *crc != stages.size() - 1)
        throw Error(Errc::ordering_violation, "crc_check must be last");
    if (auto l3 = position(StageKind::l3l4_parse)) {
        auto mac = position(StageKind::mac_extract);
        if (!mac || *mac > *l3) throw Error(Errc::ordering_violation, "mac_extract must precede l3l4_parse");
    }
    return Pipeline(std::move(stages));
}

Pipeline::Pipeline(std::vector<StageId> stages)
    : stages_(std::move(stages))
    , slots_(stages_.size())
{
}

bool Pipeline::inject(Bytes frame)
{
    if (slots_[0]) return false;
    PipelineSlot slot;
    slot.id = injected_++;
    slot.frame = std::move(frame);
    slot.entry_tick = tick_;
    slots_[0] = std::move(slot);
    return true;
}

std::vector<PipelineSlot> Pipeline::tick()
{
    std::vector<PipelineSlot> done;
    // Walk back to front so every slot lands in the register its successor
    // just vacated.
    for (std::size_t i = slots_.size(); i-- > 0;) {
        if (!slots_[i]) continue;
        PipelineSlot& slot = *slots_[i];
        run_stage(stages_[i].kind, slot);
        slot.trace.push_back({i, tick_});
        if (i + 1 == slots_.size()) {
            slot.exit_tick = tick_ + 1;
            done.push_back(std::move(slot));
            ++completed_;
        } else {
            slots_[i + 1] = std::move(slot);
        }
        slots_[i].reset();
    }
    ++tick_;
    return done;
}

std::size_t Pipeline::in_flight() const
{
    return static_cast<std::size_t>(std::count_if(slots_.begin(), slots_.end(),
                                                  [](const auto& s) { return s.has_value(); }));
}

void Pipeline::run_stage(StageKind kind, PipelineSlot& slot)
{
    const ByteSpan f = slot.frame;
    switch (kind) {
    case StageKind::sfd_check:
        if (f.size() < kMinFrameLen)
            slot.fault = Errc::frame_too_short;
        else if (f.size() > kMaxFrameLen)
            slot.fault = Errc::frame_too_long;
        break;
    case StageKind::mac_extract:
        if (f.size() < kHeaderLen) {
            slot.fault = Errc::frame_too_short;
            break;
        }
        slot.meta.dst_mac = MacAddr::from_bytes(f, 0);
        slot.meta.src_mac = MacAddr::from_bytes(f, 6);
        slot.meta.l2 = classify_l2(load_be16(f, 12));
        break;
    case StageKind::length_count:
        slot.meta.frame_len = f.size();
        break;
    case StageKind::l3l4_parse:
        if (slot.fault || f.size() < kHeaderLen + kFcsLen) break;
        if (slot.meta.l2.kind == L2Kind::ethernet_ii && slot.meta.l2.value == kEtherTypeIpv4)
            std::tie(slot.meta.ip, slot.meta.l4) =
                parse_l3l4(f.subspan(kHeaderLen, f.size() - kHeaderLen - kFcsLen));
        break;
    case StageKind::crc_check:
        if (f.size() >= 5) slot.meta.fcs_verdict = fcs_verify(f);
        break;
    }
}

} // namespace ethpipe
