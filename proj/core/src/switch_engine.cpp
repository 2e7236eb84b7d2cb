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

#include "ethpipe/switch_engine.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"
#include "ethpipe/frame_codec.hpp"

#include <algorithm>
#include <string>

namespace ethpipe {

std::string_view to_string(SwitchMode m) noexcept
{
    return m == SwitchMode::store_forward ? "sf" : "ct";
}

std::string_view to_string(ActionKind k) noexcept
{
    switch (k) {
    case ActionKind::unicast: return "unicast";
    case ActionKind::flood: return "flood";
    case ActionKind::discard: return "discard";
    }
    return "unknown";
}

std::string_view to_string(DiscardReason r) noexcept
{
    switch (r) {
    case DiscardReason::same_segment: return "same_segment";
    case DiscardReason::crc_error: return "crc_error";
    case DiscardReason::malformed: return "malformed";
    }
    return "unknown";
}

std::string_view to_string(SwitchPolicy p) noexcept
{
    switch (p) {
    case SwitchPolicy::store_forward: return "sf";
    case SwitchPolicy::cut_through: return "ct";
    case SwitchPolicy::hybrid: return "hybrid";
    }
    return "unknown";
}

// --- MacTable -----------------------------------------------------------------

void MacTable::learn(const MacAddr& src, PortId ingress, BitTime now)
{
    if (src.is_broadcast()) throw Error(Errc::refuse_broadcast_source, src.to_string());
    entries_[src] = MacTableEntry{src, ingress, now};
}

std::optional<PortId> MacTable::lookup(const MacAddr& dst, BitTime now) const
{
    auto it = entries_.find(dst);
    if (it == entries_.end()) return std::nullopt;
    const auto& e = it->second;
    if (now >= e.learned_at && now - e.learned_at > aging_limit_) return std::nullopt;
    return e.port;
}

std::vector<MacTableEntry> MacTable::entries() const
{
    std::vector<MacTableEntry> out;
    out.reserve(entries_.size());
    for (const auto& [mac, e] : entries_) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mac < b.mac; });
    return out;
}

// --- HybridState --------------------------------------------------------------

HybridState::HybridState(HybridConfig cfg) : cfg_(cfg) {}

double HybridState::bad_fraction() const
{
    return static_cast<double>(bad_) / static_cast<double>(cfg_.window);
}

SwitchMode HybridState::update(bool crc_ok)
{
    window_.push_back(!crc_ok);
    if (!crc_ok) ++bad_;
    if (window_.size() > cfg_.window) {
        if (window_.front()) --bad_;
        window_.pop_front();
    }
    const double f = bad_fraction();
    if (mode_ == SwitchMode::cut_through && f > cfg_.enter_sf_threshold)
        mode_ = SwitchMode::store_forward;
    else if (mode_ == SwitchMode::store_forward && f < cfg_.exit_sf_threshold)
        mode_ = SwitchMode::cut_through;
    return mode_;
}

// --- Switch -------------------------------------------------------------------

Switch::Switch(SwitchConfig cfg)
    : cfg_(cfg)
    , table_(cfg.aging)
    , hybrid_(cfg.hybrid)
    , counters_(cfg.port_count)
{
    if (cfg_.port_count < 2) throw Error(Errc::bad_config, "switch needs at least two ports");
    if (cfg_.hybrid.window == 0) throw Error(Errc::bad_config, "hybrid window must be positive");
    if (!(cfg_.hybrid.enter_sf_threshold > cfg_.hybrid.exit_sf_threshold))
        throw Error(Errc::bad_config, "enter threshold must exceed exit threshold");
}

SwitchMode Switch::current_mode() const
{
    switch (cfg_.policy) {
    case SwitchPolicy::store_forward: return SwitchMode::store_forward;
    case SwitchPolicy::cut_through: return SwitchMode::cut_through;
    case SwitchPolicy::hybrid: return hybrid_.mode();
    }
    return SwitchMode::store_forward;
}

ForwardAction Switch::decide(const MacAddr& dst, PortId ingress, BitTime now, SwitchMode mode) const
{
    ForwardAction a;
    a.mode_used = mode;
    std::optional<PortId> hit;
    if (!dst.is_multicast()) hit = table_.lookup(dst, now);

    if (!hit) {
        a.kind = ActionKind::flood;
        for (std::size_t p = 0; p < cfg_.port_count; ++p)
            if (p != ingress) a.ports.push_back(static_cast<PortId>(p));
    } else if (*hit == ingress) {
        a.kind = ActionKind::discard;
        a.reason = DiscardReason::same_segment;
    } else {
        a.kind = ActionKind::unicast;
        a.ports.push_back(*hit);
    }
    return a;
}

ForwardAction Switch::learn_and_decide(const ParsedPacket& meta, PortId ingress, BitTime now, SwitchMode mode)
{
    if (meta.src_mac.is_broadcast()) {
        ForwardAction a;
        a.kind = ActionKind::discard;
        a.reason = DiscardReason::malformed;
        a.mode_used = mode;
        return a;
    }
    // Decide before learning so both modes see the same table for a frame.
    auto a = decide(meta.dst_mac, ingress, now, mode);
    table_.learn(meta.src_mac, ingress, now);
    return a;
}

ForwardAction Switch::forward_decision(const ParsedPacket& meta, PortId ingress, BitTime now)
{
    if (ingress >= cfg_.port_count) throw Error(Errc::unknown_port, std::to_string(ingress));
    return learn_and_decide(meta, ingress, now, current_mode());
}

ForwardAction Switch::discard(PortId ingress, DiscardReason reason, SwitchMode mode)
{
    ForwardAction a;
    a.kind = ActionKind::discard;
    a.reason = reason;
    a.mode_used = mode;
    record(ingress, a);
    return a;
}

void Switch::record(PortId ingress, const ForwardAction& a)
{
    auto& c = counters_[ingress];
    if (a.kind == ActionKind::discard) {
        ++c.discards[static_cast<std::size_t>(*a.reason)];
        return;
    }
    ++c.forwarded;
    if (a.kind == ActionKind::flood) ++c.floods;
}

ForwardAction Switch::store_forward_parsed(const ParsedPacket& meta, std::optional<Errc> fault,
                                           PortId ingress, BitTime now)
{
    if (ingress >= cfg_.port_count) throw Error(Errc::unknown_port, std::to_string(ingress));
    ++counters_[ingress].rx_frames;
    constexpr auto mode = SwitchMode::store_forward;
    if (fault) {
        hybrid_.update(false);
        return discard(ingress, DiscardReason::malformed, mode);
    }
    if (meta.fcs_verdict != FcsVerdict::ok) {
        ++counters_[ingress].crc_errors;
        hybrid_.update(false);
        return discard(ingress, DiscardReason::crc_error, mode);
    }
    hybrid_.update(true);
    auto a = learn_and_decide(meta, ingress, now, mode);
    record(ingress, a);
    return a;
}

ForwardAction Switch::process_frame_store_forward(ByteSpan raw, PortId ingress, BitTime now)
{
    ParsedPacket meta;
    std::optional<Errc> fault;
    try {
        meta = extract_metadata(raw, true);
    } catch (const Error& e) {
        fault = e.code();
    }
    return store_forward_parsed(meta, fault, ingress, now);
}

ForwardAction Switch::dispatch_cut_through(ByteSpan header, PortId ingress, BitTime now)
{
    if (ingress >= cfg_.port_count) throw Error(Errc::unknown_port, std::to_string(ingress));
    ++counters_[ingress].rx_frames;
    constexpr auto mode = SwitchMode::cut_through;
    if (header.size() < kHeaderLen) return discard(ingress, DiscardReason::malformed, mode);

    const MacAddr dst = MacAddr::from_bytes(header, 0);
    const MacAddr src = MacAddr::from_bytes(header, 6);
    if (src.is_broadcast()) return discard(ingress, DiscardReason::malformed, mode);
    // Learning waits for the FCS verdict in complete_cut_through.
    auto a = decide(dst, ingress, now, mode);
    record(ingress, a);
    return a;
}

void Switch::complete_cut_through(ByteSpan raw, PortId ingress, const ForwardAction& dispatched, BitTime now)
{
    auto& c = counters_.at(ingress);
    const bool forwarded = dispatched.kind != ActionKind::discard;
    const bool size_ok = raw.size() >= kMinFrameLen && raw.size() <= kMaxFrameLen;
    const bool crc_ok = raw.size() >= 5 && fcs_verify(raw) == FcsVerdict::ok;

    if (!crc_ok) {
        ++c.crc_errors;
        if (forwarded) ++c.forwarded_bad_crc;
    }
    if (!size_ok && forwarded) ++c.forwarded_malformed;
    hybrid_.update(crc_ok && size_ok);

    if (!crc_ok || !size_ok) return;
    const MacAddr src = MacAddr::from_bytes(raw, 6);
    if (!src.is_broadcast()) table_.learn(src, ingress, now);
}

ForwardAction Switch::process_frame_cut_through(ByteSpan raw, PortId ingress, BitTime now)
{
    if (raw.size() < kMinFrameLen || raw.size() > kMaxFrameLen) {
        if (ingress >= cfg_.port_count) throw Error(Errc::unknown_port, std::to_string(ingress));
        ++counters_[ingress].rx_frames;
        hybrid_.update(false);
        return discard(ingress, DiscardReason::malformed, SwitchMode::cut_through);
    }
    auto a = dispatch_cut_through(raw.first(kHeaderLen), ingress, now);
    complete_cut_through(raw, ingress, a, now);
    return a;
}

ForwardAction Switch::process_frame(ByteSpan raw, PortId ingress, BitTime now)
{
    return current_mode() == SwitchMode::cut_through ? process_frame_cut_through(raw, ingress, now)
                                                     : process_frame_store_forward(raw, ingress, now);
}

} // namespace ethpipe
