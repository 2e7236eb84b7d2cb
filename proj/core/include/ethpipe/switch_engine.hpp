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
#include "ethpipe/mac_addr.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ethpipe {

/// 300 s of simulated time at 100 Mb/s.
inline constexpr BitTime kDefaultAgingBitTimes = 300ull * 100'000'000ull;

struct MacTableEntry {
    MacAddr mac;
    PortId port = 0;
    BitTime learned_at = 0;
};

/// Source-learned MAC -> port bindings with aging.
class MacTable {
public:
    explicit MacTable(BitTime aging_limit = kDefaultAgingBitTimes) : aging_limit_(aging_limit) {}

    /// Throws Errc::refuse_broadcast_source for a broadcast `src`.
    void learn(const MacAddr& src, PortId ingress, BitTime now);

    /// Bound port, unless absent or older than the aging limit.
    std::optional<PortId> lookup(const MacAddr& dst, BitTime now) const;

    std::size_t size() const { return entries_.size(); }
    BitTime aging_limit() const { return aging_limit_; }
    std::vector<MacTableEntry> entries() const;

private:
    BitTime aging_limit_;
    std::unordered_map<MacAddr, MacTableEntry> entries_;
};

enum class SwitchMode { store_forward, cut_through };
enum class ActionKind { unicast, flood, discard };
enum class DiscardReason { same_segment, crc_error, malformed };

std::string_view to_string(SwitchMode m) noexcept;
std::string_view to_string(ActionKind k) noexcept;
std::string_view to_string(DiscardReason r) noexcept;

struct ForwardAction {
    ActionKind kind = ActionKind::discard;
    std::vector<PortId> ports; ///< egress set; empty for discard
    std::optional<DiscardReason> reason;
    SwitchMode mode_used = SwitchMode::store_forward;

    friend bool operator==(const ForwardAction&, const ForwardAction&) = default;
};

struct HybridConfig {
    std::size_t window = 100;
    double enter_sf_threshold = 0.05;
    double exit_sf_threshold = 0.01;
};

/// Sliding window of the last W FCS verdicts driving the cut-through /
/// store-and-forward choice. The bad fraction is bad/W, so an unfilled window
/// counts its empty positions as good.
class HybridState {
public:
    explicit HybridState(HybridConfig cfg = {});

    SwitchMode update(bool crc_ok);

    SwitchMode mode() const { return mode_; }
    std::size_t bad_count() const { return bad_; }
    double bad_fraction() const;
    const HybridConfig& config() const { return cfg_; }

private:
    HybridConfig cfg_;
    std::deque<bool> window_; // true = bad
    std::size_t bad_ = 0;
    SwitchMode mode_ = SwitchMode::cut_through;
};

enum class SwitchPolicy { store_forward, cut_through, hybrid };
std::string_view to_string(SwitchPolicy p) noexcept;

struct SwitchConfig {
    std::size_t port_count = 4;
    SwitchPolicy policy = SwitchPolicy::hybrid;
    HybridConfig hybrid;
    BitTime aging = kDefaultAgingBitTimes;
};

struct SwitchPortCounters {
    std::uint64_t rx_frames = 0;
    std::uint64_t forwarded = 0;
    std::uint64_t floods = 0;
    std::uint64_t crc_errors = 0;
    std::uint64_t forwarded_bad_crc = 0;
    std::uint64_t forwarded_malformed = 0; ///< cut-through dispatches later found runt/giant
    std::array<std::uint64_t, 3> discards{}; ///< indexed by DiscardReason

    std::uint64_t discarded() const { return discards[0] + discards[1] + discards[2]; }
};

class Switch {
public:
    /// Throws Errc::bad_config for fewer than two ports or inverted hybrid thresholds.
    explicit Switch(SwitchConfig cfg);

    /// Learns the source (unless broadcast), then decides from the
    /// destination. Broadcast sources are discarded as malformed.
    ForwardAction forward_decision(const ParsedPacket& meta, PortId ingress, BitTime now);

    /// Verifies the FCS before anything else; a corrupt frame never updates the table.
    ForwardAction process_frame_store_forward(ByteSpan raw, PortId ingress, BitTime now);
    /// Store-and-forward on an already-parsed frame (fcs_verdict must be set).
    /// `fault` carries a framing error found upstream.
    ForwardAction store_forward_parsed(const ParsedPacket& meta, std::optional<Errc> fault,
                                       PortId ingress, BitTime now);

    /// Whole-frame cut-through: the dispatch uses only the first 14 bytes,
    /// then the completion pass checks size and FCS.
    ForwardAction process_frame_cut_through(ByteSpan raw, PortId ingress, BitTime now);

    /// Split cut-through for timed callers. `dispatch_cut_through` sees only
    /// the L2 header; `complete_cut_through` runs once the whole frame is in.
    ForwardAction dispatch_cut_through(ByteSpan header, PortId ingress, BitTime now);
    void complete_cut_through(ByteSpan raw, PortId ingress, const ForwardAction& dispatched, BitTime now);

    /// Routes through the configured policy. Under hybrid, the current
    /// hybrid mode picks the path.
    ForwardAction process_frame(ByteSpan raw, PortId ingress, BitTime now);

    /// Path the next frame will take under the configured policy.
    SwitchMode current_mode() const;

    const SwitchConfig& config() const { return cfg_; }
    const MacTable& table() const { return table_; }
    MacTable& table() { return table_; }
    const HybridState& hybrid() const { return hybrid_; }
    const SwitchPortCounters& counters(PortId port) const { return counters_.at(port); }
    const std::vector<SwitchPortCounters>& counters() const { return counters_; }

private:
    ForwardAction learn_and_decide(const ParsedPacket& meta, PortId ingress, BitTime now, SwitchMode mode);
    ForwardAction decide(const MacAddr& dst, PortId ingress, BitTime now, SwitchMode mode) const;
    ForwardAction discard(PortId ingress, DiscardReason reason, SwitchMode mode);
    void record(PortId ingress, const ForwardAction& a);

    SwitchConfig cfg_;
    MacTable table_;
    HybridState hybrid_;
    std::vector<SwitchPortCounters> counters_;
};

} // namespace ethpipe
