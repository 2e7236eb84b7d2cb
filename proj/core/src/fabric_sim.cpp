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

#include "ethpipe/fabric_sim.hpp"

#include "ethpipe/error.hpp"
#include "ethpipe/frame_codec.hpp"
#include "ethpipe/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace ethpipe {

std::uint64_t PortStats::dropped() const
{
    std::uint64_t n = 0;
    for (const auto& [reason, count] : drops) n += count;
    return n;
}

std::string SimEvent::to_string() const
{
    std::string s = "t=" + std::to_string(time) + " ev=" + kind + " port=" + std::to_string(port) +
                    " frame=" + std::to_string(frame);
    if (!detail.empty()) s += " " + detail;
    return s;
}

std::string SimResult::render_log() const
{
    std::string out;
    for (const auto& e : events) {
        out += e.to_string();
        out += '\n';
    }
    return out;
}

Bytes inject_error(ByteSpan frame, std::size_t bit_index)
{
    if (bit_index >= frame.size() * 8)
        throw Error(Errc::index_out_of_range, std::to_string(bit_index) + " >= " + std::to_string(frame.size() * 8));
    Bytes out(frame.begin(), frame.end());
    out[bit_index / 8] = static_cast<std::uint8_t>(out[bit_index / 8] ^ (1u << (bit_index % 8)));
    return out;
}

namespace {

enum class EventType { ifg_violation, rx_start, header_ready, rx_end, enqueue, tx_start, tx_end };

struct Pending {
    SimTime time = 0;
    std::uint64_t seq = 0;
    EventType type = EventType::rx_start;
    std::uint64_t frame = 0;
    PortId port = 0;
    std::vector<PortId> egress; // enqueue only
    std::uint64_t copy = 0;     // tx events: index into copies

    bool operator>(const Pending& o) const
    {
        return time != o.time ? time > o.time : seq > o.seq;
    }
};

struct FrameState {
    Bytes bytes; // as received, after error injection
    SimTime start = 0;
    SimTime rx_end = 0;
    PortId port = 0;
    std::optional<ForwardAction> dispatched; // cut-through decision, if taken
    Bytes out;                               // router rewrite
    std::vector<std::size_t> corrupted;      // injected bit errors
};

struct Copy {
    std::uint64_t frame = 0;
    PortId egress = 0;
    std::size_t len = 0;
};

struct EgressPort {
    SimTime next_free = 0;
    std::deque<SimTime> waiting; // start times of queued copies
};

std::string describe(const ForwardAction& a)
{
    std::string s = "mode=" + std::string(to_string(a.mode_used)) + " action=" + std::string(to_string(a.kind));
    if (a.reason) s += " reason=" + std::string(to_string(*a.reason));
    if (!a.ports.empty()) {
        s += " ports=";
        for (std::size_t i = 0; i < a.ports.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(a.ports[i]);
        }
    }
    return s;
}

class Simulation {
public:
    Simulation(const SimConfig& cfg, std::span<const TimedFrame> schedule, std::uint64_t seed)
        : cfg_(cfg)
    {
        validate_links();
        if (const auto* sc = std::get_if<SwitchConfig>(&cfg.device)) {
            if (sc->port_count != cfg.links.size())
                throw Error(Errc::bad_config, "switch port count differs from link count");
            sw_.emplace(*sc);
            for (std::size_t p = 0; p < cfg.links.size(); ++p) pipelines_.push_back(Pipeline::build_default());
        } else {
            const auto& rc = std::get<RouterConfig>(cfg.device);
            for (const auto& e : rc.routes.entries())
                if (e.egress_port >= cfg.links.size())
                    throw Error(Errc::unknown_port, "route egress " + std::to_string(e.egress_port));
            for (const auto& [port, mac] : rc.port_macs)
                if (port >= cfg.links.size()) throw Error(Errc::unknown_port, "port mac " + std::to_string(port));
            router_.emplace(rc);
        }
        depth_ = Pipeline::build_default().depth();
        result_.ports.resize(cfg.links.size());
        egress_.resize(cfg.links.size());
        load_schedule(schedule, seed);
    }

    SimResult run()
    {
        while (!queue_.empty()) {
            Pending ev = queue_.top();
            queue_.pop();
            now_ = ev.time;
            switch (ev.type) {
            case EventType::ifg_violation: log(ev.port, ev.frame, "ifg_violation", ""); break;
            case EventType::rx_start: on_rx_start(ev); break;
            case EventType::header_ready: on_header(ev); break;
            case EventType::rx_end: on_rx_end(ev); break;
            case EventType::enqueue: on_enqueue(ev); break;
            case EventType::tx_start: log(ev.port, ev.frame, "tx_start", "len=" + std::to_string(copies_[ev.copy].len)); break;
            case EventType::tx_end:
                ++result_.ports[ev.port].tx_frames;
                log(ev.port, ev.frame, "tx_end", "");
                break;
            }
        }
        finish_counters();
        result_.end_time = now_;
        return std::move(result_);
    }

private:
    void validate_links()
    {
        if (cfg_.links.empty()) throw Error(Errc::bad_config, "no links");
        std::uint64_t fastest = 0;
        for (const auto& l : cfg_.links) {
            if (l.rate_bps == 0) throw Error(Errc::bad_config, "zero link rate");
            fastest = std::max(fastest, l.rate_bps);
        }
        for (const auto& l : cfg_.links) {
            if (fastest % l.rate_bps != 0)
                throw Error(Errc::bad_config, "link rates must divide the fastest rate");
            units_per_bit_.push_back(fastest / l.rate_bps);
        }
        result_.timebase_bps = fastest;
    }

    void load_schedule(std::span<const TimedFrame> schedule, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        frames_.resize(schedule.size());
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            const auto& tf = schedule[i];
            if (tf.port >= cfg_.links.size()) throw Error(Errc::unknown_port, std::to_string(tf.port));
            Bytes bytes = tf.frame;
            auto& fs = frames_[i];
            if (tf.corrupt_bit) {
                bytes = inject_error(bytes, *tf.corrupt_bit);
                fs.corrupted.push_back(*tf.corrupt_bit);
            }
            if (tf.corrupt_random && !bytes.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, bytes.size() * 8 - 1);
                const auto bit = pick(rng);
                bytes = inject_error(bytes, bit);
                fs.corrupted.push_back(bit);
            }
            fs.bytes = std::move(bytes);
            fs.port = tf.port;
            fs.start = tf.arrival_start;
            fs.rx_end = tf.arrival_start + wire_bits(fs.bytes.size()) * units_per_bit_[tf.port];
        }

        std::vector<std::size_t> order(schedule.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return frames_[a].start != frames_[b].start ? frames_[a].start < frames_[b].start
                                                        : frames_[a].port < frames_[b].port;
        });

        std::vector<std::optional<std::size_t>> last_on_port(cfg_.links.size());
        for (std::size_t id : order) {
            const auto& fs = frames_[id];
            if (auto prev = last_on_port[fs.port]) {
                const auto& pf = frames_[*prev];
                if (fs.start < pf.rx_end)
                    throw Error(Errc::schedule_overlap, "frame " + std::to_string(id) + " on port " + std::to_string(fs.port));
                if (fs.start - pf.rx_end < std::uint64_t{cfg_.links[fs.port].ifg_bits} * units_per_bit_[fs.port]) {
                    ++result_.ports[fs.port].ifg_violations;
                    push({fs.start, 0, EventType::ifg_violation, id, fs.port, {}, 0});
                }
            }
            last_on_port[fs.port] = id;

            const auto upb = units_per_bit_[fs.port];
            push({fs.start, 0, EventType::rx_start, id, fs.port, {}, 0});
            if (sw_) {
                const SimTime header = fs.start + (8 + cfg_.cut_through_bytes) * 8 * upb;
                push({header, 0, EventType::header_ready, id, fs.port, {}, 0});
            }
            push({fs.rx_end, 0, EventType::rx_end, id, fs.port, {}, 0});
        }
    }

    void push(Pending p)
    {
        p.seq = seq_++;
        queue_.push(std::move(p));
    }

    void log(PortId port, std::uint64_t frame, std::string kind, std::string detail)
    {
        result_.events.push_back({now_, std::move(kind), port, frame, std::move(detail)});
    }

    SimTime processing_delay(PortId ingress) const
    {
        return depth_ * cfg_.bit_times_per_tick * units_per_bit_[ingress];
    }

    void note_mode_change(SwitchMode before, PortId port, std::uint64_t frame)
    {
        const SwitchMode after = sw_->current_mode();
        if (after != before)
            log(port, frame, "mode",
                "from=" + std::string(to_string(before)) + " to=" + std::string(to_string(after)) +
                    " bad=" + std::to_string(sw_->hybrid().bad_count()));
    }

    void on_rx_start(const Pending& ev)
    {
        const auto& fs = frames_[ev.frame];
        std::string detail = "len=" + std::to_string(fs.bytes.size());
        for (auto bit : fs.corrupted) detail += " corrupt=" + std::to_string(bit);
        log(ev.port, ev.frame, "rx_start", detail);
    }

    void on_header(const Pending& ev)
    {
        auto& fs = frames_[ev.frame];
        if (sw_->current_mode() != SwitchMode::cut_through) return;
        const auto header = ByteSpan(fs.bytes).first(std::min(fs.bytes.size(), kHeaderLen));
        fs.dispatched = sw_->dispatch_cut_through(header, ev.port, now_);
        log(ev.port, ev.frame, "dispatch", describe(*fs.dispatched));
        if (fs.dispatched->kind == ActionKind::discard) {
            ++result_.ports[ev.port].drops[std::string(to_string(*fs.dispatched->reason))];
            return;
        }
        push({now_ + processing_delay(ev.port), 0, EventType::enqueue, ev.frame, ev.port, fs.dispatched->ports, 0});
    }

    void on_rx_end(const Pending& ev)
    {
        auto& fs = frames_[ev.frame];
        auto& stats = result_.ports[ev.port];
        ++stats.rx_frames;
        const bool crc_ok = fs.bytes.size() >= 5 && fcs_verify(fs.bytes) == FcsVerdict::ok;
        log(ev.port, ev.frame, "rx_end", std::string("fcs=") + (crc_ok ? "ok" : "bad"));

        if (router_) {
            auto r = router_->forward(fs.bytes, ev.port);
            if (const auto* d = std::get_if<Drop>(&r)) {
                ++stats.drops[std::string(to_string(d->reason))];
                log(ev.port, ev.frame, "route", "action=drop reason=" + std::string(to_string(d->reason)));
                return;
            }
            auto& routed = std::get<Routed>(r);
            log(ev.port, ev.frame, "route", "action=forward egress=" + std::to_string(routed.egress));
            fs.out = std::move(routed.frame);
            push({now_ + processing_delay(ev.port), 0, EventType::enqueue, ev.frame, ev.port, {routed.egress}, 0});
            return;
        }

        const SwitchMode before = sw_->current_mode();
        if (fs.dispatched) {
            sw_->complete_cut_through(fs.bytes, ev.port, *fs.dispatched, now_);
            note_mode_change(before, ev.port, ev.frame);
            return;
        }

        auto& pipe = pipelines_[ev.port];
        pipe.inject(fs.bytes);
        std::vector<PipelineSlot> out;
        while (out.empty()) out = pipe.tick();
        const auto& slot = out.front();
        const auto action = sw_->store_forward_parsed(slot.meta, slot.fault, ev.port, now_);
        log(ev.port, ev.frame, "decide", describe(action));
        note_mode_change(before, ev.port, ev.frame);
        if (action.kind == ActionKind::discard) {
            ++stats.drops[std::string(to_string(*action.reason))];
            return;
        }
        push({now_ + processing_delay(ev.port), 0, EventType::enqueue, ev.frame, ev.port, action.ports, 0});
    }

    void on_enqueue(const Pending& ev)
    {
        const auto& fs = frames_[ev.frame];
        const Bytes& payload = fs.out.empty() ? fs.bytes : fs.out;
        std::size_t accepted = 0;
        for (PortId egress : ev.egress) {
            auto& ep = egress_[egress];
            while (!ep.waiting.empty() && ep.waiting.front() <= now_) ep.waiting.pop_front();
            if (ep.waiting.size() >= cfg_.buffer_frames) {
                ++result_.ports[egress].overflow_copies;
                log(egress, ev.frame, "overflow", "");
                continue;
            }
            const auto upb = units_per_bit_[egress];
            const SimTime duration = wire_bits(payload.size()) * upb;
            SimTime start = std::max(now_, ep.next_free);
            // A cut-through copy on a faster egress must not finish before
            // its last bit has arrived.
            if (fs.rx_end > duration) start = std::max(start, fs.rx_end - duration);
            const SimTime end = start + duration;
            ep.next_free = end + std::uint64_t{cfg_.links[egress].ifg_bits} * upb;
            ep.waiting.push_back(start);

            const std::uint64_t copy = copies_.size();
            copies_.push_back({ev.frame, egress, payload.size()});
            result_.ports[fs.port].latencies.push_back({ev.frame, egress, start - fs.start, end - fs.start});
            push({start, 0, EventType::tx_start, ev.frame, egress, {}, copy});
            push({end, 0, EventType::tx_end, ev.frame, egress, {}, copy});
            ++accepted;
        }
        auto& stats = result_.ports[ev.port];
        if (accepted > 0)
            ++stats.forwarded;
        else
            ++stats.drops["overflow"];
    }

    void finish_counters()
    {
        if (sw_) {
            for (std::size_t p = 0; p < result_.ports.size(); ++p) {
                const auto& c = sw_->counters(static_cast<PortId>(p));
                result_.ports[p].crc_errors = c.crc_errors;
                result_.ports[p].forwarded_bad_crc = c.forwarded_bad_crc;
                result_.ports[p].floods = c.floods;
            }
        } else {
            for (auto& ps : result_.ports) {
                auto it = ps.drops.find("crc_error");
                ps.crc_errors = it == ps.drops.end() ? 0 : it->second;
            }
        }
    }

    const SimConfig& cfg_;
    std::optional<Switch> sw_;
    std::optional<Router> router_;
    std::vector<Pipeline> pipelines_;
    std::size_t depth_ = 0;
    std::vector<std::uint64_t> units_per_bit_;
    std::vector<FrameState> frames_;
    std::vector<Copy> copies_;
    std::vector<EgressPort> egress_;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
    std::uint64_t seq_ = 0;
    SimTime now_ = 0;
    SimResult result_;
};

} // namespace

SimResult run_simulation(const SimConfig& cfg, std::span<const TimedFrame> schedule, std::uint64_t seed)
{
    return Simulation(cfg, schedule, seed).run();
}

} // namespace ethpipe
