#pragma once

// Execution runners. run_slotted drives the protocol over the channel
// functionalities on the super-round schedule with a live adversary;
// run_unslotted executes the same party programs with direct one-round
// delivery and no adversary — the reference the slotted run is checked
// against.
//
// Determinism: party order, channel order and notice order are fixed, and
// all randomness derives from the scenario seed, so a (scenario, seed)
// pair replays byte-for-byte.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aempc/channel.hpp"
#include "aempc/guarantees.hpp"
#include "aempc/protocol.hpp"
#include "aempc/reveal.hpp"
#include "aempc/scenario.hpp"
#include "aempc/schedule.hpp"
#include "aempc/strategy_catalog.hpp"

namespace aempc {

struct TraceEvent {
    enum class Kind { Send, Notice, ReplyAccepted, ReplyRejected, Deliver, Drop };

    Kind kind = Kind::Send;
    Round round = 0;
    int edge_id = 0;
    int sender = 0;
    int receiver = 0;
    uint64_t message_id = 0;
    size_t payload_bits = 0;
    std::string detail;

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::Send: return "send";
            case Kind::Notice: return "notice";
            case Kind::ReplyAccepted: return "reply-accepted";
            case Kind::ReplyRejected: return "reply-rejected";
            case Kind::Deliver: return "deliver";
            case Kind::Drop: return "drop";
        }
        return "?";
    }
};

struct RunResult {
    bool feasible = false;
    GuaranteeSets prediction;
    CommittedVector committed;
    std::vector<std::optional<FieldElement>> outputs;  // index party-1
    std::vector<Transcript> transcripts;
    AdversaryView view;
    std::vector<TraceEvent> trace;
    int commitment_rounds = 0;
    int base_rounds = 0;
    long network_rounds = 0;
};

namespace detail {

inline std::pair<int, int> pair_of_slot(int slot, int n) {
    const int s = (slot - 1) / (n - 1) + 1;
    const int off = (slot - 1) % (n - 1);
    int r = off + 1;
    if (r >= s) ++r;
    return {s, r};
}

struct PartySlot {
    std::unique_ptr<HonestParty> program;  // the honest program (or the shadow for X_a)
    bool active_corrupt = false;
};

}  // namespace detail

// `strategy_override` substitutes the scenario's named strategy; tests use
// it to drive custom adversaries through the same enforcement path.
inline RunResult run_slotted(const Scenario& scenario, RunPhase phase = RunPhase::Full,
                             AdversaryStrategy* strategy_override = nullptr) {
    scenario.validate();
    const int n = scenario.n;
    const NetworkMap net = scenario.network();
    if (!is_feasible(scenario.corruption, net, n)) {
        throw std::invalid_argument("run: infeasible corruption vector");
    }

    RunResult result;
    result.feasible = true;
    result.prediction = compute_func(scenario.corruption, net, n);

    const ProtocolParams params = ProtocolParams::from_scenario(scenario, phase);
    const ProgramLayout layout = ProgramLayout::build(params);
    const Schedule schedule = build_schedule(n, scenario.r, layout.total_base_rounds());
    result.commitment_rounds = layout.commitment_rounds;
    result.base_rounds = layout.total_base_rounds();
    result.network_rounds = schedule.total_rounds();

    // Channels, canonical edge order.
    std::map<int, ChannelState> channels;  // edge_id -> state
    std::map<int, uint64_t> next_message_id;
    for (int s = 1; s <= n; ++s) {
        for (int r = 1; r <= n; ++r) {
            if (s == r) continue;
            const int edge = edge_index(s, r, n);
            channels.emplace(edge, ChannelState(ChannelId{s, r, edge}, network_type(net, s, r),
                                                scenario.r,
                                                derive_seed(scenario.seed, "pad", static_cast<uint64_t>(edge))));
            next_message_id[edge] = 0;
        }
    }

    // Parties. Actively corrupted ones run as shadows the strategy rewrites.
    const std::vector<FieldElement> inputs = scenario.input_elements();
    std::vector<detail::PartySlot> parties(static_cast<size_t>(n) + 1);
    result.transcripts.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const uint64_t party_seed = derive_seed(scenario.seed, "party", static_cast<uint64_t>(i));
        parties[static_cast<size_t>(i)].program = std::make_unique<HonestParty>(
            params, i, inputs[static_cast<size_t>(i - 1)], party_seed);
        parties[static_cast<size_t>(i)].active_corrupt =
            scenario.corruption.active_parties.count(i) > 0;
        result.transcripts[static_cast<size_t>(i - 1)] =
            Transcript{i, inputs[static_cast<size_t>(i - 1)], party_seed, {},
                       layout.commitment_rounds};
    }

    std::unique_ptr<AdversaryStrategy> named;
    if (!strategy_override) named = make_strategy(scenario.strategy, scenario);
    AdversaryStrategy* strategy = strategy_override ? strategy_override : named.get();
    Rng adv_rng(derive_seed(scenario.seed, "adversary"));
    for (int i : scenario.corruption.passive_parties) {
        result.view.add(ViewItem{ViewItem::Kind::PassiveInput, i, 0, 0,
                                 inputs[static_cast<size_t>(i - 1)].value, std::nullopt, 0});
    }

    // Outboxes for the current block and inboxes accumulating deliveries.
    std::vector<std::vector<OutboundMessage>> outbox(static_cast<size_t>(n) + 1);
    std::vector<std::vector<InboundMessage>> block_inbox(static_cast<size_t>(n) + 1);
    std::vector<std::vector<InboundMessage>> prev_inbox(static_cast<size_t>(n) + 1);
    std::vector<AdversaryNotice> due_notices;

    const long rounds_per_block = schedule.rounds_per_block();
    for (Round round = 0; round < schedule.total_rounds(); ++round) {
        // Block boundary: activate every party on the previous block's mail.
        if (round % rounds_per_block == 0) {
            const int b = static_cast<int>(round / rounds_per_block);
            prev_inbox.swap(block_inbox);
            for (auto& box : block_inbox) box.clear();
            for (int i = 1; i <= n; ++i) {
                auto& slot = parties[static_cast<size_t>(i)];
                std::vector<OutboundMessage> honest_out =
                    slot.program->step(b, prev_inbox[static_cast<size_t>(i)]);
                if (slot.active_corrupt) {
                    for (const InboundMessage& m : prev_inbox[static_cast<size_t>(i)]) {
                        result.view.add(ViewItem{ViewItem::Kind::ActiveInbox, i, m.from, 0, 0,
                                                 m.payload, 0});
                    }
                    outbox[static_cast<size_t>(i)] = strategy->on_party_step(
                        i, b, prev_inbox[static_cast<size_t>(i)], std::move(honest_out), adv_rng);
                } else {
                    outbox[static_cast<size_t>(i)] = std::move(honest_out);
                }
            }
        }

        // Sends: the pair owning this super-round may transmit now.
        if (round % scenario.r == 0) {
            const int slot = schedule.slot_of(round);
            const auto [sender, receiver] = detail::pair_of_slot(slot, n);
            const int b = schedule.base_round_of(round);
            auto& box = outbox[static_cast<size_t>(sender)];
            for (auto it = box.begin(); it != box.end();) {
                if (it->to != receiver) {
                    ++it;
                    continue;
                }
                const int edge = edge_index(sender, receiver, n);
                ChannelState& ch = channels.at(edge);
                const uint64_t mid = ++next_message_id[edge];
                AdversaryNotice notice = ch.on_send(it->payload, mid, round);
                due_notices.push_back(notice);
                result.trace.push_back(TraceEvent{TraceEvent::Kind::Send, round, edge, sender,
                                                  receiver, mid, it->payload.size(), {}});
                result.transcripts[static_cast<size_t>(sender - 1)].entries.push_back(
                    TranscriptEntry{b, receiver, false, it->payload, round});
                it = box.erase(it);
            }
        }

        // Deliveries and drops due this round.
        for (auto& [edge, ch] : channels) {
            for (Delivery& d : ch.on_tick(round)) {
                result.trace.push_back(TraceEvent{TraceEvent::Kind::Deliver, round, edge,
                                                  ch.id().sender, ch.id().receiver, d.message_id,
                                                  d.payload.size(), {}});
                const int b = schedule.base_round_of(round);
                result.transcripts[static_cast<size_t>(ch.id().receiver - 1)].entries.push_back(
                    TranscriptEntry{b, ch.id().sender, true, d.payload, round});
                block_inbox[static_cast<size_t>(ch.id().receiver)].push_back(
                    InboundMessage{ch.id().sender, std::move(d.payload)});
            }
            for (const auto& drop : ch.take_drops()) {
                result.trace.push_back(TraceEvent{TraceEvent::Kind::Drop, round, edge,
                                                  ch.id().sender, ch.id().receiver, drop.message_id,
                                                  0, {}});
            }
        }

        // Adversary turn: all notices scheduled for this round, in send
        // order, each possibly answered immediately.
        std::vector<AdversaryNotice> now;
        for (auto it = due_notices.begin(); it != due_notices.end();) {
            if (it->notice_round == round) {
                now.push_back(*it);
                it = due_notices.erase(it);
            } else {
                ++it;
            }
        }
        if (!now.empty()) strategy->observe_round(now, adv_rng);
        for (const AdversaryNotice& notice : now) {
            const int edge = notice.channel.edge_id;
            if (notice.payload) {
                result.view.add(ViewItem{ViewItem::Kind::NoticeOpen, notice.channel.sender,
                                         notice.channel.receiver, edge, 0, *notice.payload, round});
            } else {
                result.view.add(ViewItem{ViewItem::Kind::NoticeSecure, notice.channel.sender,
                                         notice.channel.receiver, edge, notice.payload_length,
                                         std::nullopt, round});
            }
            result.trace.push_back(TraceEvent{TraceEvent::Kind::Notice, round, edge,
                                              notice.channel.sender, notice.channel.receiver,
                                              notice.message_id, notice.payload_length, {}});
            std::optional<Bits> reply = strategy->on_notice(notice, adv_rng);
            if (!reply) continue;
            const ChannelKey key{notice.channel.sender, notice.channel.receiver};
            if (!scenario.corruption.channel_controlled(key)) {
                result.trace.push_back(TraceEvent{TraceEvent::Kind::ReplyRejected, round, edge,
                                                  notice.channel.sender, notice.channel.receiver,
                                                  notice.message_id, reply->size(),
                                                  "outside granted corruption"});
                result.view.add(ViewItem{ViewItem::Kind::ReplyRejected, notice.channel.sender,
                                         notice.channel.receiver, edge, 0, std::nullopt, round});
                continue;
            }
            ChannelState& ch = channels.at(edge);
            const ReplyStatus status = ch.on_adversary_reply(notice.message_id, *reply, round);
            if (status == ReplyStatus::Accepted) {
                result.trace.push_back(TraceEvent{TraceEvent::Kind::ReplyAccepted, round, edge,
                                                  notice.channel.sender, notice.channel.receiver,
                                                  notice.message_id, reply->size(), {}});
                result.view.add(ViewItem{ViewItem::Kind::ReplySent, notice.channel.sender,
                                         notice.channel.receiver, edge, 0, *reply, round});
            } else {
                result.trace.push_back(TraceEvent{TraceEvent::Kind::ReplyRejected, round, edge,
                                                  notice.channel.sender, notice.channel.receiver,
                                                  notice.message_id, reply->size(),
                                                  reply_status_name(status)});
            }
        }
    }

    // Final fold of the last block's mail.
    for (int i = 1; i <= n; ++i) {
        parties[static_cast<size_t>(i)].program->finish(block_inbox[static_cast<size_t>(i)]);
    }

    result.committed = reveal(result.transcripts, result.prediction.correctness_parties, params);

    result.outputs.assign(static_cast<size_t>(n), std::nullopt);
    for (int i = 1; i <= n; ++i) {
        if (parties[static_cast<size_t>(i)].active_corrupt) continue;
        result.outputs[static_cast<size_t>(i - 1)] = parties[static_cast<size_t>(i)].program->output();
    }

    for (int i : scenario.corruption.passive_parties) {
        const FieldElement& committed = result.committed.values[static_cast<size_t>(i - 1)];
        result.view.add(ViewItem{ViewItem::Kind::PassiveCommitted, i,
                                 result.committed.defaulted.count(i) ? 1 : 0, 0, committed.value,
                                 std::nullopt, 0});
        const auto& out = result.outputs[static_cast<size_t>(i - 1)];
        result.view.add(ViewItem{ViewItem::Kind::PassiveOutput, i, out ? 1 : 0, 0,
                                 out ? out->value : 0, std::nullopt, 0});
    }
    return result;
}

// Direct-delivery execution of the same party programs: one network round
// per base round, no channels, no adversary.
inline RunResult run_unslotted(const Scenario& scenario, RunPhase phase = RunPhase::Full) {
    scenario.validate();
    const int n = scenario.n;
    const NetworkMap net = scenario.network();

    RunResult result;
    result.feasible = is_feasible(scenario.corruption, net, n);
    result.prediction = compute_func(scenario.corruption, net, n);

    const ProtocolParams params = ProtocolParams::from_scenario(scenario, phase);
    const ProgramLayout layout = ProgramLayout::build(params);
    result.commitment_rounds = layout.commitment_rounds;
    result.base_rounds = layout.total_base_rounds();
    result.network_rounds = layout.total_base_rounds();

    const std::vector<FieldElement> inputs = scenario.input_elements();
    std::vector<std::unique_ptr<HonestParty>> parties(static_cast<size_t>(n) + 1);
    result.transcripts.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const uint64_t party_seed = derive_seed(scenario.seed, "party", static_cast<uint64_t>(i));
        parties[static_cast<size_t>(i)] = std::make_unique<HonestParty>(
            params, i, inputs[static_cast<size_t>(i - 1)], party_seed);
        result.transcripts[static_cast<size_t>(i - 1)] =
            Transcript{i, inputs[static_cast<size_t>(i - 1)], party_seed, {},
                       layout.commitment_rounds};
    }

    std::vector<std::vector<InboundMessage>> inbox(static_cast<size_t>(n) + 1);
    for (int b = 0; b < layout.total_base_rounds(); ++b) {
        std::vector<std::vector<InboundMessage>> next(static_cast<size_t>(n) + 1);
        for (int i = 1; i <= n; ++i) {
            std::vector<OutboundMessage> out = parties[static_cast<size_t>(i)]->step(
                b, inbox[static_cast<size_t>(i)]);
            for (OutboundMessage& m : out) {
                result.transcripts[static_cast<size_t>(i - 1)].entries.push_back(
                    TranscriptEntry{b, m.to, false, m.payload, b});
                result.transcripts[static_cast<size_t>(m.to - 1)].entries.push_back(
                    TranscriptEntry{b, i, true, m.payload, b});
                next[static_cast<size_t>(m.to)].push_back(InboundMessage{i, std::move(m.payload)});
            }
        }
        inbox.swap(next);
    }
    for (int i = 1; i <= n; ++i) {
        parties[static_cast<size_t>(i)]->finish(inbox[static_cast<size_t>(i)]);
    }

    result.committed = reveal(result.transcripts, result.prediction.correctness_parties, params);
    result.outputs.assign(static_cast<size_t>(n), std::nullopt);
    for (int i = 1; i <= n; ++i) {
        result.outputs[static_cast<size_t>(i - 1)] = parties[static_cast<size_t>(i)]->output();
    }
    return result;
}

}  // namespace aempc
