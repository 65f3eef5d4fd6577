#pragma once

// Directed channel state machine. Each directed channel is an independent
// round-synchronized mediator between a sender, a receiver and the
// adversary:
//
//   - Secure:        adversary learns (bottom, |m|); m delivered verbatim.
//   - Eavesdrop:     adversary learns m; m delivered verbatim.
//   - PartialTamper: adversary learns m XOR pad for a fresh random pad; a
//                    timely reply m' is delivered as pad XOR m'.
//   - FullTamper:    adversary learns m; a timely reply m' is delivered
//                    verbatim.
//
// A send in round i produces an adversary notice in round i+1, accepts
// replies through round i+r-2, and resolves in round i+r-1: delivery for
// Secure/Eavesdrop, and for tampered channels delivery iff a valid reply
// arrived, otherwise a drop.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aempc/bits.hpp"
#include "aempc/rng.hpp"

namespace aempc {

using Round = long;

enum class ChannelType { Secure, Eavesdrop, PartialTamper, FullTamper };

inline const char* channel_type_name(ChannelType t) {
    switch (t) {
        case ChannelType::Secure: return "secure";
        case ChannelType::Eavesdrop: return "eavesdrop";
        case ChannelType::PartialTamper: return "partial";
        case ChannelType::FullTamper: return "full";
    }
    return "?";
}

struct ChannelId {
    int sender = 0;
    int receiver = 0;
    int edge_id = 0;

    bool operator==(const ChannelId& o) const {
        return sender == o.sender && receiver == o.receiver && edge_id == o.edge_id;
    }
};

struct InFlightRecord {
    enum class Status { InFlight, Delivered, Dropped };

    uint64_t message_id = 0;
    Bits payload;
    Round send_round = 0;
    Bits pad;  // PartialTamper only; |pad| == |payload|
    std::optional<Bits> adversary_reply;
    Status status = Status::InFlight;
};

// What the adversary is shown in round send_round + 1.
struct AdversaryNotice {
    ChannelId channel;
    ChannelType type = ChannelType::Secure;
    uint64_t message_id = 0;
    Round notice_round = 0;
    size_t payload_length = 0;       // always visible
    std::optional<Bits> payload;     // absent on Secure channels
};

struct Delivery {
    ChannelId channel;
    uint64_t message_id = 0;
    Round round = 0;
    Bits payload;
};

enum class ReplyStatus { Accepted, TooLate, LengthMismatch, UnknownMessage, ChannelIgnoresReplies, AlreadyResolved };

inline const char* reply_status_name(ReplyStatus s) {
    switch (s) {
        case ReplyStatus::Accepted: return "accepted";
        case ReplyStatus::TooLate: return "too-late";
        case ReplyStatus::LengthMismatch: return "length-mismatch";
        case ReplyStatus::UnknownMessage: return "unknown-message";
        case ReplyStatus::ChannelIgnoresReplies: return "channel-ignores-replies";
        case ReplyStatus::AlreadyResolved: return "already-resolved";
    }
    return "?";
}

// Pads default to the channel's own seeded stream; tests may inject exact
// pads to pin down the XOR algebra.
using PadSource = std::function<Bits(size_t nbits)>;

class ChannelState {
public:
    ChannelState(ChannelId id, ChannelType type, int latency, uint64_t pad_seed)
        : ChannelState(id, type, latency, PadSource{}) {
        Rng rng(pad_seed);
        pads_ = [rng](size_t nbits) mutable { return Bits::random(rng, nbits); };
    }

    ChannelState(ChannelId id, ChannelType type, int latency, PadSource pads)
        : id_(id), type_(type), latency_(latency), pads_(std::move(pads)) {
        if (latency_ <= 6) throw std::invalid_argument("ChannelState: latency must exceed 6");
        if (id_.sender == id_.receiver) throw std::invalid_argument("ChannelState: self-loop");
    }

    const ChannelId& id() const { return id_; }
    ChannelType type() const { return type_; }
    int latency() const { return latency_; }

    AdversaryNotice on_send(const Bits& payload, uint64_t message_id, Round round) {
        if (records_.count(message_id)) {
            throw std::invalid_argument("ChannelState: duplicate message_id");
        }
        InFlightRecord rec;
        rec.message_id = message_id;
        rec.payload = payload;
        rec.send_round = round;
        AdversaryNotice notice;
        notice.channel = id_;
        notice.type = type_;
        notice.message_id = message_id;
        notice.notice_round = round + 1;
        notice.payload_length = payload.size();
        switch (type_) {
            case ChannelType::Secure:
                break;
            case ChannelType::Eavesdrop:
            case ChannelType::FullTamper:
                notice.payload = payload;
                break;
            case ChannelType::PartialTamper:
                rec.pad = pads_(payload.size());
                notice.payload = payload ^ rec.pad;
                break;
        }
        due_.push_back(message_id);
        records_.emplace(message_id, std::move(rec));
        return notice;
    }

    ReplyStatus on_adversary_reply(uint64_t message_id, const Bits& reply, Round round) {
        if (type_ == ChannelType::Secure || type_ == ChannelType::Eavesdrop) {
            return ReplyStatus::ChannelIgnoresReplies;
        }
        auto it = records_.find(message_id);
        if (it == records_.end()) return ReplyStatus::UnknownMessage;
        InFlightRecord& rec = it->second;
        if (rec.status != InFlightRecord::Status::InFlight) return ReplyStatus::AlreadyResolved;
        if (round > rec.send_round + latency_ - 2) return ReplyStatus::TooLate;
        if (reply.size() != rec.payload.size()) return ReplyStatus::LengthMismatch;
        rec.adversary_reply = reply;
        return ReplyStatus::Accepted;
    }

    // Resolve every record whose deadline send_round + r - 1 is `round`.
    // Total: records not yet due are left untouched.
    std::vector<Delivery> on_tick(Round round) {
        std::vector<Delivery> out;
        while (!due_.empty()) {
            auto it = records_.find(due_.front());
            InFlightRecord& rec = it->second;
            const Round resolve_round = rec.send_round + latency_ - 1;
            if (resolve_round > round) break;  // due_ is send-ordered
            due_.pop_front();
            if (resolve_round < round) continue;  // already handled (defensive; ticks are per round)
            std::optional<Bits> delivered;
            switch (type_) {
                case ChannelType::Secure:
                case ChannelType::Eavesdrop:
                    delivered = rec.payload;
                    break;
                case ChannelType::PartialTamper:
                    if (rec.adversary_reply) delivered = rec.pad ^ *rec.adversary_reply;
                    break;
                case ChannelType::FullTamper:
                    if (rec.adversary_reply) delivered = rec.adversary_reply;
                    break;
            }
            if (delivered) {
                rec.status = InFlightRecord::Status::Delivered;
                out.push_back(Delivery{id_, rec.message_id, round, std::move(*delivered)});
            } else {
                rec.status = InFlightRecord::Status::Dropped;
                dropped_.push_back(DropEvent{rec.message_id, round});
            }
        }
        return out;
    }

    struct DropEvent {
        uint64_t message_id;
        Round round;
    };

    // Drops recorded since the last call; the runner turns these into trace
    // entries.
    std::vector<DropEvent> take_drops() {
        std::vector<DropEvent> out = std::move(dropped_);
        dropped_.clear();
        return out;
    }

    const InFlightRecord* record(uint64_t message_id) const {
        auto it = records_.find(message_id);
        return it == records_.end() ? nullptr : &it->second;
    }

private:
    ChannelId id_;
    ChannelType type_;
    int latency_;
    PadSource pads_;
    std::map<uint64_t, InFlightRecord> records_;
    std::deque<uint64_t> due_;  // message ids in send order
    std::vector<DropEvent> dropped_;
};

}  // namespace aempc
