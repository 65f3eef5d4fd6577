#pragma once

// Pluggable adversary strategies and the adversary view. A strategy
// observes channel notices and may answer them with replies; it also
// drives actively corrupted parties. The runner enforces the corruption
// vector: replies land only on granted tamperable channels, and only
// actively corrupted parties are ever driven.

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aempc/bits.hpp"
#include "aempc/channel.hpp"
#include "aempc/field.hpp"
#include "aempc/rng.hpp"

namespace aempc {

struct OutboundMessage {
    int to = 0;
    Bits payload;
};

struct InboundMessage {
    int from = 0;
    Bits payload;
};

class AdversaryStrategy {
public:
    virtual ~AdversaryStrategy() = default;
    virtual std::string name() const = 0;

    // All notices of the current round, shown before any reply is
    // collected; the adversary is monolithic but rushing-free.
    virtual void observe_round(const std::vector<AdversaryNotice>& notices, Rng& rng) {
        (void)notices;
        (void)rng;
    }

    // Optional reply to a channel notice. Returning a reply on a channel
    // the corruption vector does not grant is rejected and logged.
    virtual std::optional<Bits> on_notice(const AdversaryNotice& notice, Rng& rng) {
        (void)notice;
        (void)rng;
        return std::nullopt;
    }

    // One base round of an actively corrupted party. The runner keeps a
    // shadow honest instance per such party and passes in what it would
    // have sent; the strategy may forward, rewrite or suppress it.
    virtual std::vector<OutboundMessage> on_party_step(int party, int base_round,
                                                       const std::vector<InboundMessage>& inbox,
                                                       std::vector<OutboundMessage> honest_outbox,
                                                       Rng& rng) {
        (void)party;
        (void)base_round;
        (void)inbox;
        (void)rng;
        return honest_outbox;
    }
};

namespace strategies {

inline bool tamperable(ChannelType t) {
    return t == ChannelType::PartialTamper || t == ChannelType::FullTamper;
}

// Echo every tamperable notice back unchanged; end-to-end this makes a
// tampered channel behave like a secure one.
class PassThrough : public AdversaryStrategy {
public:
    std::string name() const override { return "passthrough"; }
    std::optional<Bits> on_notice(const AdversaryNotice& notice, Rng&) override {
        if (tamperable(notice.type) && notice.payload) return *notice.payload;
        return std::nullopt;
    }
};

// Honest-but-curious: identical channel behavior to PassThrough; the view
// bookkeeping (which the runner does for every strategy) is the point.
class Recorder : public AdversaryStrategy {
public:
    std::string name() const override { return "recorder"; }
    std::optional<Bits> on_notice(const AdversaryNotice& notice, Rng&) override {
        if (tamperable(notice.type) && notice.payload) return *notice.payload;
        return std::nullopt;
    }
};

// Never replies; every message on a tamperable channel is dropped.
class Dropper : public AdversaryStrategy {
public:
    std::string name() const override { return "dropper"; }
};

// Reply = notice XOR mask (mask tiled to the payload length). On both
// partial and full tampering the receiver ends up with m XOR mask.
class BitFlipper : public AdversaryStrategy {
public:
    explicit BitFlipper(Bits mask) : mask_(std::move(mask)) {}
    std::string name() const override { return "bitflipper"; }
    std::optional<Bits> on_notice(const AdversaryNotice& notice, Rng&) override {
        if (!tamperable(notice.type) || !notice.payload) return std::nullopt;
        const Bits& in = *notice.payload;
        Bits tiled = Bits::zeros(in.size());
        if (mask_.size() > 0) {
            for (size_t i = 0; i < in.size(); ++i) tiled.set_bit(i, mask_.bit(i % mask_.size()));
        }
        return in ^ tiled;
    }

private:
    Bits mask_;
};

// Garbles everything incident to one victim on the granted channels
// (complement keeps replies deterministic and identical across channels,
// which is what forces disqualification rather than mere noise); other
// granted channels are passed through.
class DefaultForcer : public AdversaryStrategy {
public:
    explicit DefaultForcer(int victim) : victim_(victim) {}
    std::string name() const override { return "default_forcer"; }
    std::optional<Bits> on_notice(const AdversaryNotice& notice, Rng&) override {
        if (!tamperable(notice.type) || !notice.payload) return std::nullopt;
        if (notice.channel.sender == victim_ || notice.channel.receiver == victim_) {
            return ~(*notice.payload);
        }
        return *notice.payload;
    }

private:
    int victim_ = 0;
};

}  // namespace strategies

// Time-ordered record of everything the adversary observed. The canonical
// key is the projection used for view-distribution comparisons: observed
// payload bits (channel notices and replies) plus the input/committed/
// output tape of each passively corrupted party, excluding rounds and
// message ids, which the schedule fixes.
struct ViewItem {
    enum class Kind {
        NoticeSecure,     // edge, payload length only
        NoticeOpen,       // edge, payload bits
        ReplySent,        // edge, payload bits
        ReplyRejected,    // edge (attempt outside the granted corruption)
        PassiveInput,     // party, field value
        PassiveCommitted, // party, field value (or defaulted marker)
        PassiveOutput,    // party, field value
        ActiveInbox,      // party, sender, payload bits
    };

    Kind kind = Kind::NoticeSecure;
    int party = 0;
    int peer = 0;
    int edge_id = 0;
    uint64_t number = 0;  // field value or length
    std::optional<Bits> payload;
    Round round = 0;  // informational; excluded from the canonical key
};

struct AdversaryView {
    std::vector<ViewItem> items;

    void add(ViewItem item) { items.push_back(std::move(item)); }

    std::string canonical_key() const {
        std::ostringstream os;
        for (const ViewItem& it : items) {
            os << static_cast<int>(it.kind) << '/' << it.party << '/' << it.peer << '/'
               << it.edge_id << '/' << it.number << '/';
            if (it.payload) os << it.payload->to_hex();
            os << ';';
        }
        return os.str();
    }
};

}  // namespace aempc
