#pragma once

// Protocol-aware strategies and the by-name strategy factory. The channel
// level strategies live in strategy.hpp; here sit the pieces that need to
// understand protocol message structure — the value-lying controller for
// actively corrupted parties.

#include <memory>
#include <string>

#include "aempc/protocol.hpp"
#include "aempc/scenario.hpp"
#include "aempc/strategy.hpp"

namespace aempc {

namespace detail {

inline uint64_t perturb_value(uint64_t v, Rng& rng, uint64_t p) {
    return (v + 1 + rng.below(p - 1)) % p;
}

// Rewrites every field value inside an inner (unsealed) protocol body;
// complaint and accusal lists are structural and pass through unchanged.
inline std::vector<uint8_t> lie_inner(const std::vector<uint8_t>& body, Rng& rng, uint64_t p);

inline void copy_u64_perturbed(ByteReader& r, ByteWriter& w, Rng& rng, uint64_t p) {
    w.u64(perturb_value(r.u64(), rng, p));
}

inline std::vector<uint8_t> lie_eig(const std::vector<uint8_t>& body, Rng& rng, uint64_t p) {
    ByteReader r(body);
    ByteWriter w;
    const uint8_t kind = r.u8();
    w.u8(kind);
    const uint8_t level = r.u8();
    w.u8(level);
    if (level == 1) {
        Bits inner = r.bits();
        w.bits(Bits::from_bytes(lie_inner(inner.bytes(), rng, p)));
    } else {
        const uint16_t count = r.u16();
        w.u16(count);
        for (int e = 0; e < count; ++e) {
            const uint8_t plen = r.u8();
            w.u8(plen);
            for (int i = 0; i < plen; ++i) w.u8(r.u8());
            const uint8_t has = r.u8();
            w.u8(has);
            if (has) {
                Bits inner = r.bits();
                w.bits(Bits::from_bytes(lie_inner(inner.bytes(), rng, p)));
            }
        }
    }
    r.expect_done();
    return w.take();
}

inline std::vector<uint8_t> lie_inner(const std::vector<uint8_t>& body, Rng& rng, uint64_t p) {
    if (body.empty()) return body;
    ByteReader r(body);
    ByteWriter w;
    const uint8_t kind = r.u8();
    w.u8(kind);
    switch (kind) {
        case msg::kResponseList:
            while (!r.done()) {
                const uint16_t npoints = r.u16();
                w.u16(npoints);
                for (int i = 0; i < npoints; ++i) {
                    w.u8(r.u8());
                    w.u8(r.u8());
                    copy_u64_perturbed(r, w, rng, p);
                }
                const uint16_t nslices = r.u16();
                w.u16(nslices);
                for (int i = 0; i < nslices; ++i) {
                    w.u8(r.u8());
                    const uint16_t ncoef = r.u16();
                    w.u16(ncoef);
                    for (int c = 0; c < ncoef; ++c) copy_u64_perturbed(r, w, rng, p);
                }
            }
            return w.take();
        case msg::kPublishList:
            while (!r.done()) {
                const uint16_t nslices = r.u16();
                w.u16(nslices);
                for (int i = 0; i < nslices; ++i) {
                    w.u8(r.u8());
                    const uint16_t ncoef = r.u16();
                    w.u16(ncoef);
                    for (int c = 0; c < ncoef; ++c) copy_u64_perturbed(r, w, rng, p);
                }
            }
            return w.take();
        case msg::kOpenedShare:
            while (!r.done()) {
                const uint8_t has = r.u8();
                w.u8(has);
                if (has) copy_u64_perturbed(r, w, rng, p);
            }
            return w.take();
        default:
            return body;  // complaints, accusals: structure only
    }
}

}  // namespace detail

// Perturbs every share, coefficient and arbitration value inside an
// honest-generated payload while keeping it structurally valid — the
// recipient parses a well-formed message full of wrong field values.
inline Bits lie_transform(const Bits& payload, Rng& rng, uint64_t p) {
    auto body = open_payload(payload);
    if (!body || body->empty()) return payload;
    try {
        ByteReader r(*body);
        ByteWriter w;
        const uint8_t kind = r.u8();
        w.u8(kind);
        switch (kind) {
            case msg::kSlices:
                while (!r.done()) {
                    const uint16_t ncoef = r.u16();
                    w.u16(ncoef);
                    for (int c = 0; c < ncoef; ++c) detail::copy_u64_perturbed(r, w, rng, p);
                }
                return seal_payload(w.take());
            case msg::kCross:
                while (!r.done()) {
                    const uint8_t has = r.u8();
                    w.u8(has);
                    if (has) detail::copy_u64_perturbed(r, w, rng, p);
                }
                return seal_payload(w.take());
            case msg::kOutputShare: {
                const uint8_t has = r.u8();
                w.u8(has);
                if (has) detail::copy_u64_perturbed(r, w, rng, p);
                r.expect_done();
                return seal_payload(w.take());
            }
            case msg::kEigComplaints:
            case msg::kEigResponses:
            case msg::kEigAccusals:
            case msg::kEigPublish:
            case msg::kEigDiffOpen:
            case msg::kEigMaskedOpen:
                return seal_payload(detail::lie_eig(*body, rng, p));
            default:
                break;
        }
    } catch (const std::out_of_range&) {
    }
    // Unknown or unparsable: garble outright.
    return payload ^ Bits::random(rng, payload.size());
}

// Drives actively corrupted parties. Modes:
//   honest     — indistinguishable from an uncorrupted party
//   silent     — sends nothing at all
//   garble     — honest messages XORed with fresh random bits
//   lie_shares — honest messages with every field value replaced
class FullController : public AdversaryStrategy {
public:
    enum class Mode { Honest, Silent, Garble, LieShares };

    FullController(Mode mode, uint64_t modulus) : mode_(mode), modulus_(modulus) {}

    static Mode parse_mode(const std::string& name) {
        if (name == "honest") return Mode::Honest;
        if (name == "silent") return Mode::Silent;
        if (name == "garble") return Mode::Garble;
        if (name == "lie_shares") return Mode::LieShares;
        throw std::invalid_argument("full_controller: unknown mode '" + name + "'");
    }

    std::string name() const override { return "full_controller"; }

    std::vector<OutboundMessage> on_party_step(int, int, const std::vector<InboundMessage>&,
                                               std::vector<OutboundMessage> honest_outbox,
                                               Rng& rng) override {
        switch (mode_) {
            case Mode::Honest:
                return honest_outbox;
            case Mode::Silent:
                return {};
            case Mode::Garble:
                for (OutboundMessage& m : honest_outbox) {
                    m.payload = m.payload ^ Bits::random(rng, m.payload.size());
                }
                return honest_outbox;
            case Mode::LieShares:
                for (OutboundMessage& m : honest_outbox) {
                    m.payload = lie_transform(m.payload, rng, modulus_);
                }
                return honest_outbox;
        }
        return honest_outbox;
    }

private:
    Mode mode_;
    uint64_t modulus_;
};

inline std::unique_ptr<AdversaryStrategy> make_strategy(const StrategySpec& spec,
                                                        const Scenario& scenario) {
    const Json& params = spec.params;
    auto reject_unknown = [&](const std::set<std::string>& allowed) {
        for (auto it = params.begin(); it != params.end(); ++it) {
            if (!allowed.count(it.key())) {
                throw std::invalid_argument("strategy '" + spec.name + "': unknown param '" +
                                            it.key() + "'");
            }
        }
    };
    if (spec.name == "passthrough") {
        reject_unknown({});
        return std::make_unique<strategies::PassThrough>();
    }
    if (spec.name == "recorder") {
        reject_unknown({});
        return std::make_unique<strategies::Recorder>();
    }
    if (spec.name == "dropper") {
        reject_unknown({});
        return std::make_unique<strategies::Dropper>();
    }
    if (spec.name == "bitflipper") {
        reject_unknown({"mask"});
        std::string mask = params.contains("mask") ? params.at("mask").get<std::string>() : "1";
        return std::make_unique<strategies::BitFlipper>(Bits::parse(mask));
    }
    if (spec.name == "default_forcer") {
        reject_unknown({"victim"});
        if (!params.contains("victim")) {
            throw std::invalid_argument("default_forcer: missing 'victim' param");
        }
        const int victim = params.at("victim").get<int>();
        if (victim < 1 || victim > scenario.n) {
            throw std::invalid_argument("default_forcer: victim out of range");
        }
        return std::make_unique<strategies::DefaultForcer>(victim);
    }
    if (spec.name == "full_controller") {
        reject_unknown({"mode"});
        std::string mode = params.contains("mode") ? params.at("mode").get<std::string>() : "honest";
        return std::make_unique<FullController>(FullController::parse_mode(mode), scenario.p);
    }
    throw std::invalid_argument("unknown strategy '" + spec.name + "'");
}

}  // namespace aempc
