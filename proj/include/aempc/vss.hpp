#pragma once

// Verifiable secret sharing with symmetric bivariate dealings, pairwise
// consistency checks, and a four-stage public arbitration: complaints,
// dealer responses, accusations, slice publication. A dealer whose public
// record cannot satisfy its accusers — more than t of them, a missing or
// internally inconsistent publication — is disqualified, and the publicly
// known default value is committed on its behalf.
//
// The whole stage is a deterministic fold over one party's received
// messages, so the live party and any after-the-fact transcript replay
// (the reveal extractor) share this code path.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "aempc/bits.hpp"
#include "aempc/broadcast.hpp"
#include "aempc/codec.hpp"
#include "aempc/field.hpp"
#include "aempc/strategy.hpp"

namespace aempc {

namespace msg {
// Pairwise message kinds.
constexpr uint8_t kSlices = 0x01;
constexpr uint8_t kCross = 0x02;
constexpr uint8_t kEigComplaints = 0x03;
constexpr uint8_t kEigResponses = 0x04;
constexpr uint8_t kEigAccusals = 0x05;
constexpr uint8_t kEigPublish = 0x06;
constexpr uint8_t kEigDiffOpen = 0x07;
constexpr uint8_t kEigMaskedOpen = 0x08;
constexpr uint8_t kOutputShare = 0x09;
// Broadcast (inner) payload kinds.
constexpr uint8_t kComplaintList = 0x11;
constexpr uint8_t kResponseList = 0x12;
constexpr uint8_t kAccusalList = 0x13;
constexpr uint8_t kPublishList = 0x14;
constexpr uint8_t kOpenedShare = 0x15;
}  // namespace msg

// Symmetric bivariate polynomial of degree <= d in each variable with
// F(0,0) = secret; the dealer's object.
struct BivariatePoly {
    int degree = 0;
    uint64_t modulus = 0;
    std::vector<std::vector<FieldElement>> c;  // c[i][j] == c[j][i]

    static BivariatePoly sample(const FieldElement& secret, int degree, Rng& rng) {
        BivariatePoly f;
        f.degree = degree;
        f.modulus = secret.modulus;
        f.c.assign(static_cast<size_t>(degree) + 1,
                   std::vector<FieldElement>(static_cast<size_t>(degree) + 1,
                                             FieldElement::zero(secret.modulus)));
        for (int i = 0; i <= degree; ++i) {
            for (int j = i; j <= degree; ++j) {
                FieldElement v = (i == 0 && j == 0) ? secret : FieldElement::random(rng, secret.modulus);
                f.c[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                f.c[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        }
        return f;
    }

    // F(x, ·) as a univariate polynomial in the second variable.
    Polynomial slice(int x) const {
        FieldElement fx(static_cast<uint64_t>(x), modulus);
        Polynomial out;
        out.coefficients.assign(static_cast<size_t>(degree) + 1, FieldElement::zero(modulus));
        FieldElement xpow(1, modulus);
        for (int i = 0; i <= degree; ++i) {
            for (int j = 0; j <= degree; ++j) {
                out.coefficients[static_cast<size_t>(j)] =
                    out.coefficients[static_cast<size_t>(j)] +
                    c[static_cast<size_t>(i)][static_cast<size_t>(j)] * xpow;
            }
            xpow = xpow * fx;
        }
        return out;
    }

    FieldElement at(int x, int y) const {
        return slice(x).evaluate(FieldElement(static_cast<uint64_t>(y), modulus));
    }
};

struct VssConfig {
    int n = 0;
    uint64_t modulus = 0;
    int threshold = 0;          // t: complaint/accuser bound and sharing degree base
    std::vector<int> degrees;   // one entry per dealing column, e.g. {t} or {t, 2t}
    int broadcast_levels = 0;   // t + 1
};

struct VssOutcome {
    std::set<int> disqualified;
    // final_slices[dealer-1][dealing] for the folding party.
    std::vector<std::vector<std::optional<Polynomial>>> final_slices;

    std::optional<FieldElement> share(int dealer, int dealing, uint64_t modulus) const {
        const auto& s = final_slices[static_cast<size_t>(dealer - 1)][static_cast<size_t>(dealing)];
        if (!s) return std::nullopt;
        return s->evaluate(FieldElement(0, modulus));
    }
};

// One party's fold over a VSS stage. Stage rounds, 0-based:
//   0: slices, 1: cross values, then four broadcast stages of L rounds
//   each (complaints, responses, accusations, publications).
class VssStage {
public:
    VssStage() = default;

    VssStage(VssConfig cfg, int me, std::vector<BivariatePoly> own_dealings)
        : cfg_(std::move(cfg)), me_(me), own_(std::move(own_dealings)) {
        const size_t nd = cfg_.degrees.size();
        if (own_.size() != nd) throw std::invalid_argument("VssStage: dealing count mismatch");
        slices_.assign(static_cast<size_t>(cfg_.n), std::vector<std::optional<Polynomial>>(nd));
        cross_.assign(static_cast<size_t>(cfg_.n),
                      std::vector<std::vector<std::optional<FieldElement>>>(
                          static_cast<size_t>(cfg_.n), std::vector<std::optional<FieldElement>>(nd)));
        // Own slices are immediate.
        for (size_t d = 0; d < nd; ++d) {
            slices_[static_cast<size_t>(me_ - 1)][d] = own_[d].slice(me_);
        }
        const int L = cfg_.broadcast_levels;
        complaints_bc_ = BroadcastStage(cfg_.n, L, me_);
        responses_bc_ = BroadcastStage(cfg_.n, L, me_);
        accusals_bc_ = BroadcastStage(cfg_.n, L, me_);
        publish_bc_ = BroadcastStage(cfg_.n, L, me_);
    }

    int total_rounds() const { return 2 + 4 * cfg_.broadcast_levels; }

    // Outbound payloads for stage round q; pairwise rounds return one entry
    // per recipient, broadcast rounds one identical entry per recipient.
    std::vector<OutboundMessage> build(int q) {
        std::vector<OutboundMessage> out;
        const int L = cfg_.broadcast_levels;
        if (q == 0) {
            for (int j = 1; j <= cfg_.n; ++j) {
                if (j == me_) continue;
                out.push_back(OutboundMessage{j, slices_message(j)});
            }
        } else if (q == 1) {
            for (int j = 1; j <= cfg_.n; ++j) {
                if (j == me_) continue;
                out.push_back(OutboundMessage{j, cross_message(j)});
            }
        } else if (q < 2 + L) {
            if (q == 2) complaints_bc_.set_own_payload(complaints_payload());
            broadcast_round(complaints_bc_, msg::kEigComplaints, q - 2, out);
        } else if (q < 2 + 2 * L) {
            if (q == 2 + L) {
                resolve_complaints();
                responses_bc_.set_own_payload(responses_payload());
            }
            broadcast_round(responses_bc_, msg::kEigResponses, q - 2 - L, out);
        } else if (q < 2 + 3 * L) {
            if (q == 2 + 2 * L) {
                resolve_responses();
                accusals_bc_.set_own_payload(accusals_payload());
            }
            broadcast_round(accusals_bc_, msg::kEigAccusals, q - 2 - 2 * L, out);
        } else if (q < 2 + 4 * L) {
            if (q == 2 + 3 * L) {
                resolve_accusals();
                publish_bc_.set_own_payload(publish_payload());
            }
            broadcast_round(publish_bc_, msg::kEigPublish, q - 2 - 3 * L, out);
        }
        return out;
    }

    void receive(int q, const std::vector<InboundMessage>& inbox) {
        const int L = cfg_.broadcast_levels;
        for (const InboundMessage& m : inbox) {
            auto body = open_payload(m.payload);
            if (!body) continue;
            if (q == 0) {
                receive_slices(m.from, *body);
            } else if (q == 1) {
                receive_cross(m.from, *body);
            } else if (q < 2 + L) {
                receive_broadcast(complaints_bc_, msg::kEigComplaints, q - 2, m.from, *body);
            } else if (q < 2 + 2 * L) {
                receive_broadcast(responses_bc_, msg::kEigResponses, q - 2 - L, m.from, *body);
            } else if (q < 2 + 3 * L) {
                receive_broadcast(accusals_bc_, msg::kEigAccusals, q - 2 - 2 * L, m.from, *body);
            } else if (q < 2 + 4 * L) {
                receive_broadcast(publish_bc_, msg::kEigPublish, q - 2 - 3 * L, m.from, *body);
            }
        }
    }

    // Call once, after the last stage round's messages were received.
    VssOutcome finalize() {
        resolve_publications();
        VssOutcome out;
        out.final_slices.assign(static_cast<size_t>(cfg_.n),
                                std::vector<std::optional<Polynomial>>(cfg_.degrees.size()));
        for (int k = 1; k <= cfg_.n; ++k) {
            if (dealer_disqualified(k)) {
                out.disqualified.insert(k);
                continue;
            }
            for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                auto published = published_slice(k, static_cast<int>(d), me_);
                if (published) {
                    out.final_slices[static_cast<size_t>(k - 1)][d] = *published;
                } else {
                    out.final_slices[static_cast<size_t>(k - 1)][d] =
                        slices_[static_cast<size_t>(k - 1)][d];
                }
            }
        }
        return out;
    }

    // Resolved broadcast outcome accessors, for tests.
    std::optional<Bits> complaint_broadcast(int source) const { return complaints_bc_.resolve(source); }

private:
    struct Complaint {
        int dealer = 0;
        int dealing = 0;
        bool no_slice = false;
        int partner = 0;
    };

    struct Published {
        // per dealing: arbitration points keyed by unordered pair, and
        // published whole slices keyed by holder.
        std::vector<std::map<std::pair<int, int>, FieldElement>> points;
        std::vector<std::map<int, Polynomial>> slices;
        bool garbage = false;  // malformed duplicate/conflicting artifacts
    };

    Bits slices_message(int to) const {
        ByteWriter w;
        w.u8(msg::kSlices);
        for (size_t d = 0; d < own_.size(); ++d) {
            Polynomial s = own_[d].slice(to);
            w.u16(static_cast<uint16_t>(s.coefficients.size()));
            for (const FieldElement& c : s.coefficients) w.field(c);
        }
        return seal_payload(w.take());
    }

    void receive_slices(int from, const std::vector<uint8_t>& body) {
        try {
            ByteReader r(body);
            if (r.u8() != msg::kSlices) return;
            std::vector<Polynomial> parsed;
            for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                const int ncoef = r.u16();
                if (ncoef != cfg_.degrees[d] + 1) return;
                Polynomial s;
                for (int i = 0; i < ncoef; ++i) s.coefficients.push_back(r.field(cfg_.modulus));
                parsed.push_back(std::move(s));
            }
            r.expect_done();
            for (size_t d = 0; d < parsed.size(); ++d) {
                slices_[static_cast<size_t>(from - 1)][d] = std::move(parsed[d]);
            }
        } catch (const std::out_of_range&) {
        }
    }

    Bits cross_message(int to) const {
        ByteWriter w;
        w.u8(msg::kCross);
        for (int k = 1; k <= cfg_.n; ++k) {
            for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                const auto& s = slices_[static_cast<size_t>(k - 1)][d];
                if (s) {
                    w.u8(1);
                    w.field(s->evaluate(FieldElement(static_cast<uint64_t>(to), cfg_.modulus)));
                } else {
                    w.u8(0);
                }
            }
        }
        return seal_payload(w.take());
    }

    void receive_cross(int from, const std::vector<uint8_t>& body) {
        try {
            ByteReader r(body);
            if (r.u8() != msg::kCross) return;
            std::vector<std::vector<std::optional<FieldElement>>> parsed(
                static_cast<size_t>(cfg_.n),
                std::vector<std::optional<FieldElement>>(cfg_.degrees.size()));
            for (int k = 1; k <= cfg_.n; ++k) {
                for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                    if (r.u8() != 0) {
                        parsed[static_cast<size_t>(k - 1)][d] = r.field(cfg_.modulus);
                    }
                }
            }
            r.expect_done();
            cross_[static_cast<size_t>(from - 1)] = std::move(parsed);
        } catch (const std::out_of_range&) {
        }
    }

    void broadcast_round(BroadcastStage& bc, uint8_t kind, int level_index,
                         std::vector<OutboundMessage>& out) {
        Bits relay = bc.build_message(level_index + 1);
        ByteWriter w;
        w.u8(kind);
        w.raw(relay.bytes());
        Bits payload = seal_payload(w.take());
        for (int j = 1; j <= cfg_.n; ++j) {
            if (j == me_) continue;
            out.push_back(OutboundMessage{j, payload});
        }
    }

    void receive_broadcast(BroadcastStage& bc, uint8_t kind, int level_index, int from,
                           const std::vector<uint8_t>& body) {
        if (body.empty() || body[0] != kind) return;
        bc.receive(level_index + 1, from, std::vector<uint8_t>(body.begin() + 1, body.end()));
    }

    Bits complaints_payload() {
        my_complaints_.clear();
        for (int k = 1; k <= cfg_.n; ++k) {
            for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                const auto& mine = slices_[static_cast<size_t>(k - 1)][d];
                if (!mine) {
                    my_complaints_.push_back(Complaint{k, static_cast<int>(d), true, 0});
                    continue;
                }
                for (int i = 1; i <= cfg_.n; ++i) {
                    if (i == me_) continue;
                    const auto& got = cross_[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)][d];
                    FieldElement expect =
                        mine->evaluate(FieldElement(static_cast<uint64_t>(i), cfg_.modulus));
                    if (!got || *got != expect) {
                        my_complaints_.push_back(Complaint{k, static_cast<int>(d), false, i});
                    }
                }
            }
        }
        ByteWriter w;
        w.u8(msg::kComplaintList);
        w.u16(static_cast<uint16_t>(my_complaints_.size()));
        for (const Complaint& c : my_complaints_) {
            w.u8(static_cast<uint8_t>(c.dealer));
            w.u8(static_cast<uint8_t>(c.dealing));
            w.u8(c.no_slice ? 1 : 0);
            w.u8(static_cast<uint8_t>(c.partner));
        }
        return Bits::from_bytes(w.take());
    }

    void resolve_complaints() {
        complaints_.assign(static_cast<size_t>(cfg_.n), {});
        for (int src = 1; src <= cfg_.n; ++src) {
            auto payload = complaints_bc_.resolve(src);
            if (!payload) continue;
            try {
                ByteReader r(payload->bytes());
                if (r.u8() != msg::kComplaintList) continue;
                const int count = r.u16();
                std::vector<Complaint> list;
                for (int i = 0; i < count; ++i) {
                    Complaint c;
                    c.dealer = r.u8();
                    c.dealing = r.u8();
                    c.no_slice = r.u8() != 0;
                    c.partner = r.u8();
                    if (c.dealer < 1 || c.dealer > cfg_.n) continue;
                    if (c.dealing < 0 || c.dealing >= static_cast<int>(cfg_.degrees.size())) continue;
                    if (!c.no_slice && (c.partner < 1 || c.partner > cfg_.n)) continue;
                    list.push_back(c);
                }
                complaints_[static_cast<size_t>(src - 1)] = std::move(list);
            } catch (const std::out_of_range&) {
            }
        }
    }

    Bits responses_payload() const {
        // Answer every broadcast complaint against our own dealings: the
        // arbitration point for a pair mismatch, the whole slice for a
        // missing-slice complaint.
        std::vector<std::map<std::pair<int, int>, FieldElement>> points(cfg_.degrees.size());
        std::vector<std::map<int, Polynomial>> slices(cfg_.degrees.size());
        for (int src = 1; src <= cfg_.n; ++src) {
            for (const Complaint& c : complaints_[static_cast<size_t>(src - 1)]) {
                if (c.dealer != me_) continue;
                const size_t d = static_cast<size_t>(c.dealing);
                if (c.no_slice) {
                    slices[d].emplace(src, own_[d].slice(src));
                } else {
                    auto key = std::minmax(src, c.partner);
                    points[d].emplace(std::pair<int, int>(key.first, key.second),
                                      own_[d].at(key.first, key.second));
                }
            }
        }
        ByteWriter w;
        w.u8(msg::kResponseList);
        for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
            w.u16(static_cast<uint16_t>(points[d].size()));
            for (const auto& [key, v] : points[d]) {
                w.u8(static_cast<uint8_t>(key.first));
                w.u8(static_cast<uint8_t>(key.second));
                w.field(v);
            }
            w.u16(static_cast<uint16_t>(slices[d].size()));
            for (const auto& [holder, poly] : slices[d]) {
                w.u8(static_cast<uint8_t>(holder));
                w.u16(static_cast<uint16_t>(poly.coefficients.size()));
                for (const FieldElement& c : poly.coefficients) w.field(c);
            }
        }
        return Bits::from_bytes(w.take());
    }

    void parse_published(const std::optional<Bits>& payload, uint8_t kind, Published* out) const {
        if (!payload) return;
        try {
            ByteReader r(payload->bytes());
            if (r.u8() != kind) return;
            for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
                if (kind == msg::kResponseList) {
                    const int npoints = r.u16();
                    for (int i = 0; i < npoints; ++i) {
                        int a = r.u8();
                        int b = r.u8();
                        FieldElement v = r.field(cfg_.modulus);
                        if (a < 1 || b < 1 || a > cfg_.n || b > cfg_.n || a >= b) {
                            out->garbage = true;
                            continue;
                        }
                        auto [it, fresh] = out->points[d].emplace(std::pair<int, int>(a, b), v);
                        if (!fresh && it->second != v) out->garbage = true;
                    }
                }
                const int nslices = r.u16();
                for (int i = 0; i < nslices; ++i) {
                    int holder = r.u8();
                    const int ncoef = r.u16();
                    Polynomial poly;
                    for (int cix = 0; cix < ncoef; ++cix) {
                        poly.coefficients.push_back(r.field(cfg_.modulus));
                    }
                    if (holder < 1 || holder > cfg_.n || ncoef != cfg_.degrees[d] + 1) {
                        out->garbage = true;
                        continue;
                    }
                    auto [it, fresh] = out->slices[d].emplace(holder, poly);
                    if (!fresh && !(it->second == poly)) out->garbage = true;
                }
            }
            r.expect_done();
        } catch (const std::out_of_range&) {
            out->garbage = true;
        }
    }

    void resolve_responses() {
        published_.assign(static_cast<size_t>(cfg_.n), Published{});
        for (int k = 1; k <= cfg_.n; ++k) {
            Published& pub = published_[static_cast<size_t>(k - 1)];
            pub.points.resize(cfg_.degrees.size());
            pub.slices.resize(cfg_.degrees.size());
            parse_published(responses_bc_.resolve(k), msg::kResponseList, &pub);
        }
    }

    Bits accusals_payload() {
        my_accusals_.clear();
        for (int k = 1; k <= cfg_.n; ++k) {
            if (k != me_ && accuses(k)) my_accusals_.insert(k);
        }
        ByteWriter w;
        w.u8(msg::kAccusalList);
        w.u16(static_cast<uint16_t>(my_accusals_.size()));
        for (int k : my_accusals_) w.u8(static_cast<uint8_t>(k));
        return Bits::from_bytes(w.take());
    }

    bool accuses(int dealer) const {
        const Published& pub = published_[static_cast<size_t>(dealer - 1)];
        for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
            const auto& mine = slices_[static_cast<size_t>(dealer - 1)][d];
            // Grievances of our own that went unanswered.
            for (const Complaint& c : my_complaints_) {
                if (c.dealer != dealer || static_cast<size_t>(c.dealing) != d) continue;
                if (c.no_slice) {
                    if (!pub.slices[d].count(me_)) return true;
                } else {
                    auto key = std::minmax(me_, c.partner);
                    if (!pub.points[d].count({key.first, key.second})) return true;
                }
            }
            if (mine) {
                // Public artifacts that contradict our retained slice.
                for (const auto& [key, v] : pub.points[d]) {
                    int other = 0;
                    if (key.first == me_) other = key.second;
                    if (key.second == me_) other = key.first;
                    if (other == 0) continue;
                    if (mine->evaluate(FieldElement(static_cast<uint64_t>(other), cfg_.modulus)) != v) {
                        return true;
                    }
                }
                for (const auto& [holder, poly] : pub.slices[d]) {
                    if (holder == me_) continue;
                    FieldElement theirs =
                        poly.evaluate(FieldElement(static_cast<uint64_t>(me_), cfg_.modulus));
                    FieldElement ours =
                        mine->evaluate(FieldElement(static_cast<uint64_t>(holder), cfg_.modulus));
                    if (theirs != ours) return true;
                }
            }
        }
        return false;
    }

    void resolve_accusals() {
        accusers_.assign(static_cast<size_t>(cfg_.n), {});
        for (int src = 1; src <= cfg_.n; ++src) {
            auto payload = accusals_bc_.resolve(src);
            if (!payload) continue;
            try {
                ByteReader r(payload->bytes());
                if (r.u8() != msg::kAccusalList) continue;
                const int count = r.u16();
                for (int i = 0; i < count; ++i) {
                    const int dealer = r.u8();
                    if (dealer >= 1 && dealer <= cfg_.n && dealer != src) {
                        accusers_[static_cast<size_t>(dealer - 1)].insert(src);
                    }
                }
            } catch (const std::out_of_range&) {
            }
        }
    }

    Bits publish_payload() const {
        // Publish whole slices for every accuser of our dealings.
        ByteWriter w;
        w.u8(msg::kPublishList);
        const auto& mine = accusers_[static_cast<size_t>(me_ - 1)];
        for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
            w.u16(static_cast<uint16_t>(mine.size()));
            for (int a : mine) {
                Polynomial s = own_[d].slice(a);
                w.u8(static_cast<uint8_t>(a));
                w.u16(static_cast<uint16_t>(s.coefficients.size()));
                for (const FieldElement& c : s.coefficients) w.field(c);
            }
        }
        return Bits::from_bytes(w.take());
    }

    void resolve_publications() {
        for (int k = 1; k <= cfg_.n; ++k) {
            parse_published(publish_bc_.resolve(k), msg::kPublishList,
                            &published_[static_cast<size_t>(k - 1)]);
        }
    }

    std::optional<Polynomial> published_slice(int dealer, int dealing, int holder) const {
        const Published& pub = published_[static_cast<size_t>(dealer - 1)];
        auto it = pub.slices[static_cast<size_t>(dealing)].find(holder);
        if (it == pub.slices[static_cast<size_t>(dealing)].end()) return std::nullopt;
        return it->second;
    }

    bool dealer_disqualified(int dealer) const {
        const Published& pub = published_[static_cast<size_t>(dealer - 1)];
        const auto& accusers = accusers_[static_cast<size_t>(dealer - 1)];
        if (static_cast<int>(accusers.size()) > cfg_.threshold) return true;
        if (pub.garbage) return true;
        for (size_t d = 0; d < cfg_.degrees.size(); ++d) {
            for (int a : accusers) {
                if (!pub.slices[d].count(a)) return true;
            }
            // All published artifacts must agree with each other.
            for (const auto& [key, v] : pub.points[d]) {
                auto sa = pub.slices[d].find(key.first);
                if (sa != pub.slices[d].end() &&
                    sa->second.evaluate(FieldElement(static_cast<uint64_t>(key.second), cfg_.modulus)) != v) {
                    return true;
                }
                auto sb = pub.slices[d].find(key.second);
                if (sb != pub.slices[d].end() &&
                    sb->second.evaluate(FieldElement(static_cast<uint64_t>(key.first), cfg_.modulus)) != v) {
                    return true;
                }
            }
            for (auto it = pub.slices[d].begin(); it != pub.slices[d].end(); ++it) {
                for (auto jt = std::next(it); jt != pub.slices[d].end(); ++jt) {
                    FieldElement ab = it->second.evaluate(
                        FieldElement(static_cast<uint64_t>(jt->first), cfg_.modulus));
                    FieldElement ba = jt->second.evaluate(
                        FieldElement(static_cast<uint64_t>(it->first), cfg_.modulus));
                    if (ab != ba) return true;
                }
            }
        }
        return false;
    }

    VssConfig cfg_;
    int me_ = 0;
    std::vector<BivariatePoly> own_;

    std::vector<std::vector<std::optional<Polynomial>>> slices_;  // [dealer-1][dealing]
    // cross_[sender-1][dealer-1][dealing]: value sender claims for us.
    std::vector<std::vector<std::vector<std::optional<FieldElement>>>> cross_;

    BroadcastStage complaints_bc_, responses_bc_, accusals_bc_, publish_bc_;
    std::vector<Complaint> my_complaints_;
    std::vector<std::vector<Complaint>> complaints_;  // [source-1]
    std::vector<Published> published_;                // [dealer-1]
    std::set<int> my_accusals_;
    std::vector<std::set<int>> accusers_;  // [dealer-1]
};

}  // namespace aempc
