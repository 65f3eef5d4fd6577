#pragma once

// The two-phase protocol: a VSS input-commitment phase with public
// disqualification, then circuit evaluation on shares — linear gates
// local, multiplication by masked opening against a verified double
// sharing, output by share exchange with error-corrected reconstruction.
//
// The protocol is written against base rounds: in base round b a party
// may send one message to each other party, and everything sent in base
// round b is readable when computing base round b+1. Runners map base
// rounds either directly (one network round each) or onto the slotted
// super-round schedule.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "aempc/circuit.hpp"
#include "aempc/codec.hpp"
#include "aempc/field.hpp"
#include "aempc/scenario.hpp"
#include "aempc/strategy.hpp"
#include "aempc/vss.hpp"

namespace aempc {

enum class RunPhase { Full, CommitmentOnly };

struct ProtocolParams {
    int n = 0;
    uint64_t p = 0;
    int t = 0;
    CircuitDescription circuit;
    RunPhase phase = RunPhase::Full;

    int broadcast_levels() const { return t + 1; }

    static ProtocolParams from_scenario(const Scenario& s, RunPhase phase) {
        ProtocolParams params;
        params.n = s.n;
        params.p = s.p;
        params.t = s.threshold();
        params.circuit = s.circuit;
        params.phase = phase;
        return params;
    }
};

enum class StageKind {
    CommitVss,      // sub = round within the commitment VSS stage
    MulVss,         // sub = round within the gate's double-dealing VSS stage
    MulDiffOpen,    // sub = broadcast level index
    MulMaskedOpen,  // sub = broadcast level index
    OutputShares,   // single round
};

struct LayoutEntry {
    StageKind kind = StageKind::CommitVss;
    int gate = -1;
    int sub = 0;
};

struct ProgramLayout {
    std::vector<LayoutEntry> rounds;
    int commitment_rounds = 0;

    int total_base_rounds() const { return static_cast<int>(rounds.size()); }

    static ProgramLayout build(const ProtocolParams& params) {
        ProgramLayout layout;
        const int L = params.broadcast_levels();
        const int vss_rounds = 2 + 4 * L;
        for (int q = 0; q < vss_rounds; ++q) {
            layout.rounds.push_back(LayoutEntry{StageKind::CommitVss, -1, q});
        }
        layout.commitment_rounds = vss_rounds;
        if (params.phase == RunPhase::CommitmentOnly) return layout;
        for (size_t g = 0; g < params.circuit.gates.size(); ++g) {
            switch (params.circuit.gates[g].op) {
                case Gate::Op::Add:
                case Gate::Op::ScalarMul:
                    break;  // local
                case Gate::Op::Mul:
                    for (int q = 0; q < vss_rounds; ++q) {
                        layout.rounds.push_back(LayoutEntry{StageKind::MulVss, static_cast<int>(g), q});
                    }
                    for (int q = 0; q < L; ++q) {
                        layout.rounds.push_back(
                            LayoutEntry{StageKind::MulDiffOpen, static_cast<int>(g), q});
                    }
                    for (int q = 0; q < L; ++q) {
                        layout.rounds.push_back(
                            LayoutEntry{StageKind::MulMaskedOpen, static_cast<int>(g), q});
                    }
                    break;
                case Gate::Op::Output:
                    layout.rounds.push_back(LayoutEntry{StageKind::OutputShares, static_cast<int>(g), 0});
                    break;
            }
        }
        return layout;
    }
};

// Deterministic re-derivation of a party's commitment dealing from its
// transcript (input, seed); the first draw on the party's stream.
inline BivariatePoly derive_commit_dealing(const FieldElement& input, uint64_t seed, int t) {
    Rng rng(seed);
    return BivariatePoly::sample(input, t, rng);
}

class HonestParty {
public:
    HonestParty(const ProtocolParams& params, int me, FieldElement input, uint64_t seed)
        : params_(params), me_(me), input_(input), seed_(seed), rng_(seed),
          layout_(ProgramLayout::build(params)) {
        VssConfig commit_cfg{params_.n, params_.p, params_.t, {params_.t},
                             params_.broadcast_levels()};
        BivariatePoly dealing = BivariatePoly::sample(input_, params_.t, rng_);
        commit_ = VssStage(commit_cfg, me_, {dealing});
        if (params_.phase == RunPhase::Full) {
            for (size_t g = 0; g < params_.circuit.gates.size(); ++g) {
                if (params_.circuit.gates[g].op != Gate::Op::Mul) continue;
                MulState st;
                FieldElement r = FieldElement::random(rng_, params_.p);
                VssConfig cfg{params_.n, params_.p, params_.t,
                              {params_.t, 2 * params_.t}, params_.broadcast_levels()};
                st.vss = VssStage(cfg, me_,
                                  {BivariatePoly::sample(r, params_.t, rng_),
                                   BivariatePoly::sample(r, 2 * params_.t, rng_)});
                st.diff_bc = BroadcastStage(params_.n, params_.broadcast_levels(), me_);
                st.masked_bc = BroadcastStage(params_.n, params_.broadcast_levels(), me_);
                mul_.emplace(static_cast<int>(g), std::move(st));
            }
            wires_.assign(static_cast<size_t>(params_.n) + params_.circuit.gates.size(),
                          std::nullopt);
        }
    }

    int total_base_rounds() const { return layout_.total_base_rounds(); }

    std::vector<OutboundMessage> step(int base_round, const std::vector<InboundMessage>& inbox) {
        if (base_round > 0) handle_incoming(base_round - 1, inbox);
        return build_outgoing(base_round);
    }

    void finish(const std::vector<InboundMessage>& inbox) {
        handle_incoming(layout_.total_base_rounds() - 1, inbox);
    }

    const VssOutcome* commitment_outcome() const {
        return commit_done_ ? &commit_outcome_ : nullptr;
    }

    std::optional<FieldElement> output() const { return output_; }

    // Share this party holds for a given input's dealer after commitment;
    // disqualified dealers carry the public default (zero) sharing.
    std::optional<FieldElement> input_share(int dealer) const {
        if (!commit_done_) return std::nullopt;
        if (commit_outcome_.disqualified.count(dealer)) return FieldElement::zero(params_.p);
        return commit_outcome_.share(dealer, 0, params_.p);
    }

private:
    struct MulState {
        VssStage vss;
        VssOutcome outcome;
        bool vss_done = false;
        BroadcastStage diff_bc;
        BroadcastStage masked_bc;
        std::set<int> qualified;
        std::optional<FieldElement> mask_low;   // sum of degree-t shares over qualified dealers
        std::optional<FieldElement> mask_high;  // sum of degree-2t shares
    };

    void handle_incoming(int base_round, const std::vector<InboundMessage>& inbox) {
        const LayoutEntry& e = layout_.rounds[static_cast<size_t>(base_round)];
        switch (e.kind) {
            case StageKind::CommitVss:
                commit_.receive(e.sub, inbox);
                if (e.sub == commit_.total_rounds() - 1) {
                    commit_outcome_ = commit_.finalize();
                    commit_done_ = true;
                    if (params_.phase == RunPhase::Full) seed_input_wires();
                }
                break;
            case StageKind::MulVss: {
                MulState& st = mul_.at(e.gate);
                st.vss.receive(e.sub, inbox);
                if (e.sub == st.vss.total_rounds() - 1) {
                    st.outcome = st.vss.finalize();
                    st.vss_done = true;
                }
                break;
            }
            case StageKind::MulDiffOpen: {
                MulState& st = mul_.at(e.gate);
                receive_opened(st.diff_bc, e.sub, inbox);
                if (e.sub == params_.broadcast_levels() - 1) resolve_diff(e.gate);
                break;
            }
            case StageKind::MulMaskedOpen: {
                MulState& st = mul_.at(e.gate);
                receive_opened(st.masked_bc, e.sub, inbox);
                if (e.sub == params_.broadcast_levels() - 1) resolve_masked(e.gate);
                break;
            }
            case StageKind::OutputShares: {
                for (const InboundMessage& m : inbox) {
                    auto body = open_payload(m.payload);
                    if (!body) continue;
                    try {
                        ByteReader r(*body);
                        if (r.u8() != msg::kOutputShare) continue;
                        if (r.u8() != 0) {
                            FieldElement v = r.field(params_.p);
                            r.expect_done();
                            output_points_[m.from] = v;
                        }
                    } catch (const std::out_of_range&) {
                    }
                }
                resolve_output();
                break;
            }
        }
    }

    std::vector<OutboundMessage> build_outgoing(int base_round) {
        const LayoutEntry& e = layout_.rounds[static_cast<size_t>(base_round)];
        switch (e.kind) {
            case StageKind::CommitVss:
                return commit_.build(e.sub);
            case StageKind::MulVss:
                return mul_.at(e.gate).vss.build(e.sub);
            case StageKind::MulDiffOpen: {
                MulState& st = mul_.at(e.gate);
                if (e.sub == 0) st.diff_bc.set_own_payload(diff_payload(e.gate));
                return broadcast_out(st.diff_bc, msg::kEigDiffOpen, e.sub);
            }
            case StageKind::MulMaskedOpen: {
                MulState& st = mul_.at(e.gate);
                if (e.sub == 0) st.masked_bc.set_own_payload(masked_payload(e.gate));
                return broadcast_out(st.masked_bc, msg::kEigMaskedOpen, e.sub);
            }
            case StageKind::OutputShares: {
                run_linear_gates(e.gate);
                ByteWriter w;
                w.u8(msg::kOutputShare);
                const int wire = params_.circuit.gates[static_cast<size_t>(e.gate)].a;
                const auto& v = wires_[static_cast<size_t>(wire)];
                if (v) {
                    w.u8(1);
                    w.field(*v);
                    output_points_[me_] = *v;
                } else {
                    w.u8(0);
                }
                Bits payload = seal_payload(w.take());
                std::vector<OutboundMessage> out;
                for (int j = 1; j <= params_.n; ++j) {
                    if (j != me_) out.push_back(OutboundMessage{j, payload});
                }
                return out;
            }
        }
        return {};
    }

    std::vector<OutboundMessage> broadcast_out(BroadcastStage& bc, uint8_t kind, int level_index) {
        Bits relay = bc.build_message(level_index + 1);
        ByteWriter w;
        w.u8(kind);
        w.raw(relay.bytes());
        Bits payload = seal_payload(w.take());
        std::vector<OutboundMessage> out;
        for (int j = 1; j <= params_.n; ++j) {
            if (j != me_) out.push_back(OutboundMessage{j, payload});
        }
        return out;
    }

    void receive_opened(BroadcastStage& bc, int level_index, const std::vector<InboundMessage>& inbox) {
        for (const InboundMessage& m : inbox) {
            auto body = open_payload(m.payload);
            if (!body || body->empty()) continue;
            const uint8_t kind = (*body)[0];
            if (kind != msg::kEigDiffOpen && kind != msg::kEigMaskedOpen) continue;
            bc.receive(level_index + 1, m.from,
                       std::vector<uint8_t>(body->begin() + 1, body->end()));
        }
    }

    void seed_input_wires() {
        for (int k = 1; k <= params_.n; ++k) {
            wires_[static_cast<size_t>(k - 1)] = input_share(k);
        }
        run_linear_gates(static_cast<int>(params_.circuit.gates.size()));
    }

    // Fold all local gates with index < stop whose operands are ready.
    void run_linear_gates(int stop) {
        for (int g = 0; g < stop; ++g) {
            const Gate& gate = params_.circuit.gates[static_cast<size_t>(g)];
            const size_t out_wire = static_cast<size_t>(params_.n + g);
            if (wires_[out_wire]) continue;
            switch (gate.op) {
                case Gate::Op::Add: {
                    const auto& a = wires_[static_cast<size_t>(gate.a)];
                    const auto& b = wires_[static_cast<size_t>(gate.b)];
                    if (a && b) wires_[out_wire] = *a + *b;
                    break;
                }
                case Gate::Op::ScalarMul: {
                    const auto& a = wires_[static_cast<size_t>(gate.a)];
                    if (a) wires_[out_wire] = *a * FieldElement(gate.scalar, params_.p);
                    break;
                }
                case Gate::Op::Mul:
                case Gate::Op::Output:
                    break;  // handled by their stages
            }
        }
    }

    Bits diff_payload(int gate) {
        MulState& st = mul_.at(gate);
        ByteWriter w;
        w.u8(msg::kOpenedShare);
        for (int k = 1; k <= params_.n; ++k) {
            std::optional<FieldElement> diff;
            if (st.vss_done && !st.outcome.disqualified.count(k)) {
                auto low = st.outcome.share(k, 0, params_.p);
                auto high = st.outcome.share(k, 1, params_.p);
                if (low && high) diff = *high - *low;
            }
            if (diff) {
                w.u8(1);
                w.field(*diff);
            } else {
                w.u8(0);
            }
        }
        return Bits::from_bytes(w.take());
    }

    // Points (party, value) parsed out of a resolved opened-share
    // broadcast; one optional value per dealer column.
    std::vector<std::vector<std::optional<FieldElement>>> parse_opened(BroadcastStage& bc,
                                                                       size_t columns) {
        std::vector<std::vector<std::optional<FieldElement>>> got(
            static_cast<size_t>(params_.n),
            std::vector<std::optional<FieldElement>>(columns));
        for (int src = 1; src <= params_.n; ++src) {
            auto payload = bc.resolve(src);
            if (!payload) continue;
            try {
                ByteReader r(payload->bytes());
                if (r.u8() != msg::kOpenedShare) continue;
                std::vector<std::optional<FieldElement>> row(columns);
                for (size_t c = 0; c < columns; ++c) {
                    if (r.u8() != 0) row[c] = r.field(params_.p);
                }
                r.expect_done();
                got[static_cast<size_t>(src - 1)] = std::move(row);
            } catch (const std::out_of_range&) {
            }
        }
        return got;
    }

    void resolve_diff(int gate) {
        MulState& st = mul_.at(gate);
        auto opened = parse_opened(st.diff_bc, static_cast<size_t>(params_.n));
        st.qualified.clear();
        for (int k = 1; k <= params_.n; ++k) {
            if (!st.vss_done || st.outcome.disqualified.count(k)) continue;
            std::vector<Share> pts;
            for (int i = 1; i <= params_.n; ++i) {
                const auto& v = opened[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)];
                if (v) pts.push_back(Share{i, *v});
            }
            const int deg = 2 * params_.t;
            if (static_cast<int>(pts.size()) < deg + 1) continue;
            const int max_err = (static_cast<int>(pts.size()) - deg - 1) / 2;
            auto c = robust_reconstruct(pts, deg, max_err);
            if (c && c->value == 0) st.qualified.insert(k);
        }
        // Aggregate this party's mask shares over the agreed dealer set.
        FieldElement low = FieldElement::zero(params_.p);
        FieldElement high = FieldElement::zero(params_.p);
        bool ok = !st.qualified.empty();
        for (int k : st.qualified) {
            auto l = st.outcome.share(k, 0, params_.p);
            auto h = st.outcome.share(k, 1, params_.p);
            if (!l || !h) {
                ok = false;
                break;
            }
            low = low + *l;
            high = high + *h;
        }
        if (ok) {
            st.mask_low = low;
            st.mask_high = high;
        }
    }

    Bits masked_payload(int gate) {
        MulState& st = mul_.at(gate);
        const Gate& g = params_.circuit.gates[static_cast<size_t>(gate)];
        run_linear_gates(gate);
        const auto& a = wires_[static_cast<size_t>(g.a)];
        const auto& b = wires_[static_cast<size_t>(g.b)];
        ByteWriter w;
        w.u8(msg::kOpenedShare);
        if (a && b && st.mask_high) {
            w.u8(1);
            w.field(*a * *b + *st.mask_high);
        } else {
            w.u8(0);
        }
        return Bits::from_bytes(w.take());
    }

    void resolve_masked(int gate) {
        MulState& st = mul_.at(gate);
        auto opened = parse_opened(st.masked_bc, 1);
        std::vector<Share> pts;
        for (int i = 1; i <= params_.n; ++i) {
            const auto& v = opened[static_cast<size_t>(i - 1)][0];
            if (v) pts.push_back(Share{i, *v});
        }
        const size_t out_wire = static_cast<size_t>(params_.n + gate);
        const int deg = 2 * params_.t;
        if (static_cast<int>(pts.size()) < deg + 1 || !st.mask_low) return;
        const int max_err = (static_cast<int>(pts.size()) - deg - 1) / 2;
        auto masked = robust_reconstruct(pts, deg, max_err);
        if (!masked) return;
        wires_[out_wire] = *masked - *st.mask_low;
    }

    void resolve_output() {
        std::vector<Share> pts;
        for (const auto& [party, v] : output_points_) {
            pts.push_back(Share{party, v});
        }
        if (static_cast<int>(pts.size()) < params_.t + 1) return;
        const int max_err = (static_cast<int>(pts.size()) - params_.t - 1) / 2;
        auto v = robust_reconstruct(pts, params_.t, max_err);
        if (v) output_ = *v;
    }

    ProtocolParams params_;
    int me_ = 0;
    FieldElement input_;
    uint64_t seed_ = 0;
    Rng rng_;
    ProgramLayout layout_;

    VssStage commit_;
    VssOutcome commit_outcome_;
    bool commit_done_ = false;

    std::map<int, MulState> mul_;
    std::vector<std::optional<FieldElement>> wires_;
    std::map<int, FieldElement> output_points_;
    std::optional<FieldElement> output_;
};

}  // namespace aempc
