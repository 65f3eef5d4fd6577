#pragma once

// Transcripts and the reveal extractor. Reveal maps the transcripts of
// the parties guaranteed correctness to the committed input vector: it
// replays each such party's commitment fold from its recorded messages,
// takes the (necessarily agreeing) public disqualification verdicts, and
// error-corrects each dealer's share vector down to its constant term.
// Transcripts outside the correctness set are never read, which is the
// binding property in structural form.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aempc/protocol.hpp"

namespace aempc {

struct TranscriptEntry {
    int base_round = 0;
    int peer = 0;
    bool incoming = false;
    Bits payload;
    long network_round = -1;  // absolute round in slotted runs, -1 otherwise
};

struct Transcript {
    int party = 0;
    FieldElement input;
    uint64_t seed = 0;
    std::vector<TranscriptEntry> entries;
    int commitment_end = 0;  // base rounds before this belong to the commitment phase
};

struct CommittedVector {
    std::vector<FieldElement> values;  // index party-1; defaulted dealers carry zero
    std::set<int> defaulted;

    bool operator==(const CommittedVector& o) const {
        return values == o.values && defaulted == o.defaulted;
    }
};

class RevealError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline CommittedVector reveal(const std::vector<Transcript>& transcripts,
                              const std::set<int>& correctness_set, const ProtocolParams& params) {
    if (correctness_set.empty()) throw RevealError("reveal: empty correctness set");
    const int L = params.broadcast_levels();
    const int rounds = 2 + 4 * L;

    std::map<int, VssOutcome> outcomes;
    for (int i : correctness_set) {
        const Transcript& tr = transcripts.at(static_cast<size_t>(i - 1));
        if (tr.party != i) throw RevealError("reveal: transcripts out of order");
        VssConfig cfg{params.n, params.p, params.t, {params.t}, L};
        VssStage stage(cfg, i, {derive_commit_dealing(tr.input, tr.seed, params.t)});
        std::vector<std::vector<InboundMessage>> inbox(static_cast<size_t>(rounds));
        for (const TranscriptEntry& e : tr.entries) {
            if (!e.incoming || e.base_round < 0 || e.base_round >= rounds) continue;
            inbox[static_cast<size_t>(e.base_round)].push_back(InboundMessage{e.peer, e.payload});
        }
        for (int q = 0; q < rounds; ++q) {
            if (q > 0) stage.receive(q - 1, inbox[static_cast<size_t>(q - 1)]);
            stage.build(q);
        }
        stage.receive(rounds - 1, inbox[static_cast<size_t>(rounds - 1)]);
        outcomes.emplace(i, stage.finalize());
    }

    const std::set<int>& disqualified = outcomes.begin()->second.disqualified;
    for (const auto& [party, outcome] : outcomes) {
        if (outcome.disqualified != disqualified) {
            throw RevealError("reveal: diverging disqualification verdicts");
        }
    }

    CommittedVector out;
    for (int k = 1; k <= params.n; ++k) {
        if (disqualified.count(k)) {
            out.values.push_back(FieldElement::zero(params.p));
            out.defaulted.insert(k);
            continue;
        }
        std::vector<Share> points;
        for (const auto& [party, outcome] : outcomes) {
            auto share = outcome.share(k, 0, params.p);
            if (share) points.push_back(Share{party, *share});
        }
        if (static_cast<int>(points.size()) < params.t + 1) {
            throw RevealError("reveal: unrevealable, too few shares for dealer " + std::to_string(k));
        }
        const int max_err = (static_cast<int>(points.size()) - params.t - 1) / 2;
        auto value = robust_reconstruct(points, params.t, max_err);
        if (!value) {
            throw RevealError("reveal: unrevealable, inconsistent shares for dealer " +
                              std::to_string(k));
        }
        out.values.push_back(*value);
    }
    return out;
}

}  // namespace aempc
