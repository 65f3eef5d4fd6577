#pragma once

// Verdict engine: checks the correctness definition against a run record,
// estimates the total-variation distance between adversary-view
// distributions for the privacy definition's observable consequence, and
// the binding check driver.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aempc/record.hpp"
#include "aempc/runner.hpp"

namespace aempc {

// Thresholds live in one place rather than inline at call sites; the CLI
// overrides per flag.
struct PrivacyConfig {
    int trials = 20000;
    double tolerance = 0.05;
    double negative_floor = 0.9;
};

struct PartyVerdict {
    int party = 0;
    bool guaranteed = false;  // in the predicted correctness set
    bool committed_ok = false;
    bool output_ok = false;

    bool pass() const { return !guaranteed || (committed_ok && output_ok); }
};

struct CorrectnessReport {
    bool pass = true;
    uint64_t expected_output = 0;
    std::vector<PartyVerdict> verdicts;
    std::string first_divergence;  // earliest trace entry differing from the adversary-free twin

    std::string summary() const {
        std::string s;
        for (const PartyVerdict& v : verdicts) {
            s += "P" + std::to_string(v.party) + ":" +
                 (v.guaranteed ? (v.pass() ? "pass" : "FAIL") : "unguaranteed") + " ";
        }
        return s;
    }
};

// Per-party check of the correctness definition: every party in the
// predicted correctness set committed its own input and output f(x) on the
// committed vector. Parties outside the set are reported, never failed.
inline CorrectnessReport check_correctness(const ExecutionRecord& rec) {
    const Scenario scenario = rec.scenario();
    CorrectnessReport report;
    const FieldElement expected = evaluate_circuit(scenario.circuit, rec.committed.values);
    report.expected_output = expected.value;
    for (int i = 1; i <= scenario.n; ++i) {
        PartyVerdict v;
        v.party = i;
        v.guaranteed = rec.prediction.correctness_parties.count(i) > 0;
        v.committed_ok =
            rec.committed.values[static_cast<size_t>(i - 1)].value == scenario.inputs[static_cast<size_t>(i - 1)];
        const auto& out = rec.outputs[static_cast<size_t>(i - 1)];
        v.output_ok = out.has_value() && *out == expected;
        if (!v.pass()) report.pass = false;
        report.verdicts.push_back(v);
    }
    if (!report.pass) {
        // Locate the first trace entry that deviates from the adversary-free
        // twin of this run (same seed, no corruption, passthrough strategy).
        Scenario twin = scenario;
        twin.corruption = CorruptionVector{};
        twin.strategy = StrategySpec{};
        try {
            RunResult clean = run_slotted(twin);
            const size_t limit = std::min(clean.trace.size(), rec.trace.size());
            size_t at = limit;
            for (size_t i = 0; i < limit; ++i) {
                const TraceEvent &a = rec.trace[i], &b = clean.trace[i];
                if (a.kind != b.kind || a.round != b.round || a.edge_id != b.edge_id ||
                    a.payload_bits != b.payload_bits) {
                    at = i;
                    break;
                }
            }
            if (at == limit && clean.trace.size() != rec.trace.size()) at = limit;
            if (at < rec.trace.size()) {
                const TraceEvent& e = rec.trace[at];
                report.first_divergence = "trace[" + std::to_string(at) + "] " +
                                          TraceEvent::kind_name(e.kind) + " round " +
                                          std::to_string(e.round) + " edge " +
                                          std::to_string(e.edge_id);
            } else {
                report.first_divergence = "trace prefix identical; lengths " +
                                          std::to_string(rec.trace.size()) + " vs " +
                                          std::to_string(clean.trace.size());
            }
        } catch (const std::exception& e) {
            report.first_divergence = std::string("twin run unavailable: ") + e.what();
        }
    }
    return report;
}

struct PrivacyTestReport {
    std::vector<uint64_t> inputs_a;
    std::vector<uint64_t> inputs_b;
    RunPhase phase = RunPhase::Full;
    int trials = 0;
    int accepted_a = 0;
    int accepted_b = 0;
    double discard_rate = 0.0;
    double tv_estimate = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Empirical total variation between the adversary-view distributions under
// two input vectors. The vectors must agree on every party outside the
// predicted privacy set (modulo an explicitly distinguished party for
// negative controls), and in full mode must map to the same output.
// Trials in which the parties outside the privacy set commit values other
// than the conditioning vector are discarded and counted.
inline PrivacyTestReport estimate_view_distance(const Scenario& scenario_template,
                                                const std::vector<uint64_t>& inputs_a,
                                                const std::vector<uint64_t>& inputs_b,
                                                RunPhase phase, int trials, double tolerance,
                                                uint64_t seed,
                                                std::optional<int> distinguished = std::nullopt) {
    const int n = scenario_template.n;
    if (static_cast<int>(inputs_a.size()) != n || static_cast<int>(inputs_b.size()) != n) {
        throw std::invalid_argument("privacy: input vectors must have one entry per party");
    }
    if (trials < 1000) throw std::invalid_argument("privacy: need at least 1000 trials");
    const NetworkMap net = scenario_template.network();
    const GuaranteeSets sets = compute_func(scenario_template.corruption, net, n);
    for (int i = 1; i <= n; ++i) {
        if (sets.privacy_parties.count(i)) continue;
        if (distinguished && *distinguished == i) continue;
        if (inputs_a[static_cast<size_t>(i - 1)] != inputs_b[static_cast<size_t>(i - 1)]) {
            throw std::invalid_argument(
                "privacy: input vectors must agree on parties outside the privacy set (P" +
                std::to_string(i) + " differs)");
        }
    }
    if (phase == RunPhase::Full) {
        Scenario probe = scenario_template;
        probe.inputs = inputs_a;
        const FieldElement fa = evaluate_circuit(probe.circuit, probe.input_elements());
        probe.inputs = inputs_b;
        const FieldElement fb = evaluate_circuit(probe.circuit, probe.input_elements());
        if (fa != fb) {
            throw std::invalid_argument("privacy: full-phase comparison needs equal outputs");
        }
    }

    auto run_arm = [&](const std::vector<uint64_t>& inputs, const char* label, int* accepted)
        -> std::map<std::string, int> {
        std::map<std::string, int> freq;
        Scenario s = scenario_template;
        s.inputs = inputs;
        *accepted = 0;
        for (int k = 0; k < trials; ++k) {
            s.seed = derive_seed(seed, label, static_cast<uint64_t>(k));
            RunResult run = run_slotted(s, phase);
            bool conditioned = true;
            for (int i = 1; i <= n; ++i) {
                if (sets.privacy_parties.count(i)) continue;
                if (run.committed.values[static_cast<size_t>(i - 1)].value !=
                    inputs[static_cast<size_t>(i - 1)]) {
                    conditioned = false;
                    break;
                }
            }
            if (!conditioned) continue;
            ++*accepted;
            ++freq[run.view.canonical_key()];
        }
        return freq;
    };

    PrivacyTestReport report;
    report.inputs_a = inputs_a;
    report.inputs_b = inputs_b;
    report.phase = phase;
    report.trials = trials;
    report.tolerance = tolerance;
    auto freq_a = run_arm(inputs_a, "privacy-a", &report.accepted_a);
    auto freq_b = run_arm(inputs_b, "privacy-b", &report.accepted_b);
    report.discard_rate =
        1.0 - static_cast<double>(report.accepted_a + report.accepted_b) / (2.0 * trials);
    if (report.accepted_a == 0 || report.accepted_b == 0) {
        throw std::runtime_error("privacy: all trials discarded by the conditioning rule");
    }
    double tv = 0.0;
    auto it_a = freq_a.begin();
    auto it_b = freq_b.begin();
    while (it_a != freq_a.end() || it_b != freq_b.end()) {
        double pa = 0.0, pb = 0.0;
        if (it_b == freq_b.end() || (it_a != freq_a.end() && it_a->first < it_b->first)) {
            pa = static_cast<double>(it_a->second) / report.accepted_a;
            ++it_a;
        } else if (it_a == freq_a.end() || it_b->first < it_a->first) {
            pb = static_cast<double>(it_b->second) / report.accepted_b;
            ++it_b;
        } else {
            pa = static_cast<double>(it_a->second) / report.accepted_a;
            pb = static_cast<double>(it_b->second) / report.accepted_b;
            ++it_a;
            ++it_b;
        }
        tv += std::abs(pa - pb);
    }
    report.tv_estimate = tv / 2.0;
    report.pass = report.tv_estimate <= tolerance;
    return report;
}

// Binding check: perturb everything outside the correctness set and assert
// the reveal output never moves. Returns the number of perturbations that
// changed the output (zero means binding held).
inline int reveal_perturbation_failures(const ExecutionRecord& rec, int perturbations,
                                        uint64_t seed) {
    const Scenario scenario = rec.scenario();
    const ProtocolParams params =
        ProtocolParams::from_scenario(scenario, RunPhase::Full);
    const CommittedVector baseline =
        reveal(rec.transcripts, rec.prediction.correctness_parties, params);
    Rng rng(derive_seed(seed, "reveal-perturb"));
    int failures = 0;
    for (int k = 0; k < perturbations; ++k) {
        std::vector<Transcript> mutated = rec.transcripts;
        for (Transcript& t : mutated) {
            if (rec.prediction.correctness_parties.count(t.party)) continue;
            // Arbitrary substitution: garble payloads, inputs, seeds; drop
            // or duplicate entries.
            t.input = FieldElement(rng.below(scenario.p), scenario.p);
            t.seed = rng.next_u64();
            for (TranscriptEntry& e : t.entries) {
                const uint64_t dice = rng.below(4);
                if (dice == 0) {
                    e.payload = Bits::random(rng, e.payload.size());
                } else if (dice == 1 && e.payload.size() > 0) {
                    e.payload = e.payload ^ Bits::random(rng, e.payload.size());
                } else if (dice == 2) {
                    e.peer = static_cast<int>(1 + rng.below(static_cast<uint64_t>(scenario.n)));
                }
            }
            if (!t.entries.empty() && rng.below(2) == 0) {
                t.entries.erase(t.entries.begin() +
                                static_cast<long>(rng.below(t.entries.size())));
            }
        }
        const CommittedVector again =
            reveal(mutated, rec.prediction.correctness_parties, params);
        if (!(again == baseline)) ++failures;
    }
    return failures;
}

}  // namespace aempc
