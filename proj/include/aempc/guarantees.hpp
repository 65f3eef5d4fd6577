#pragma once

// Guarantee analysis: which honest parties keep the correctness guarantee
// and which keep the privacy guarantee under a given corruption vector.
//
// A party keeps correctness iff it is not actively corrupted and sits in a
// clique of size >= floor(2n/3)+1 of non-actively-corrupted parties whose
// pairwise channels (both directions) are secure or merely eavesdropped.
// It keeps privacy iff it is entirely uncorrupted and sits in a clique of
// the same size of uncorrupted parties whose pairwise channels are secure
// in both directions. Membership is decided exactly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "aempc/corruption.hpp"

namespace aempc {

struct GuaranteeSets {
    std::set<int> correctness_parties;
    std::set<int> privacy_parties;

    bool operator==(const GuaranteeSets& o) const {
        return correctness_parties == o.correctness_parties && privacy_parties == o.privacy_parties;
    }
    bool operator<(const GuaranteeSets& o) const {
        if (correctness_parties != o.correctness_parties) {
            return correctness_parties < o.correctness_parties;
        }
        return privacy_parties < o.privacy_parties;
    }
};

inline int clique_threshold(int n) { return (2 * n) / 3 + 1; }

// Undirected qualification graph over an eligible vertex set: an edge is
// present iff both directed channels between the pair qualify.
struct QualificationGraph {
    std::vector<int> vertices;                 // party ids, ascending
    std::vector<uint32_t> adjacency;           // bitmask per vertex position

    bool edge(size_t a, size_t b) const { return (adjacency[a] >> b) & 1u; }
};

template <typename TypePredicate>
inline QualificationGraph build_qualification_graph(const std::vector<int>& eligible,
                                                    const NetworkMap& net, TypePredicate qualifies) {
    QualificationGraph g;
    g.vertices = eligible;
    std::sort(g.vertices.begin(), g.vertices.end());
    const size_t m = g.vertices.size();
    if (m > 31) throw std::invalid_argument("qualification graph: more than 31 vertices");
    g.adjacency.assign(m, 0);
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = a + 1; b < m; ++b) {
            int u = g.vertices[a], v = g.vertices[b];
            if (qualifies(network_type(net, u, v)) && qualifies(network_type(net, v, u))) {
                g.adjacency[a] |= (1u << b);
                g.adjacency[b] |= (1u << a);
            }
        }
    }
    return g;
}

// Exhaustive oracle: does some clique of size >= k contain vertex position
// x? Enumerates every subset; refuses more than 16 vertices.
inline bool clique_member_bruteforce(size_t x, const QualificationGraph& g, int k) {
    const size_t m = g.vertices.size();
    if (m > 16) throw std::invalid_argument("clique_member_bruteforce: more than 16 vertices");
    if (k <= 0) return true;
    const uint32_t full = (m == 32) ? 0xffffffffu : ((1u << m) - 1u);
    for (uint32_t s = 0; s <= full; ++s) {
        if (!((s >> x) & 1u)) continue;
        if (__builtin_popcount(s) < k) continue;
        bool clique = true;
        for (uint32_t rest = s; rest && clique;) {
            const int v = __builtin_ctz(rest);
            rest &= rest - 1;
            const uint32_t others = s & ~(1u << v);
            if ((others & g.adjacency[static_cast<size_t>(v)]) != others) clique = false;
        }
        if (clique) return true;
        if (s == full) break;
    }
    return false;
}

namespace detail {

// Branch and bound for a clique of size >= k extending `chosen`; the
// popcount bound is plenty at n <= 24.
inline bool grow_clique(const QualificationGraph& g, uint32_t chosen, int chosen_size,
                        uint32_t candidates, int k, uint32_t* witness) {
    if (chosen_size >= k) {
        *witness = chosen;
        return true;
    }
    while (candidates) {
        if (chosen_size + __builtin_popcount(candidates) < k) return false;
        const int v = __builtin_ctz(candidates);
        candidates &= candidates - 1;
        const uint32_t next = candidates & g.adjacency[static_cast<size_t>(v)];
        if (grow_clique(g, chosen | (1u << v), chosen_size + 1, next, k, witness)) return true;
    }
    return false;
}

}  // namespace detail

// Exact decision with an optional witness clique (as party ids).
inline bool clique_member(size_t x, const QualificationGraph& g, int k,
                          std::vector<int>* witness_out = nullptr) {
    const size_t m = g.vertices.size();
    if (x >= m) throw std::invalid_argument("clique_member: vertex out of range");
    uint32_t witness = 1u << x;
    if (k > 1 && !detail::grow_clique(g, 1u << x, 1, g.adjacency[x], k, &witness)) return false;
    if (witness_out) {
        witness_out->clear();
        for (size_t v = 0; v < m; ++v) {
            if ((witness >> v) & 1u) witness_out->push_back(g.vertices[v]);
        }
    }
    return true;
}

struct GuaranteeAnalysis {
    GuaranteeSets sets;
    std::map<int, std::vector<int>> correctness_witness;  // party -> one qualifying clique
    std::map<int, std::vector<int>> privacy_witness;
};

inline GuaranteeAnalysis compute_func_with_witnesses(const CorruptionVector& corruption,
                                                     const NetworkMap& net, int n) {
    corruption.validate(n);
    const int k = clique_threshold(n);

    std::vector<int> honest;
    std::vector<int> uncorrupted;
    for (int p = 1; p <= n; ++p) {
        if (corruption.active_parties.count(p)) continue;
        honest.push_back(p);
        if (!corruption.passive_parties.count(p)) uncorrupted.push_back(p);
    }

    GuaranteeAnalysis out;
    auto correctness_ok = [](ChannelType t) {
        return t == ChannelType::Secure || t == ChannelType::Eavesdrop;
    };
    auto privacy_ok = [](ChannelType t) { return t == ChannelType::Secure; };

    QualificationGraph gc = build_qualification_graph(honest, net, correctness_ok);
    for (size_t i = 0; i < gc.vertices.size(); ++i) {
        std::vector<int> witness;
        if (clique_member(i, gc, k, &witness)) {
            out.sets.correctness_parties.insert(gc.vertices[i]);
            out.correctness_witness[gc.vertices[i]] = witness;
        }
    }

    QualificationGraph gp = build_qualification_graph(uncorrupted, net, privacy_ok);
    for (size_t i = 0; i < gp.vertices.size(); ++i) {
        std::vector<int> witness;
        if (clique_member(i, gp, k, &witness)) {
            out.sets.privacy_parties.insert(gp.vertices[i]);
            out.privacy_witness[gp.vertices[i]] = witness;
        }
    }
    return out;
}

inline GuaranteeSets compute_func(const CorruptionVector& corruption, const NetworkMap& net, int n) {
    return compute_func_with_witnesses(corruption, net, n).sets;
}

// Feasibility: some set of non-actively-corrupted parties of size at least
// floor(2n/3)+1 is pairwise connected by secure channels in both
// directions.
inline bool is_feasible(const CorruptionVector& corruption, const NetworkMap& net, int n) {
    corruption.validate(n);
    const int k = clique_threshold(n);
    std::vector<int> honest;
    for (int p = 1; p <= n; ++p) {
        if (!corruption.active_parties.count(p)) honest.push_back(p);
    }
    QualificationGraph g = build_qualification_graph(
        honest, net, [](ChannelType t) { return t == ChannelType::Secure; });
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        if (clique_member(i, g, k)) return true;
    }
    return false;
}

struct CompEntry {
    CorruptionVector source;
    GuaranteeSets guarantees;
};

// Image of compute_func over a whole structure, deduplicated by guarantee
// sets; the first element producing each image is kept as its witness.
// Structures containing an infeasible element are rejected.
inline std::vector<CompEntry> compute_comp(const AdversaryStructure& structure, int n) {
    std::vector<CompEntry> out;
    std::set<GuaranteeSets> seen;
    for (size_t i = 0; i < structure.elements.size(); ++i) {
        const CorruptionVector& c = structure.elements[i];
        NetworkMap net = derive_network(c, n);
        if (!is_feasible(c, net, n)) {
            throw std::invalid_argument("compute_comp: infeasible element at index " +
                                        std::to_string(i));
        }
        GuaranteeSets sets = compute_func(c, net, n);
        if (seen.insert(sets).second) {
            out.push_back(CompEntry{c, std::move(sets)});
        }
    }
    return out;
}

}  // namespace aempc
