#pragma once

// Corruption vectors: which parties are passively/actively corrupted and
// which directed channels the adversary eavesdrops, partially tampers or
// fully tampers. The channel sets are pairwise disjoint and induce the
// per-channel type map used by the simulator.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aempc/channel.hpp"

namespace aempc {

using ChannelKey = std::pair<int, int>;  // (sender, receiver), 1-based

// Canonical edge numbering: lexicographic by (sender, receiver), skipping
// self-loops; 1-based. Matches the pair-slot order of the schedule.
inline int edge_index(int sender, int receiver, int n) {
    int off = receiver - (receiver > sender ? 2 : 1);
    return (sender - 1) * (n - 1) + off + 1;
}

struct CorruptionVector {
    std::set<int> passive_parties;
    std::set<int> active_parties;
    std::set<ChannelKey> eavesdrop_channels;
    std::set<ChannelKey> partial_channels;
    std::set<ChannelKey> full_channels;

    bool channel_controlled(const ChannelKey& k) const {
        return partial_channels.count(k) || full_channels.count(k);
    }

    void validate(int n) const {
        auto check_party = [&](int p, const char* what) {
            if (p < 1 || p > n) {
                throw std::invalid_argument(std::string("corruption: ") + what + " out of range");
            }
        };
        for (int p : passive_parties) check_party(p, "passive party");
        for (int p : active_parties) check_party(p, "active party");
        for (int p : passive_parties) {
            if (active_parties.count(p)) {
                throw std::invalid_argument("corruption: party both passive and active");
            }
        }
        auto check_channel = [&](const ChannelKey& k) {
            if (k.first == k.second) throw std::invalid_argument("corruption: self-loop channel");
            check_party(k.first, "channel endpoint");
            check_party(k.second, "channel endpoint");
        };
        for (const auto& k : eavesdrop_channels) check_channel(k);
        for (const auto& k : partial_channels) check_channel(k);
        for (const auto& k : full_channels) check_channel(k);
        for (const auto& k : eavesdrop_channels) {
            if (partial_channels.count(k) || full_channels.count(k)) {
                throw std::invalid_argument("corruption: channel in multiple corruption sets");
            }
        }
        for (const auto& k : partial_channels) {
            if (full_channels.count(k)) {
                throw std::invalid_argument("corruption: channel in multiple corruption sets");
            }
        }
    }

    bool operator==(const CorruptionVector& o) const {
        return passive_parties == o.passive_parties && active_parties == o.active_parties &&
               eavesdrop_channels == o.eavesdrop_channels && partial_channels == o.partial_channels &&
               full_channels == o.full_channels;
    }
};

// Type of every directed channel in the complete network on n parties.
using NetworkMap = std::map<ChannelKey, ChannelType>;

inline NetworkMap derive_network(const CorruptionVector& corruption, int n) {
    NetworkMap net;
    for (int s = 1; s <= n; ++s) {
        for (int r = 1; r <= n; ++r) {
            if (s == r) continue;
            ChannelKey k{s, r};
            ChannelType t = ChannelType::Secure;
            if (corruption.full_channels.count(k)) {
                t = ChannelType::FullTamper;
            } else if (corruption.partial_channels.count(k)) {
                t = ChannelType::PartialTamper;
            } else if (corruption.eavesdrop_channels.count(k)) {
                t = ChannelType::Eavesdrop;
            }
            net.emplace(k, t);
        }
    }
    return net;
}

inline ChannelType network_type(const NetworkMap& net, int s, int r) {
    auto it = net.find({s, r});
    return it == net.end() ? ChannelType::Secure : it->second;
}

struct AdversaryStructure {
    std::vector<CorruptionVector> elements;
};

}  // namespace aempc
