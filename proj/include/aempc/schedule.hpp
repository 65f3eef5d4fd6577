#pragma once

// Slotted round schedule. One round of the underlying protocol becomes a
// block of n*(n-1) non-overlapping super-rounds, one per ordered pair in
// lexicographic order, each super-round spanning r network rounds. A pair
// sends only in the first round of its own super-round.

#include <stdexcept>

#include "aempc/channel.hpp"

namespace aempc {

struct Schedule {
    int n = 0;
    int latency = 0;      // r, rounds per super-round
    int base_rounds = 0;  // blocks

    int super_rounds_per_block() const { return n * (n - 1); }
    long rounds_per_block() const { return static_cast<long>(super_rounds_per_block()) * latency; }
    long total_rounds() const { return static_cast<long>(base_rounds) * rounds_per_block(); }

    // 1-based slot of the ordered pair inside a block: (P1,P2)=1, (P1,P3)=2,
    // ..., lexicographic by (sender, receiver) skipping sender==receiver.
    int pair_slot(int sender, int receiver) const {
        if (sender == receiver || sender < 1 || receiver < 1 || sender > n || receiver > n) {
            throw std::invalid_argument("pair_slot: invalid pair");
        }
        int off = receiver - (receiver > sender ? 2 : 1);
        return (sender - 1) * (n - 1) + off + 1;
    }

    long block_start(int base_round) const {
        return static_cast<long>(base_round) * rounds_per_block();
    }

    // Absolute round in which `sender` may transmit to `receiver` during
    // base round `base_round`.
    long send_round(int base_round, int sender, int receiver) const {
        return block_start(base_round) + static_cast<long>(pair_slot(sender, receiver) - 1) * latency;
    }

    // Base round and slot owning an absolute round.
    int base_round_of(long round) const { return static_cast<int>(round / rounds_per_block()); }
    int slot_of(long round) const {
        return static_cast<int>((round % rounds_per_block()) / latency) + 1;
    }
};

inline Schedule build_schedule(int n, int latency, int base_rounds) {
    if (latency <= 6) throw std::invalid_argument("build_schedule: latency must exceed 6");
    if (n < 4) throw std::invalid_argument("build_schedule: need at least 4 parties");
    if (base_rounds < 0) throw std::invalid_argument("build_schedule: negative base rounds");
    return Schedule{n, latency, base_rounds};
}

}  // namespace aempc
