#pragma once

// Byzantine broadcast by exponential information gathering. A stage runs
// n parallel instances (every party is the source of one) over t+1 levels:
// level 1 distributes each source's payload, and each later level relays
// everything learned at the previous one. Each party then resolves every
// instance bottom-up by strict majority, with ties and missing values
// resolving to an explicit "absent" marker — so all correct parties agree
// on a value (or on absence) per instance.
//
// Tree nodes are relay paths of distinct party ids; paths are packed into
// one word (length byte high, then one byte per id) so the node store is a
// flat ordered map grouped by level.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aempc/bits.hpp"
#include "aempc/codec.hpp"

namespace aempc {

using EigPath = std::vector<uint8_t>;  // party ids along the relay path, source first

namespace eig {

constexpr int kMaxPathLen = 7;

inline uint64_t pack(const EigPath& path) {
    uint64_t key = static_cast<uint64_t>(path.size()) << 56;
    for (size_t i = 0; i < path.size(); ++i) {
        key |= static_cast<uint64_t>(path[i]) << (8 * (6 - i));
    }
    return key;
}

inline int packed_len(uint64_t key) { return static_cast<int>(key >> 56); }

inline int packed_at(uint64_t key, int i) {
    return static_cast<int>((key >> (8 * (6 - i))) & 0xff);
}

inline uint64_t packed_append(uint64_t key, int id) {
    const int len = packed_len(key);
    uint64_t out = key & 0x00ffffffffffffffULL;
    out |= static_cast<uint64_t>(len + 1) << 56;
    out |= static_cast<uint64_t>(id) << (8 * (6 - len));
    return out;
}

inline bool packed_contains(uint64_t key, int id) {
    const int len = packed_len(key);
    for (int i = 0; i < len; ++i) {
        if (packed_at(key, i) == id) return true;
    }
    return false;
}

}  // namespace eig

class BroadcastStage {
public:
    BroadcastStage() = default;
    BroadcastStage(int n, int levels, int me) : n_(n), levels_(levels), me_(me) {
        if (levels_ > eig::kMaxPathLen) {
            throw std::invalid_argument("BroadcastStage: too many levels");
        }
    }

    void set_own_payload(Bits payload) { own_payload_ = std::move(payload); }

    // Relay payload for the given level (1-based); identical for every
    // recipient. Level 1 carries the party's own instance payload; later
    // levels relay the previous level's tree nodes. Also folds the party's
    // own report into its local tree.
    Bits build_message(int level) {
        ByteWriter w;
        if (level == 1) {
            w.u8(1);
            w.bits(own_payload_);
            values_[eig::pack({static_cast<uint8_t>(me_)})] = own_payload_;
            return Bits::from_bytes(w.take());
        }
        w.u8(static_cast<uint8_t>(level));
        std::vector<std::pair<uint64_t, const std::optional<Bits>*>> entries;
        const uint64_t lo = static_cast<uint64_t>(level - 1) << 56;
        const uint64_t hi = static_cast<uint64_t>(level) << 56;
        for (auto it = values_.lower_bound(lo); it != values_.end() && it->first < hi; ++it) {
            if (eig::packed_contains(it->first, me_)) continue;
            entries.emplace_back(it->first, &it->second);
        }
        w.u16(static_cast<uint16_t>(entries.size()));
        for (const auto& [key, value] : entries) {
            const int len = eig::packed_len(key);
            w.u8(static_cast<uint8_t>(len));
            for (int i = 0; i < len; ++i) w.u8(static_cast<uint8_t>(eig::packed_at(key, i)));
            w.u8(*value ? 1 : 0);
            if (*value) w.bits(**value);
        }
        // Own report to self.
        for (const auto& [key, value] : entries) {
            values_[eig::packed_append(key, me_)] = *value;
        }
        return Bits::from_bytes(w.take());
    }

    // Fold a relay message from `from` for the given level. Garbled
    // messages are dropped whole; structurally invalid entries are skipped.
    void receive(int level, int from, const std::vector<uint8_t>& body) {
        try {
            ByteReader r(body);
            const int claimed = r.u8();
            if (claimed != level) return;
            if (level == 1) {
                Bits payload = r.bits();
                r.expect_done();
                values_[eig::pack({static_cast<uint8_t>(from)})] = std::move(payload);
                return;
            }
            const int count = r.u16();
            std::vector<std::pair<EigPath, std::optional<Bits>>> entries;
            entries.reserve(static_cast<size_t>(count));
            for (int e = 0; e < count; ++e) {
                const int len = r.u8();
                if (len > eig::kMaxPathLen) throw std::out_of_range("path too long");
                EigPath path(static_cast<size_t>(len));
                for (int i = 0; i < len; ++i) path[static_cast<size_t>(i)] = r.u8();
                std::optional<Bits> value;
                if (r.u8() != 0) value = r.bits();
                entries.emplace_back(std::move(path), std::move(value));
            }
            r.expect_done();
            for (auto& [path, value] : entries) {
                if (static_cast<int>(path.size()) != level - 1) continue;
                if (!valid_path(path) || contains(path, from)) continue;
                values_[eig::packed_append(eig::pack(path), from)] = std::move(value);
            }
        } catch (const std::out_of_range&) {
            // Treat as never received.
        }
    }

    // Decision value for the instance rooted at `source`; nullopt is the
    // agreed absent marker.
    std::optional<Bits> resolve(int source) const {
        const std::optional<Bits>* v = resolve_node(eig::pack({static_cast<uint8_t>(source)}));
        return v ? *v : std::nullopt;
    }

    int levels() const { return levels_; }

private:
    static bool contains(const EigPath& path, int id) {
        for (uint8_t x : path) {
            if (static_cast<int>(x) == id) return true;
        }
        return false;
    }

    bool valid_path(const EigPath& path) const {
        for (size_t i = 0; i < path.size(); ++i) {
            if (path[i] < 1 || static_cast<int>(path[i]) > n_) return false;
            for (size_t j = i + 1; j < path.size(); ++j) {
                if (path[i] == path[j]) return false;
            }
        }
        return true;
    }

    // Returns a pointer to the resolved value (owned by values_) or to the
    // static absent marker; never copies payloads while voting.
    const std::optional<Bits>* resolve_node(uint64_t key) const {
        static const std::optional<Bits> absent;
        if (eig::packed_len(key) == levels_) {
            auto it = values_.find(key);
            return it == values_.end() ? &absent : &it->second;
        }
        std::vector<const std::optional<Bits>*> children;
        children.reserve(static_cast<size_t>(n_));
        for (int q = 1; q <= n_; ++q) {
            if (eig::packed_contains(key, q)) continue;
            children.push_back(resolve_node(eig::packed_append(key, q)));
        }
        const int total = static_cast<int>(children.size());
        std::vector<int> counted(children.size(), 0);
        for (size_t i = 0; i < children.size(); ++i) {
            if (counted[i]) continue;
            int votes = 0;
            for (size_t j = i; j < children.size(); ++j) {
                if (*children[i] == *children[j]) {
                    votes++;
                    counted[j] = 1;
                }
            }
            if (2 * votes > total) return children[i];
        }
        return &absent;
    }

    int n_ = 0;
    int levels_ = 0;
    int me_ = 0;
    Bits own_payload_;
    std::map<uint64_t, std::optional<Bits>> values_;
};

}  // namespace aempc
