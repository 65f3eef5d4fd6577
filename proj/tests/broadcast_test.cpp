#include <doctest.h>

#include <functional>

#include "aempc/broadcast.hpp"

using namespace aempc;

namespace {

// Runs one broadcast stage among n parties over perfect links, with an
// optional interceptor rewriting (from, to, level, body) in flight.
// Returns per-party BroadcastStage objects after all levels.
using Interceptor = std::function<std::optional<std::vector<uint8_t>>(
    int from, int to, int level, const std::vector<uint8_t>& body)>;

std::vector<BroadcastStage> run_stage(int n, int levels, const std::vector<Bits>& payloads,
                                      const Interceptor& intercept = {}) {
    std::vector<BroadcastStage> stages;
    stages.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        stages.emplace_back(n, levels, i);
        stages.back().set_own_payload(payloads[static_cast<size_t>(i - 1)]);
    }
    for (int level = 1; level <= levels; ++level) {
        // Everyone builds, then everyone receives (synchronous round).
        std::vector<std::vector<uint8_t>> sent(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) {
            sent[static_cast<size_t>(i - 1)] =
                stages[static_cast<size_t>(i - 1)].build_message(level).bytes();
        }
        for (int from = 1; from <= n; ++from) {
            for (int to = 1; to <= n; ++to) {
                if (from == to) continue;
                std::vector<uint8_t> body = sent[static_cast<size_t>(from - 1)];
                if (intercept) {
                    auto replaced = intercept(from, to, level, body);
                    if (!replaced) continue;  // drop
                    body = *replaced;
                }
                stages[static_cast<size_t>(to - 1)].receive(level, from, body);
            }
        }
    }
    return stages;
}

Bits tag(int v) {
    Bits b = Bits::zeros(8);
    for (int i = 0; i < 8; ++i) b.set_bit(static_cast<size_t>(i), (v >> (7 - i)) & 1);
    return b;
}

}  // namespace

TEST_CASE("honest broadcast: every party resolves every source's payload") {
    const int n = 4, levels = 2;
    std::vector<Bits> payloads{tag(10), tag(20), tag(30), tag(40)};
    auto stages = run_stage(n, levels, payloads);
    for (int i = 0; i < n; ++i) {
        for (int src = 1; src <= n; ++src) {
            auto got = stages[static_cast<size_t>(i)].resolve(src);
            REQUIRE(got.has_value());
            CHECK(*got == payloads[static_cast<size_t>(src - 1)]);
        }
    }
}

TEST_CASE("equivocating source: honest parties still agree") {
    // n=7, t=2, levels=3. Source 1 sends different values to different
    // parties at level 1 and lies in relays; parties 1 and 2 collude.
    const int n = 7, levels = 3;
    std::vector<Bits> payloads;
    for (int i = 1; i <= n; ++i) payloads.push_back(tag(i));
    Rng rng(77);
    auto corrupt = [&](int from) { return from == 1 || from == 2; };
    Interceptor intercept = [&](int from, int to, int level,
                                const std::vector<uint8_t>& body)
        -> std::optional<std::vector<uint8_t>> {
        if (!corrupt(from)) return body;
        // Corrupted senders replace their messages with random bytes
        // parseable or not; the tree treats garbage as absence.
        if (rng.below(3) == 0) return std::nullopt;
        std::vector<uint8_t> garbled = body;
        for (auto& b : garbled) b ^= static_cast<uint8_t>(rng.next_u64());
        (void)level;
        (void)to;
        return garbled;
    };
    auto stages = run_stage(n, levels, payloads, intercept);
    for (int src = 1; src <= n; ++src) {
        std::optional<Bits> agreed;
        bool first = true;
        for (int i = 3; i <= n; ++i) {  // honest parties
            auto got = stages[static_cast<size_t>(i - 1)].resolve(src);
            if (first) {
                agreed = got;
                first = false;
            } else {
                CHECK(got == agreed);
            }
        }
        if (src >= 3) {
            // Honest source: validity as well.
            auto got = stages[static_cast<size_t>(2)].resolve(src);
            REQUIRE(got.has_value());
            CHECK(*got == payloads[static_cast<size_t>(src - 1)]);
        }
    }
}

TEST_CASE("source cut off by consistent garbling resolves to the absent marker") {
    // Source 3's links to 4,5,6 carry one consistent forgery, splitting the
    // level-1 values 3:3; the majority tie resolves to absence everywhere.
    const int n = 7, levels = 3;
    std::vector<Bits> payloads;
    for (int i = 1; i <= n; ++i) payloads.push_back(tag(i * 3));
    Interceptor intercept = [&](int from, int to, int level,
                                const std::vector<uint8_t>& body)
        -> std::optional<std::vector<uint8_t>> {
        if (from == 3 && level == 1 && (to == 4 || to == 5 || to == 6)) {
            std::vector<uint8_t> flipped = body;
            for (auto& b : flipped) b = static_cast<uint8_t>(~b);
            return flipped;
        }
        return body;
    };
    auto stages = run_stage(n, levels, payloads, intercept);
    for (int i = 1; i <= n; ++i) {
        if (i == 3) continue;
        CHECK_FALSE(stages[static_cast<size_t>(i - 1)].resolve(3).has_value());
    }
    // Other sources unaffected.
    for (int src = 1; src <= n; ++src) {
        if (src == 3) continue;
        auto got = stages[0].resolve(src);
        REQUIRE(got.has_value());
        CHECK(*got == payloads[static_cast<size_t>(src - 1)]);
    }
}

TEST_CASE("conflicting sender at n=4: honest receivers agree on one value") {
    const int n = 4, levels = 2;
    std::vector<Bits> payloads{tag(0xaa), tag(2), tag(3), tag(4)};
    // Source 1 tells 2 one thing and 3, 4 another at level 1, then stays
    // honest in relays (worst case is covered by the n=7 test).
    Interceptor intercept = [&](int from, int to, int level, const std::vector<uint8_t>& body)
        -> std::optional<std::vector<uint8_t>> {
        if (from == 1 && level == 1 && to == 2) {
            BroadcastStage forge(n, levels, 1);
            forge.set_own_payload(tag(0x55));
            return forge.build_message(1).bytes();
        }
        return body;
    };
    auto stages = run_stage(n, levels, payloads, intercept);
    std::optional<Bits> agreed = stages[1].resolve(1);
    CHECK(stages[2].resolve(1) == agreed);
    CHECK(stages[3].resolve(1) == agreed);
}

TEST_CASE("silent source resolves to absent everywhere") {
    const int n = 4, levels = 2;
    std::vector<Bits> payloads{tag(1), tag(2), tag(3), tag(4)};
    Interceptor intercept = [&](int from, int, int level, const std::vector<uint8_t>& body)
        -> std::optional<std::vector<uint8_t>> {
        if (from == 2 && level == 1) return std::nullopt;
        return body;
    };
    auto stages = run_stage(n, levels, payloads, intercept);
    for (int i = 1; i <= n; ++i) {
        if (i == 2) continue;
        CHECK_FALSE(stages[static_cast<size_t>(i - 1)].resolve(2).has_value());
    }
}
