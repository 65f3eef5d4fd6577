#include <doctest.h>

#include "aempc/guarantees.hpp"

using namespace aempc;

namespace {

CorruptionVector no_corruption() { return CorruptionVector{}; }

// Both directions of (a, b) into a channel set.
void corrupt_pair(std::set<ChannelKey>& set, int a, int b) {
    set.insert({a, b});
    set.insert({b, a});
}

GuaranteeSets func_of(const CorruptionVector& c, int n) {
    return compute_func(c, derive_network(c, n), n);
}

std::set<int> all_parties(int n) {
    std::set<int> s;
    for (int i = 1; i <= n; ++i) s.insert(i);
    return s;
}

// Random corruption over the complete n-network.
CorruptionVector random_corruption(int n, Rng& rng) {
    CorruptionVector c;
    for (int i = 1; i <= n; ++i) {
        const uint64_t dice = rng.below(6);
        if (dice == 0) c.passive_parties.insert(i);
        if (dice == 1) c.active_parties.insert(i);
    }
    for (int s = 1; s <= n; ++s) {
        for (int r = 1; r <= n; ++r) {
            if (s == r) continue;
            const uint64_t dice = rng.below(8);
            if (dice == 0) c.eavesdrop_channels.insert({s, r});
            if (dice == 1) c.partial_channels.insert({s, r});
            if (dice == 2) c.full_channels.insert({s, r});
        }
    }
    return c;
}

GuaranteeSets func_bruteforce(const CorruptionVector& c, const NetworkMap& net, int n) {
    const int k = clique_threshold(n);
    GuaranteeSets out;
    std::vector<int> honest, uncorrupted;
    for (int p = 1; p <= n; ++p) {
        if (c.active_parties.count(p)) continue;
        honest.push_back(p);
        if (!c.passive_parties.count(p)) uncorrupted.push_back(p);
    }
    auto gc = build_qualification_graph(honest, net, [](ChannelType t) {
        return t == ChannelType::Secure || t == ChannelType::Eavesdrop;
    });
    for (size_t i = 0; i < gc.vertices.size(); ++i) {
        if (clique_member_bruteforce(i, gc, k)) out.correctness_parties.insert(gc.vertices[i]);
    }
    auto gp = build_qualification_graph(uncorrupted, net,
                                        [](ChannelType t) { return t == ChannelType::Secure; });
    for (size_t i = 0; i < gp.vertices.size(); ++i) {
        if (clique_member_bruteforce(i, gp, k)) out.privacy_parties.insert(gp.vertices[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("no corruption: everyone keeps both guarantees") {
    auto sets = func_of(no_corruption(), 4);
    CHECK(sets.correctness_parties == all_parties(4));
    CHECK(sets.privacy_parties == all_parties(4));
}

TEST_CASE("one fully tampered pair still leaves full guarantees at n=4") {
    CorruptionVector c;
    corrupt_pair(c.full_channels, 1, 2);
    auto sets = func_of(c, 4);
    // {1,3,4} and {2,3,4} are the witnessing cliques, each of size 3.
    CHECK(sets.correctness_parties == all_parties(4));
    CHECK(sets.privacy_parties == all_parties(4));
}

TEST_CASE("eavesdropping all of P1's channels costs P1 privacy but not correctness") {
    CorruptionVector c;
    for (int j = 2; j <= 4; ++j) corrupt_pair(c.eavesdrop_channels, 1, j);
    auto sets = func_of(c, 4);
    CHECK(sets.correctness_parties == all_parties(4));
    CHECK(sets.privacy_parties == std::set<int>{2, 3, 4});
}

TEST_CASE("feasibility examples") {
    SUBCASE("active corruption of one party out of four is feasible") {
        CorruptionVector c;
        c.active_parties.insert(4);
        CHECK(is_feasible(c, derive_network(c, 4), 4));
    }
    SUBCASE("no corruption is feasible") {
        auto c = no_corruption();
        CHECK(is_feasible(c, derive_network(c, 4), 4));
    }
    SUBCASE("tampered channels at two parties break feasibility at n=4") {
        CorruptionVector c;
        for (int j = 2; j <= 4; ++j) corrupt_pair(c.full_channels, 1, j);
        for (int j = 1; j <= 4; ++j) {
            if (j != 2) corrupt_pair(c.full_channels, 2, j);
        }
        CHECK_FALSE(is_feasible(c, derive_network(c, 4), 4));
    }
}

TEST_CASE("brute-force oracle: complete and empty graphs") {
    NetworkMap complete, severed;
    for (int s = 1; s <= 5; ++s) {
        for (int r = 1; r <= 5; ++r) {
            if (s == r) continue;
            complete[{s, r}] = ChannelType::Secure;
            severed[{s, r}] = ChannelType::FullTamper;
        }
    }
    auto secure_only = [](ChannelType t) { return t == ChannelType::Secure; };
    auto g_full = build_qualification_graph({1, 2, 3, 4, 5}, complete, secure_only);
    auto g_empty = build_qualification_graph({1, 2, 3, 4, 5}, severed, secure_only);
    for (size_t x = 0; x < 5; ++x) {
        CHECK(clique_member_bruteforce(x, g_full, 5));  // K = |V| on a complete graph
        CHECK_FALSE(clique_member_bruteforce(x, g_empty, 2));
    }
}

TEST_CASE("brute-force oracle refuses more than 16 vertices") {
    NetworkMap net;
    std::vector<int> vertices;
    for (int i = 1; i <= 17; ++i) vertices.push_back(i);
    auto g = build_qualification_graph(vertices, net, [](ChannelType) { return true; });
    CHECK_THROWS_AS(clique_member_bruteforce(0, g, 2), std::invalid_argument);
}

TEST_CASE("brute-force clique oracle basics") {
    // 4-cycle: largest clique is an edge.
    NetworkMap net;
    CorruptionVector c;
    for (int s = 1; s <= 4; ++s) {
        for (int r = 1; r <= 4; ++r) {
            if (s != r) net[{s, r}] = ChannelType::FullTamper;
        }
    }
    auto set_secure = [&](int a, int b) {
        net[{a, b}] = ChannelType::Secure;
        net[{b, a}] = ChannelType::Secure;
    };
    set_secure(1, 2);
    set_secure(2, 3);
    set_secure(3, 4);
    set_secure(4, 1);
    auto g = build_qualification_graph({1, 2, 3, 4}, net,
                                       [](ChannelType t) { return t == ChannelType::Secure; });
    for (size_t x = 0; x < 4; ++x) {
        CHECK_FALSE(clique_member_bruteforce(x, g, 3));
        CHECK(clique_member_bruteforce(x, g, 2));
        CHECK_FALSE(clique_member(x, g, 3));
        CHECK(clique_member(x, g, 2));
    }
}

TEST_CASE("optimized clique search equals the brute-force oracle on random inputs") {
    Rng rng(2024);
    for (int n : {4, 7, 10, 12}) {
        for (int trial = 0; trial < 120; ++trial) {
            auto c = random_corruption(n, rng);
            auto net = derive_network(c, n);
            CHECK(compute_func(c, net, n) == func_bruteforce(c, net, n));
        }
    }
}

TEST_CASE("privacy parties are always a subset of correctness parties") {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(7));
        auto c = random_corruption(n, rng);
        auto sets = func_of(c, n);
        for (int p : sets.privacy_parties) CHECK(sets.correctness_parties.count(p) == 1);
    }
}

TEST_CASE("worsening a channel or party never enlarges a guarantee set") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(5));
        auto c = random_corruption(n, rng);
        auto before = func_of(c, n);

        CorruptionVector worse = c;
        const uint64_t what = rng.below(3);
        if (what == 0) {
            // Honest party -> passive, or passive -> active.
            const int p = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            if (worse.passive_parties.count(p)) {
                worse.passive_parties.erase(p);
                worse.active_parties.insert(p);
            } else if (!worse.active_parties.count(p)) {
                worse.passive_parties.insert(p);
            }
        } else {
            // Degrade one directed channel by one grade.
            const int s = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            int r = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            if (r == s) r = (r % n) + 1;
            ChannelKey key{s, r};
            if (worse.full_channels.count(key)) {
                // already worst
            } else if (worse.partial_channels.count(key)) {
                worse.partial_channels.erase(key);
                worse.full_channels.insert(key);
            } else if (worse.eavesdrop_channels.count(key)) {
                worse.eavesdrop_channels.erase(key);
                worse.partial_channels.insert(key);
            } else {
                worse.eavesdrop_channels.insert(key);
            }
        }
        auto after = func_of(worse, n);
        for (int p : after.correctness_parties) CHECK(before.correctness_parties.count(p) == 1);
        for (int p : after.privacy_parties) CHECK(before.privacy_parties.count(p) == 1);
    }
}

TEST_CASE("feasible corruption implies a nonempty correctness set") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(7));
        auto c = random_corruption(n, rng);
        auto net = derive_network(c, n);
        if (is_feasible(c, net, n)) {
            CHECK_FALSE(compute_func(c, net, n).correctness_parties.empty());
        }
    }
}

TEST_CASE("compute_comp deduplicates and rejects infeasible elements") {
    AdversaryStructure structure;
    structure.elements.push_back(no_corruption());
    CorruptionVector eavesdropper;
    for (int j = 2; j <= 4; ++j) corrupt_pair(eavesdropper.eavesdrop_channels, 1, j);
    structure.elements.push_back(eavesdropper);
    structure.elements.push_back(no_corruption());  // duplicate image

    auto comp = compute_comp(structure, 4);
    REQUIRE(comp.size() == 2);
    CHECK(comp[0].guarantees.privacy_parties == all_parties(4));
    CHECK(comp[1].guarantees.privacy_parties == std::set<int>{2, 3, 4});

    CorruptionVector infeasible;
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            if (a != b) infeasible.full_channels.insert({a, b});
        }
    }
    structure.elements.push_back(infeasible);
    CHECK_THROWS_WITH_AS(compute_comp(structure, 4), "compute_comp: infeasible element at index 3",
                         std::invalid_argument);
}

TEST_CASE("witness cliques qualify") {
    CorruptionVector c;
    corrupt_pair(c.full_channels, 1, 2);
    auto net = derive_network(c, 4);
    auto analysis = compute_func_with_witnesses(c, net, 4);
    const int k = clique_threshold(4);
    for (const auto& [party, clique] : analysis.correctness_witness) {
        CHECK(static_cast<int>(clique.size()) >= k);
        bool contains = false;
        for (int v : clique) {
            if (v == party) contains = true;
        }
        CHECK(contains);
        for (size_t a = 0; a < clique.size(); ++a) {
            for (size_t b = a + 1; b < clique.size(); ++b) {
                auto ta = network_type(net, clique[a], clique[b]);
                auto tb = network_type(net, clique[b], clique[a]);
                CHECK((ta == ChannelType::Secure || ta == ChannelType::Eavesdrop));
                CHECK((tb == ChannelType::Secure || tb == ChannelType::Eavesdrop));
            }
        }
    }
}
