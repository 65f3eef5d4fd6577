#include <doctest.h>

#include <map>

#include "aempc/field.hpp"

using namespace aempc;

namespace {

FieldElement fe(uint64_t v, uint64_t p = 7) { return FieldElement(v, p); }

// Find a seed whose first draw below `bound` hits `want`; pins down the
// random coefficients a sharing will use.
uint64_t seed_forcing(uint64_t want, uint64_t bound) {
    for (uint64_t s = 0;; ++s) {
        Rng rng(s);
        if (rng.below(bound) == want) return s;
    }
}

}  // namespace

TEST_CASE("degree-0 sharing is constant") {
    Rng rng(1);
    auto shares = shamir_share(fe(5), 0, 3, rng);
    REQUIRE(shares.size() == 3);
    for (const Share& s : shares) CHECK(s.value == fe(5));
}

TEST_CASE("sharing with forced coefficient matches hand evaluation") {
    // 3 + 2x over GF(7) at x = 1..4 is (5, 0, 2, 4).
    Rng rng(seed_forcing(2, 7));
    auto shares = shamir_share(fe(3), 1, 4, rng);
    CHECK(shares[0].value == fe(5));
    CHECK(shares[1].value == fe(0));
    CHECK(shares[2].value == fe(2));
    CHECK(shares[3].value == fe(4));
}

TEST_CASE("sharing preconditions") {
    Rng rng(0);
    CHECK_THROWS_AS(shamir_share(fe(1), 3, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(shamir_share(fe(1), 1, 7, rng), std::invalid_argument);  // n >= p
}

TEST_CASE("round-trip: any t+1 shares reconstruct the secret") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const uint64_t p = 101;
        const int n = 4 + static_cast<int>(rng.below(6));
        const int t = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        FieldElement secret = FieldElement::random(rng, p);
        auto shares = shamir_share(secret, t, n, rng);
        // Random (t+1)-subset.
        std::vector<Share> subset;
        for (int i = 0; i < n && static_cast<int>(subset.size()) <= t; ++i) {
            if (rng.below(2) == 0 || n - i <= t + 1 - static_cast<int>(subset.size())) {
                subset.push_back(shares[static_cast<size_t>(i)]);
            }
        }
        auto got = robust_reconstruct(subset, t, 0);
        REQUIRE(got.has_value());
        CHECK(*got == secret);
    }
}

TEST_CASE("perfect hiding: one share of a degree-1 sharing over GF(5) is uniform") {
    // Exhaust every secret and every coefficient; for each party the share
    // histogram must be flat and identical across secrets.
    const uint64_t p = 5;
    for (int party = 1; party <= 4; ++party) {
        std::map<uint64_t, std::map<uint64_t, int>> hist;  // secret -> share -> count
        for (uint64_t secret = 0; secret < p; ++secret) {
            for (uint64_t c1 = 0; c1 < p; ++c1) {
                Polynomial poly{{FieldElement(secret, p), FieldElement(c1, p)}};
                uint64_t share = poly.evaluate(FieldElement(static_cast<uint64_t>(party), p)).value;
                hist[secret][share]++;
            }
        }
        for (uint64_t secret = 0; secret < p; ++secret) {
            REQUIRE(hist[secret].size() == p);
            for (auto& [share, count] : hist[secret]) CHECK(count == 1);
        }
    }
}

TEST_CASE("lagrange examples") {
    auto poly = lagrange_interpolate({{fe(1), fe(5)}, {fe(2), fe(0)}});
    REQUIRE(poly.coefficients.size() == 2);
    CHECK(poly.coefficients[0] == fe(3));
    CHECK(poly.coefficients[1] == fe(2));

    auto constant = lagrange_interpolate({{fe(1), fe(4)}});
    CHECK(constant.coefficients.size() == 1);
    CHECK(constant.constant_term() == fe(4));

    CHECK_THROWS_AS(lagrange_interpolate({{fe(1), fe(4)}, {fe(1), fe(5)}}), std::invalid_argument);
}

TEST_CASE("lagrange round-trips a sharing") {
    Rng rng(7);
    const uint64_t p = 101;
    FieldElement secret(33, p);
    auto shares = shamir_share(secret, 3, 6, rng);
    std::vector<std::pair<FieldElement, FieldElement>> pts;
    for (const Share& s : shares) {
        pts.emplace_back(FieldElement(static_cast<uint64_t>(s.party_index), p), s.value);
    }
    auto poly = lagrange_interpolate(pts);
    CHECK(poly.evaluate(FieldElement(0, p)) == secret);
    // Degree bound: coefficients above t must be zero.
    for (size_t i = 4; i < poly.coefficients.size(); ++i) {
        CHECK(poly.coefficients[i].value == 0);
    }
}

TEST_CASE("robust reconstruction corrects a single wrong share") {
    // Shares of 3 + 2x over GF(7), share at x=2 corrupted 0 -> 6.
    std::vector<Share> shares{{1, fe(5)}, {2, fe(6)}, {3, fe(2)}, {4, fe(4)}};
    auto got = robust_reconstruct(shares, 1, 1);
    REQUIRE(got.has_value());
    CHECK(*got == fe(3));
}

TEST_CASE("robust reconstruction with no errors is plain interpolation") {
    std::vector<Share> shares{{1, fe(5)}, {2, fe(0)}};
    auto got = robust_reconstruct(shares, 1, 0);
    REQUIRE(got.has_value());
    CHECK(*got == fe(3));
}

TEST_CASE("two corruptions beyond the radius give wrong or no answer, never silently right") {
    // True line 3 + 2x gives (1,5),(2,0),(3,2),(4,4); corrupt x=3,4 onto the
    // constant line y=5, which then agrees with three points.
    std::vector<Share> shares{{1, fe(5)}, {2, fe(0)}, {3, fe(5)}, {4, fe(5)}};
    auto got = robust_reconstruct(shares, 1, 1);
    CHECK((!got.has_value() || *got != fe(3)));
}

TEST_CASE("robust reconstruction precondition") {
    std::vector<Share> shares{{1, fe(5)}, {2, fe(0)}, {3, fe(2)}};
    CHECK_THROWS_AS(robust_reconstruct(shares, 1, 1), std::invalid_argument);
    std::vector<Share> dup{{1, fe(5)}, {1, fe(0)}, {3, fe(2)}};
    CHECK_THROWS_AS(robust_reconstruct(dup, 1, 0), std::invalid_argument);
}

TEST_CASE("planted codewords are recovered up to the decoding radius") {
    Rng rng(99);
    const uint64_t p = 101;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(6));
        const int t = static_cast<int>(rng.below(3));
        const int max_err = (n - t - 1) / 2;
        const int errors = static_cast<int>(rng.below(static_cast<uint64_t>(max_err + 1)));
        if (n < t + 2 * errors + 1) continue;
        FieldElement secret = FieldElement::random(rng, p);
        auto shares = shamir_share(secret, t, n, rng);
        // Corrupt `errors` distinct positions by nonzero offsets.
        for (int e = 0; e < errors; ++e) {
            Share& s = shares[static_cast<size_t>(e)];
            s.value = s.value + FieldElement(1 + rng.below(p - 1), p);
        }
        auto got = robust_reconstruct(shares, t, errors);
        REQUIRE(got.has_value());
        CHECK(*got == secret);
    }
}
