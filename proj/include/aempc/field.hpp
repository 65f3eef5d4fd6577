#pragma once

// Prime-field arithmetic, polynomials, Shamir sharing and error-corrected
// reconstruction. Everything here is a pure function over values; the
// modulus travels with each element so mixed-field bugs surface early.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aempc/rng.hpp"

namespace aempc {

inline bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

struct FieldElement {
    uint64_t value = 0;
    uint64_t modulus = 0;

    FieldElement() = default;
    FieldElement(uint64_t v, uint64_t p) : value(v % p), modulus(p) {}

    static FieldElement zero(uint64_t p) { return FieldElement(0, p); }
    static FieldElement random(Rng& rng, uint64_t p) { return FieldElement(rng.below(p), p); }

    FieldElement operator+(const FieldElement& o) const {
        check(o);
        return FieldElement((value + o.value) % modulus, modulus);
    }
    FieldElement operator-(const FieldElement& o) const {
        check(o);
        return FieldElement((value + modulus - o.value) % modulus, modulus);
    }
    FieldElement operator*(const FieldElement& o) const {
        check(o);
        unsigned __int128 prod = static_cast<unsigned __int128>(value) * o.value;
        return FieldElement(static_cast<uint64_t>(prod % modulus), modulus);
    }
    FieldElement operator-() const { return FieldElement(modulus - value, modulus); }

    FieldElement pow(uint64_t e) const {
        FieldElement base = *this;
        FieldElement acc(1, modulus);
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Multiplicative inverse via Fermat; requires a prime modulus and a
    // nonzero value.
    FieldElement inverse() const {
        if (value == 0) throw std::domain_error("FieldElement: inverse of zero");
        return pow(modulus - 2);
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    bool operator==(const FieldElement& o) const {
        return value == o.value && modulus == o.modulus;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    void check(const FieldElement& o) const {
        if (modulus != o.modulus) throw std::invalid_argument("FieldElement: modulus mismatch");
    }
};

// Coefficients lowest degree first; the length fixes the degree bound, and
// the leading coefficient may be zero.
struct Polynomial {
    std::vector<FieldElement> coefficients;

    size_t degree_bound() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    FieldElement evaluate(const FieldElement& x) const {
        FieldElement acc = FieldElement::zero(x.modulus);
        for (size_t i = coefficients.size(); i-- > 0;) {
            acc = acc * x + coefficients[i];
        }
        return acc;
    }

    FieldElement constant_term() const {
        if (coefficients.empty()) throw std::logic_error("Polynomial: empty");
        return coefficients[0];
    }

    bool operator==(const Polynomial& o) const { return coefficients == o.coefficients; }
};

struct Share {
    int party_index = 0;  // in [1, n]
    FieldElement value;
};

// Unique polynomial of degree <= points-1 through the given points.
// Duplicate x-coordinates are rejected.
inline Polynomial lagrange_interpolate(const std::vector<std::pair<FieldElement, FieldElement>>& points) {
    if (points.empty()) throw std::invalid_argument("lagrange_interpolate: no points");
    const uint64_t p = points[0].first.modulus;
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first == points[j].first) {
                throw std::invalid_argument("lagrange_interpolate: duplicate x-coordinate");
            }
        }
    }
    const size_t k = points.size();
    std::vector<FieldElement> acc(k, FieldElement::zero(p));
    for (size_t i = 0; i < k; ++i) {
        // Basis polynomial for point i, times y_i, accumulated into acc.
        std::vector<FieldElement> basis{FieldElement(1, p)};
        FieldElement denom(1, p);
        for (size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            // basis *= (x - x_j)
            std::vector<FieldElement> next(basis.size() + 1, FieldElement::zero(p));
            for (size_t c = 0; c < basis.size(); ++c) {
                next[c + 1] = next[c + 1] + basis[c];
                next[c] = next[c] - basis[c] * points[j].first;
            }
            basis = std::move(next);
            denom = denom * (points[i].first - points[j].first);
        }
        FieldElement scale = points[i].second / denom;
        for (size_t c = 0; c < basis.size(); ++c) {
            acc[c] = acc[c] + basis[c] * scale;
        }
    }
    return Polynomial{acc};
}

// Value at x of the interpolating polynomial, without building coefficients.
inline FieldElement interpolate_at(const std::vector<std::pair<FieldElement, FieldElement>>& points,
                                   const FieldElement& x) {
    const uint64_t p = x.modulus;
    FieldElement acc = FieldElement::zero(p);
    for (size_t i = 0; i < points.size(); ++i) {
        FieldElement num(1, p), den(1, p);
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            num = num * (x - points[j].first);
            den = den * (points[i].first - points[j].first);
        }
        acc = acc + points[i].second * num / den;
    }
    return acc;
}

// Degree-<=t sharing of `secret` evaluated at party points 1..n. The
// non-constant coefficients are drawn from `rng`, so a fixed seed fixes
// the whole sharing.
inline std::vector<Share> shamir_share(const FieldElement& secret, int t, int n, Rng& rng) {
    const uint64_t p = secret.modulus;
    if (t < 0 || t >= n) throw std::invalid_argument("shamir_share: need 0 <= t < n");
    if (static_cast<uint64_t>(n) >= p) throw std::invalid_argument("shamir_share: need n < p");
    Polynomial poly;
    poly.coefficients.push_back(secret);
    for (int i = 0; i < t; ++i) {
        poly.coefficients.push_back(FieldElement::random(rng, p));
    }
    std::vector<Share> shares;
    shares.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        shares.push_back(Share{i, poly.evaluate(FieldElement(static_cast<uint64_t>(i), p))});
    }
    return shares;
}

// Constant term of the unique degree-<=t polynomial agreeing with all but
// at most max_errors of the shares. Exhaustive subset decoding: try
// (t+1)-subsets in a fixed order and verify agreement against the whole
// share vector. Returns nullopt when nothing reaches the agreement bar.
inline std::optional<FieldElement> robust_reconstruct(const std::vector<Share>& shares, int t,
                                                      int max_errors) {
    if (shares.empty()) return std::nullopt;
    const int m = static_cast<int>(shares.size());
    if (m < t + 2 * max_errors + 1) {
        throw std::invalid_argument("robust_reconstruct: need |shares| >= t + 2*max_errors + 1");
    }
    for (int i = 0; i + 1 < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (shares[i].party_index == shares[j].party_index) {
                throw std::invalid_argument("robust_reconstruct: duplicate party index");
            }
        }
    }
    const uint64_t p = shares[0].value.modulus;
    const int need = m - max_errors;

    std::vector<int> idx(static_cast<size_t>(t) + 1);
    for (int i = 0; i <= t; ++i) idx[static_cast<size_t>(i)] = i;

    auto try_subset = [&](const std::vector<int>& subset) -> std::optional<FieldElement> {
        std::vector<std::pair<FieldElement, FieldElement>> pts;
        pts.reserve(subset.size());
        for (int s : subset) {
            pts.emplace_back(FieldElement(static_cast<uint64_t>(shares[static_cast<size_t>(s)].party_index), p),
                             shares[static_cast<size_t>(s)].value);
        }
        Polynomial poly = lagrange_interpolate(pts);
        int agree = 0;
        for (const Share& sh : shares) {
            if (poly.evaluate(FieldElement(static_cast<uint64_t>(sh.party_index), p)) == sh.value) {
                ++agree;
            }
        }
        if (agree >= need) return poly.constant_term();
        return std::nullopt;
    };

    // Enumerate (t+1)-subsets in lexicographic order.
    while (true) {
        if (auto hit = try_subset(idx)) return hit;
        int pos = t;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - (t + 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int q = pos + 1; q <= t; ++q) {
            idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace aempc
