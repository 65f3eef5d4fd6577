#pragma once

// Bit strings of arbitrary length. Channel payloads, pads and adversary
// replies are all Bits; XOR requires equal lengths.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aempc/rng.hpp"

namespace aempc {

class Bits {
public:
    Bits() = default;

    static Bits zeros(size_t nbits) {
        Bits b;
        b.nbits_ = nbits;
        b.bytes_.assign((nbits + 7) / 8, 0);
        return b;
    }

    static Bits random(Rng& rng, size_t nbits) {
        Bits b = zeros(nbits);
        for (size_t i = 0; i < b.bytes_.size(); ++i) {
            b.bytes_[i] = static_cast<uint8_t>(rng.next_u64() & 0xff);
        }
        b.mask_tail();
        return b;
    }

    static Bits from_bytes(std::vector<uint8_t> bytes) {
        Bits b;
        b.nbits_ = bytes.size() * 8;
        b.bytes_ = std::move(bytes);
        return b;
    }

    // Parse "1011" (most significant bit first).
    static Bits parse(const std::string& s) {
        Bits b = zeros(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                b.set_bit(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("Bits::parse: expected '0' or '1'");
            }
        }
        return b;
    }

    size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool bit(size_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1u; }

    void set_bit(size_t i, bool v) {
        const uint8_t mask = static_cast<uint8_t>(1u << (7 - i % 8));
        if (v) {
            bytes_[i / 8] |= mask;
        } else {
            bytes_[i / 8] &= static_cast<uint8_t>(~mask);
        }
    }

    Bits operator^(const Bits& other) const {
        if (nbits_ != other.nbits_) {
            throw std::invalid_argument("Bits: xor of unequal lengths");
        }
        Bits out = *this;
        for (size_t i = 0; i < bytes_.size(); ++i) {
            out.bytes_[i] ^= other.bytes_[i];
        }
        return out;
    }

    Bits operator~() const {
        Bits out = *this;
        for (auto& byte : out.bytes_) {
            byte = static_cast<uint8_t>(~byte);
        }
        out.mask_tail();
        return out;
    }

    bool operator==(const Bits& other) const {
        return nbits_ == other.nbits_ && bytes_ == other.bytes_;
    }
    bool operator!=(const Bits& other) const { return !(*this == other); }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (size_t i = 0; i < nbits_; ++i) {
            if (bit(i)) s[i] = '1';
        }
        return s;
    }

    // Backing bytes, final partial byte zero-padded.
    const std::vector<uint8_t>& bytes() const { return bytes_; }

    // Hex of (bit count, bytes) — stable form for records and view keys.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        s.reserve(bytes_.size() * 2);
        for (uint8_t b : bytes_) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xf]);
        }
        return std::to_string(nbits_) + ":" + s;
    }

    static Bits from_hex(const std::string& text) {
        auto colon = text.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("Bits::from_hex: missing length prefix");
        }
        size_t nbits = std::stoull(text.substr(0, colon));
        std::string hex = text.substr(colon + 1);
        if (hex.size() != ((nbits + 7) / 8) * 2) {
            throw std::invalid_argument("Bits::from_hex: length mismatch");
        }
        Bits b = zeros(nbits);
        auto nib = [](char c) -> uint8_t {
            if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(c - 'a' + 10);
            throw std::invalid_argument("Bits::from_hex: bad hex digit");
        };
        for (size_t i = 0; i < b.bytes_.size(); ++i) {
            b.bytes_[i] = static_cast<uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
        }
        b.mask_tail();
        return b;
    }

    bool operator<(const Bits& other) const {
        if (nbits_ != other.nbits_) return nbits_ < other.nbits_;
        return bytes_ < other.bytes_;
    }

private:
    void mask_tail() {
        if (nbits_ % 8 != 0 && !bytes_.empty()) {
            bytes_.back() &= static_cast<uint8_t>(0xff << (8 - nbits_ % 8));
        }
    }

    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

}  // namespace aempc
