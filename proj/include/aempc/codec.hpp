#pragma once

// Canonical byte encoding for protocol payloads. Fixed-width integers and
// length prefixes keep message sizes a function of structure only, never of
// the field values inside.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aempc/bits.hpp"
#include "aempc/field.hpp"

namespace aempc {

class ByteWriter {
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u16(uint16_t v) {
        out_.push_back(static_cast<uint8_t>(v >> 8));
        out_.push_back(static_cast<uint8_t>(v));
    }
    void u32(uint32_t v) {
        for (int i = 3; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 7; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void field(const FieldElement& f) { u64(f.value); }
    void bits(const Bits& b) {
        u32(static_cast<uint32_t>(b.size()));
        out_.insert(out_.end(), b.bytes().begin(), b.bytes().end());
    }
    void raw(const std::vector<uint8_t>& v) { out_.insert(out_.end(), v.begin(), v.end()); }

    std::vector<uint8_t> take() { return std::move(out_); }

private:
    std::vector<uint8_t> out_;
};

// Throws std::out_of_range on truncated input; message parsers catch and
// treat the message as absent.
class ByteReader {
public:
    explicit ByteReader(const std::vector<uint8_t>& data) : data_(data) {}

    uint8_t u8() { return next(); }
    uint16_t u16() { return static_cast<uint16_t>((static_cast<uint16_t>(next()) << 8) | next()); }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | next();
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | next();
        return v;
    }
    FieldElement field(uint64_t modulus) {
        uint64_t v = u64();
        if (v >= modulus) throw std::out_of_range("ByteReader: field value out of range");
        return FieldElement(v, modulus);
    }
    Bits bits() {
        uint32_t nbits = u32();
        size_t nbytes = (static_cast<size_t>(nbits) + 7) / 8;
        if (pos_ + nbytes > data_.size()) throw std::out_of_range("ByteReader: truncated bits");
        std::vector<uint8_t> raw(data_.begin() + static_cast<long>(pos_),
                                 data_.begin() + static_cast<long>(pos_ + nbytes));
        pos_ += nbytes;
        Bits b = Bits::from_bytes(std::move(raw));
        // from_bytes rounds up to whole bytes; rebuild with the exact count.
        Bits exact = Bits::zeros(nbits);
        for (size_t i = 0; i < nbits; ++i) exact.set_bit(i, b.bit(i));
        return exact;
    }
    bool done() const { return pos_ == data_.size(); }
    void expect_done() const {
        if (!done()) throw std::out_of_range("ByteReader: trailing bytes");
    }

private:
    uint8_t next() {
        if (pos_ >= data_.size()) throw std::out_of_range("ByteReader: truncated");
        return data_[pos_++];
    }
    const std::vector<uint8_t>& data_;
    size_t pos_ = 0;
};

// Protocol payloads are length-prefixed: [u32 body length][body]. The
// prefix makes |m| carry structure only.
inline Bits seal_payload(std::vector<uint8_t> body) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(body.size()));
    w.raw(body);
    return Bits::from_bytes(w.take());
}

inline std::optional<std::vector<uint8_t>> open_payload(const Bits& payload) {
    if (payload.size() % 8 != 0) return std::nullopt;
    const auto& bytes = payload.bytes();
    if (bytes.size() < 4) return std::nullopt;
    uint32_t len = (static_cast<uint32_t>(bytes[0]) << 24) | (static_cast<uint32_t>(bytes[1]) << 16) |
                   (static_cast<uint32_t>(bytes[2]) << 8) | static_cast<uint32_t>(bytes[3]);
    if (bytes.size() != 4 + static_cast<size_t>(len)) return std::nullopt;
    return std::vector<uint8_t>(bytes.begin() + 4, bytes.end());
}

}  // namespace aempc
