#include <doctest.h>

#include <set>

#include "aempc/channel.hpp"
#include "aempc/strategy.hpp"

using namespace aempc;

namespace {

PadSource fixed_pad(const Bits& pad) {
    return [pad](size_t nbits) {
        REQUIRE(nbits == pad.size());
        return pad;
    };
}

ChannelState make(ChannelType type, int r = 8, PadSource pads = {}) {
    if (!pads) pads = [](size_t nbits) { return Bits::zeros(nbits); };
    return ChannelState(ChannelId{1, 2, 1}, type, r, std::move(pads));
}

}  // namespace

TEST_CASE("secure channel: length-only notice, delivery at i+r-1") {
    auto ch = make(ChannelType::Secure, 8);
    Rng rng(3);
    Bits m = Bits::random(rng, 16);
    auto notice = ch.on_send(m, 1, 0);
    CHECK(notice.notice_round == 1);
    CHECK_FALSE(notice.payload.has_value());
    CHECK(notice.payload_length == 16);
    for (Round r = 0; r < 7; ++r) CHECK(ch.on_tick(r).empty());
    auto deliveries = ch.on_tick(7);
    REQUIRE(deliveries.size() == 1);
    CHECK(deliveries[0].payload == m);
    CHECK(deliveries[0].round == 7);
}

TEST_CASE("secure notices depend only on payload length") {
    auto ch = make(ChannelType::Secure, 8);
    auto n1 = ch.on_send(Bits::parse("1111000011110000"), 1, 0);
    auto n2 = ch.on_send(Bits::parse("0000000000000001"), 2, 0);
    CHECK(n1.payload_length == n2.payload_length);
    CHECK_FALSE(n1.payload.has_value());
    CHECK_FALSE(n2.payload.has_value());
}

TEST_CASE("partial channel: zero pad leaves the notice equal to the payload") {
    auto ch = make(ChannelType::PartialTamper, 8, fixed_pad(Bits::parse("0000")));
    auto notice = ch.on_send(Bits::parse("1011"), 1, 0);
    REQUIRE(notice.payload.has_value());
    CHECK(notice.payload->to_string() == "1011");
}

TEST_CASE("partial channel: pad 0110 masks 1011 to 1101") {
    auto ch = make(ChannelType::PartialTamper, 8, fixed_pad(Bits::parse("0110")));
    auto notice = ch.on_send(Bits::parse("1011"), 1, 0);
    REQUIRE(notice.payload.has_value());
    CHECK(notice.payload->to_string() == "1101");
}

TEST_CASE("partial channel: echoing the notice delivers the original message") {
    Rng rng(11);
    auto ch = ChannelState(ChannelId{1, 2, 1}, ChannelType::PartialTamper, 8,
                           [&rng](size_t nbits) { return Bits::random(rng, nbits); });
    Bits m = Bits::parse("10110010");
    auto notice = ch.on_send(m, 1, 0);
    REQUIRE(notice.payload.has_value());
    CHECK(ch.on_adversary_reply(1, *notice.payload, 1) == ReplyStatus::Accepted);
    auto deliveries = ch.on_tick(7);
    REQUIRE(deliveries.size() == 1);
    CHECK(deliveries[0].payload == m);
}

TEST_CASE("reply timing window is i+1 .. i+r-2") {
    const int r = 8;
    Bits m = Bits::parse("1010");
    SUBCASE("accepted at the last allowed round") {
        auto ch = make(ChannelType::FullTamper, r);
        ch.on_send(m, 1, 0);
        CHECK(ch.on_adversary_reply(1, m, r - 2) == ReplyStatus::Accepted);
        CHECK(ch.on_tick(r - 1).size() == 1);
    }
    SUBCASE("discarded one round later, message dropped") {
        auto ch = make(ChannelType::FullTamper, r);
        ch.on_send(m, 1, 0);
        CHECK(ch.on_adversary_reply(1, m, r - 1) == ReplyStatus::TooLate);
        CHECK(ch.on_tick(r - 1).empty());
        CHECK(ch.take_drops().size() == 1);
    }
}

TEST_CASE("length mismatch and unknown ids are discarded") {
    auto ch = make(ChannelType::FullTamper, 8);
    ch.on_send(Bits::parse("1010"), 1, 0);
    CHECK(ch.on_adversary_reply(1, Bits::parse("10100"), 1) == ReplyStatus::LengthMismatch);
    CHECK(ch.on_adversary_reply(9, Bits::parse("1010"), 1) == ReplyStatus::UnknownMessage);
    // Original handling proceeds: no reply stored, so the message drops.
    CHECK(ch.on_tick(7).empty());
    CHECK(ch.take_drops().size() == 1);
}

TEST_CASE("secure and eavesdrop channels ignore replies") {
    auto secure = make(ChannelType::Secure, 8);
    secure.on_send(Bits::parse("1010"), 1, 0);
    CHECK(secure.on_adversary_reply(1, Bits::parse("1010"), 1) ==
          ReplyStatus::ChannelIgnoresReplies);
    auto eaves = make(ChannelType::Eavesdrop, 8);
    eaves.on_send(Bits::parse("1010"), 1, 0);
    CHECK(eaves.on_adversary_reply(1, Bits::parse("1010"), 1) ==
          ReplyStatus::ChannelIgnoresReplies);
    // Delivery still happens.
    CHECK(secure.on_tick(7).size() == 1);
    CHECK(eaves.on_tick(7).size() == 1);
}

TEST_CASE("eavesdrop send at round 3 with r=8 delivers at round 10") {
    auto ch = make(ChannelType::Eavesdrop, 8);
    auto notice = ch.on_send(Bits::parse("1010"), 1, 3);
    CHECK(notice.notice_round == 4);
    REQUIRE(notice.payload.has_value());
    CHECK(notice.payload->to_string() == "1010");
    CHECK(ch.on_tick(9).empty());
    CHECK(ch.on_tick(10).size() == 1);
}

TEST_CASE("silent adversary on tampered channels means a drop") {
    for (ChannelType type : {ChannelType::PartialTamper, ChannelType::FullTamper}) {
        auto ch = make(type, 8);
        ch.on_send(Bits::parse("1010"), 1, 0);
        CHECK(ch.on_tick(7).empty());
        CHECK(ch.take_drops().size() == 1);
    }
}

TEST_CASE("duplicate message ids are rejected") {
    auto ch = make(ChannelType::Secure, 8);
    ch.on_send(Bits::parse("1"), 7, 0);
    CHECK_THROWS_AS(ch.on_send(Bits::parse("1"), 7, 1), std::invalid_argument);
}

TEST_CASE("latency must exceed 6") {
    CHECK_THROWS_AS(make(ChannelType::Secure, 6), std::invalid_argument);
    CHECK_NOTHROW(make(ChannelType::Secure, 7));
}

TEST_CASE("partial-channel masking: fresh pads make the notice uniform") {
    // Exhaustive over 4-bit payloads and pads: every notice value appears
    // exactly once per payload, so the marginal over a uniform pad is
    // uniform and independent of m.
    for (uint64_t m = 0; m < 16; ++m) {
        std::set<std::string> notices;
        for (uint64_t pad = 0; pad < 16; ++pad) {
            Bits mb = Bits::zeros(4), pb = Bits::zeros(4);
            for (int i = 0; i < 4; ++i) {
                mb.set_bit(static_cast<size_t>(i), (m >> (3 - i)) & 1);
                pb.set_bit(static_cast<size_t>(i), (pad >> (3 - i)) & 1);
            }
            auto ch = make(ChannelType::PartialTamper, 8, fixed_pad(pb));
            auto notice = ch.on_send(mb, 1, 0);
            REQUIRE(notice.payload.has_value());
            notices.insert(notice.payload->to_string());
        }
        CHECK(notices.size() == 16);
    }
}

TEST_CASE("bitflipper strategy yields m xor mask end to end") {
    strategies::BitFlipper flip(Bits::parse("0110"));
    Rng rng(5);
    for (ChannelType type : {ChannelType::PartialTamper, ChannelType::FullTamper}) {
        auto ch = make(type, 8, fixed_pad(Bits::parse("1001")));
        Bits m = Bits::parse("1011");
        auto notice = ch.on_send(m, 1, 0);
        auto reply = flip.on_notice(notice, rng);
        REQUIRE(reply.has_value());
        CHECK(ch.on_adversary_reply(1, *reply, 1) == ReplyStatus::Accepted);
        auto deliveries = ch.on_tick(7);
        REQUIRE(deliveries.size() == 1);
        CHECK(deliveries[0].payload == (m ^ Bits::parse("0110")));
    }
}
