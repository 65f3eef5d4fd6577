#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "aempc/scenario.hpp"

using namespace aempc;

namespace {

Scenario from_text(const std::string& text) { return Scenario::from_json(Json::parse(text)); }

}  // namespace

TEST_CASE("minimal file: documented defaults") {
    Scenario s = from_text(R"({"n": 4})");
    CHECK(s.p == 101);
    CHECK(s.r == 8);
    CHECK(s.strategy.name == "passthrough");
    CHECK(s.inputs == std::vector<uint64_t>{0, 0, 0, 0});
    CHECK(s.seed == 0);
    // All channels secure.
    for (const auto& [key, type] : s.network()) CHECK(type == ChannelType::Secure);
    // Default circuit: the n-party sum.
    auto inputs = s.input_elements();
    CHECK(evaluate_circuit(s.circuit, inputs).value == 0);
}

TEST_CASE("r = 6 is rejected because r must exceed 6") {
    CHECK_THROWS_WITH_AS(from_text(R"({"n": 4, "r": 6})"), "scenario: r must exceed 6",
                         std::invalid_argument);
}

TEST_CASE("self-loop channel entries are rejected") {
    CHECK_THROWS_AS(
        from_text(R"({"n": 4, "channels": [{"from": 2, "to": 2, "type": "full"}]})"),
        std::invalid_argument);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(from_text(R"({"n": 4, "piratical": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(from_text(R"({"n": 4, "corruption": {"parties_evil": [1]}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_text(R"({"n": 4, "strategy": {"name": "passthrough", "extra": 1}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        from_text(R"({"n": 4, "circuit": {"gates": [{"op": "output", "a": 0, "w": 9}]}})"),
        std::invalid_argument);
}

TEST_CASE("composite or tiny moduli are rejected") {
    CHECK_THROWS_AS(from_text(R"({"n": 4, "p": 100})"), std::invalid_argument);
    CHECK_THROWS_AS(from_text(R"({"n": 6, "p": 5})"), std::invalid_argument);
}

TEST_CASE("inputs outside the field are rejected") {
    CHECK_THROWS_AS(from_text(R"({"n": 4, "inputs": [101, 0, 0, 0]})"), std::invalid_argument);
    CHECK_THROWS_AS(from_text(R"({"n": 4, "inputs": [1, 2]})"), std::invalid_argument);
}

TEST_CASE("channels matrix and corruption sets must agree") {
    CHECK_THROWS_AS(from_text(R"({
        "n": 4,
        "channels": [{"from": 1, "to": 2, "type": "secure"}],
        "corruption": {"channels_full": [[1, 2]]}
    })"),
                    std::invalid_argument);
    // Consistent double declaration is fine.
    Scenario s = from_text(R"({
        "n": 4,
        "channels": [{"from": 1, "to": 2, "type": "full"}],
        "corruption": {"channels_full": [[1, 2]]}
    })");
    CHECK(network_type(s.network(), 1, 2) == ChannelType::FullTamper);
}

TEST_CASE("channel corruption sets must be disjoint") {
    CHECK_THROWS_AS(from_text(R"({
        "n": 4,
        "corruption": {"channels_full": [[1, 2]], "channels_partial": [[1, 2]]}
    })"),
                    std::invalid_argument);
}

TEST_CASE("unknown strategies and gate ops are rejected") {
    CHECK_THROWS_AS(from_text(R"({"n": 4, "strategy": {"name": "meddler"}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_text(R"({"n": 4, "circuit": {"gates": [{"op": "xor", "a": 0, "b": 1}]}})"),
                    std::invalid_argument);
}

TEST_CASE("digest is stable and sensitive") {
    Scenario a = from_text(R"({"n": 4, "seed": 7})");
    Scenario b = from_text(R"({"n": 4, "seed": 7})");
    Scenario c = from_text(R"({"n": 4, "seed": 8})");
    CHECK(a.digest() == b.digest());
    CHECK(a.digest() != c.digest());
    CHECK(a.digest().size() == 64);
}

TEST_CASE("parse_scenario reports missing and malformed files") {
    CHECK_THROWS_AS(parse_scenario("/nonexistent/file.json"), std::invalid_argument);
    const char* path = "/tmp/aempc_bad_scenario.json";
    std::ofstream(path) << "{ nope";
    CHECK_THROWS_AS(parse_scenario(path), std::invalid_argument);
    std::remove(path);
}

TEST_CASE("multiplication envelope validation") {
    // n=7 has t=2, so 4t+1=9 > 7: Mul + active corruption must be refused.
    CHECK_THROWS_AS(from_text(R"({
        "n": 7,
        "circuit": {"gates": [{"op": "mul", "a": 0, "b": 1}, {"op": "output", "a": 7}]},
        "corruption": {"parties_active": [7]}
    })"),
                    std::invalid_argument);
    // Passive corruption with Mul is fine at n=7.
    CHECK_NOTHROW(from_text(R"({
        "n": 7,
        "circuit": {"gates": [{"op": "mul", "a": 0, "b": 1}, {"op": "output", "a": 7}]},
        "corruption": {"parties_passive": [7]}
    })"));
}
