#pragma once

// Scenario: one complete experiment description — parties, field, channel
// latency, circuit, corruption vector, adversary strategy, inputs, seed.
// The JSON form is strict: unknown keys are rejected, and the documented
// defaults (secure channels, passthrough strategy, p=101, r=8, sum
// circuit, zero inputs, seed 0) are the only ones applied.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aempc/circuit.hpp"
#include "aempc/corruption.hpp"
#include "aempc/field.hpp"
#include "aempc/sha256.hpp"

namespace aempc {

using Json = nlohmann::json;

struct StrategySpec {
    std::string name = "passthrough";
    Json params = Json::object();
};

inline const std::set<std::string>& known_strategies() {
    static const std::set<std::string> names = {"passthrough", "recorder",       "dropper",
                                                "bitflipper",  "default_forcer", "full_controller"};
    return names;
}

struct Scenario {
    int n = 0;
    uint64_t p = 101;
    int r = 8;
    CircuitDescription circuit;
    CorruptionVector corruption;
    StrategySpec strategy;
    std::vector<uint64_t> inputs;
    uint64_t seed = 0;

    int threshold() const { return (n - 1) / 3; }
    NetworkMap network() const { return derive_network(corruption, n); }

    std::vector<FieldElement> input_elements() const {
        std::vector<FieldElement> out;
        out.reserve(inputs.size());
        for (uint64_t v : inputs) out.emplace_back(v, p);
        return out;
    }

    void validate() const {
        if (n < 4) throw std::invalid_argument("scenario: n must be at least 4");
        if (!is_prime(p)) throw std::invalid_argument("scenario: p must be prime");
        if (p <= static_cast<uint64_t>(n)) throw std::invalid_argument("scenario: p must exceed n");
        if (r <= 6) throw std::invalid_argument("scenario: r must exceed 6");
        circuit.validate();
        if (circuit.num_inputs != n) {
            throw std::invalid_argument("scenario: circuit inputs must equal n");
        }
        corruption.validate(n);
        if (inputs.size() != static_cast<size_t>(n)) {
            throw std::invalid_argument("scenario: need one input per party");
        }
        for (uint64_t v : inputs) {
            if (v >= p) throw std::invalid_argument("scenario: input outside the field");
        }
        if (!known_strategies().count(strategy.name)) {
            throw std::invalid_argument("scenario: unknown strategy '" + strategy.name + "'");
        }
        if (circuit.has_mul() && !corruption.active_parties.empty() && n < 4 * threshold() + 1) {
            throw std::invalid_argument(
                "scenario: multiplication under active corruption needs n >= 4t+1");
        }
    }

    Json to_json() const {
        Json j;
        j["n"] = n;
        j["p"] = p;
        j["r"] = r;
        Json gates = Json::array();
        for (const Gate& g : circuit.gates) {
            Json jg;
            jg["op"] = Gate::op_name(g.op);
            jg["a"] = g.a;
            if (g.op == Gate::Op::Add || g.op == Gate::Op::Mul) jg["b"] = g.b;
            if (g.op == Gate::Op::ScalarMul) jg["c"] = g.scalar;
            gates.push_back(jg);
        }
        j["circuit"] = Json{{"gates", gates}};
        Json corr;
        corr["parties_passive"] = corruption.passive_parties;
        corr["parties_active"] = corruption.active_parties;
        auto channel_list = [](const std::set<ChannelKey>& s) {
            Json arr = Json::array();
            for (const auto& [from, to] : s) arr.push_back(Json::array({from, to}));
            return arr;
        };
        corr["channels_eavesdrop"] = channel_list(corruption.eavesdrop_channels);
        corr["channels_partial"] = channel_list(corruption.partial_channels);
        corr["channels_full"] = channel_list(corruption.full_channels);
        j["corruption"] = corr;
        j["strategy"] = Json{{"name", strategy.name}, {"params", strategy.params}};
        j["inputs"] = inputs;
        j["seed"] = seed;
        return j;
    }

    // Hex SHA-256 over the canonical (key-sorted, complete) serialization.
    std::string digest() const { return Sha256::hex_digest(to_json().dump()); }

    static Scenario from_json(const Json& j);
};

namespace detail {

inline void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("scenario: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw std::invalid_argument("scenario: unknown key '" + it.key() + "' in " + where);
        }
    }
}

inline std::set<ChannelKey> parse_channel_set(const Json& arr, const std::string& where) {
    std::set<ChannelKey> out;
    if (!arr.is_array()) throw std::invalid_argument("scenario: " + where + " must be an array");
    for (const Json& e : arr) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("scenario: " + where + " entries must be [from, to]");
        }
        out.emplace(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

}  // namespace detail

inline Scenario Scenario::from_json(const Json& j) {
    detail::reject_unknown_keys(
        j, {"n", "p", "r", "circuit", "channels", "corruption", "strategy", "inputs", "seed"},
        "scenario");
    Scenario s;
    if (!j.contains("n")) throw std::invalid_argument("scenario: missing key 'n'");
    s.n = j.at("n").get<int>();
    if (j.contains("p")) s.p = j.at("p").get<uint64_t>();
    if (j.contains("r")) s.r = j.at("r").get<int>();

    if (j.contains("circuit")) {
        detail::reject_unknown_keys(j.at("circuit"), {"gates"}, "circuit");
        s.circuit.num_inputs = s.n;
        for (const Json& jg : j.at("circuit").at("gates")) {
            detail::reject_unknown_keys(jg, {"op", "a", "b", "c"}, "gate");
            Gate g;
            const std::string op = jg.at("op").get<std::string>();
            if (op == "add") {
                g.op = Gate::Op::Add;
                g.b = jg.at("b").get<int>();
            } else if (op == "mul") {
                g.op = Gate::Op::Mul;
                g.b = jg.at("b").get<int>();
            } else if (op == "scalar_mul") {
                g.op = Gate::Op::ScalarMul;
                g.scalar = jg.at("c").get<uint64_t>();
            } else if (op == "output") {
                g.op = Gate::Op::Output;
            } else {
                throw std::invalid_argument("scenario: unknown gate op '" + op + "'");
            }
            g.a = jg.at("a").get<int>();
            s.circuit.gates.push_back(g);
        }
    } else {
        s.circuit = sum_circuit(s.n);
    }

    if (j.contains("corruption")) {
        const Json& c = j.at("corruption");
        detail::reject_unknown_keys(c,
                                    {"parties_passive", "parties_active", "channels_eavesdrop",
                                     "channels_partial", "channels_full"},
                                    "corruption");
        if (c.contains("parties_passive")) {
            for (int p : c.at("parties_passive")) s.corruption.passive_parties.insert(p);
        }
        if (c.contains("parties_active")) {
            for (int p : c.at("parties_active")) s.corruption.active_parties.insert(p);
        }
        if (c.contains("channels_eavesdrop")) {
            s.corruption.eavesdrop_channels =
                detail::parse_channel_set(c.at("channels_eavesdrop"), "channels_eavesdrop");
        }
        if (c.contains("channels_partial")) {
            s.corruption.partial_channels =
                detail::parse_channel_set(c.at("channels_partial"), "channels_partial");
        }
        if (c.contains("channels_full")) {
            s.corruption.full_channels =
                detail::parse_channel_set(c.at("channels_full"), "channels_full");
        }
    }

    // The channels matrix is an alternative spelling of the corruption
    // channel sets; entries must not contradict them.
    if (j.contains("channels")) {
        if (!j.at("channels").is_array()) {
            throw std::invalid_argument("scenario: channels must be an array");
        }
        for (const Json& e : j.at("channels")) {
            detail::reject_unknown_keys(e, {"from", "to", "type"}, "channel entry");
            const int from = e.at("from").get<int>();
            const int to = e.at("to").get<int>();
            const std::string type = e.at("type").get<std::string>();
            if (from == to) {
                throw std::invalid_argument("scenario: channel entry names a self-loop");
            }
            ChannelKey key{from, to};
            auto declared_as = [&](const std::set<ChannelKey>& in_set, const std::string& as) {
                if (in_set.count(key) && type != as) {
                    throw std::invalid_argument("scenario: channel (" + std::to_string(from) + "," +
                                                std::to_string(to) +
                                                ") contradicts the corruption sets");
                }
            };
            declared_as(s.corruption.eavesdrop_channels, "eavesdrop");
            declared_as(s.corruption.partial_channels, "partial");
            declared_as(s.corruption.full_channels, "full");
            if (type == "eavesdrop") {
                s.corruption.eavesdrop_channels.insert(key);
            } else if (type == "partial") {
                s.corruption.partial_channels.insert(key);
            } else if (type == "full") {
                s.corruption.full_channels.insert(key);
            } else if (type != "secure") {
                throw std::invalid_argument("scenario: unknown channel type '" + type + "'");
            }
        }
    }

    if (j.contains("strategy")) {
        detail::reject_unknown_keys(j.at("strategy"), {"name", "params"}, "strategy");
        s.strategy.name = j.at("strategy").at("name").get<std::string>();
        if (j.at("strategy").contains("params")) s.strategy.params = j.at("strategy").at("params");
    }

    if (j.contains("inputs")) {
        for (uint64_t v : j.at("inputs")) s.inputs.push_back(v);
    } else {
        s.inputs.assign(static_cast<size_t>(s.n), 0);
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();

    s.validate();
    return s;
}

inline Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot read '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("scenario: malformed JSON in '" + path + "': " + e.what());
    }
    return Scenario::from_json(j);
}

}  // namespace aempc
