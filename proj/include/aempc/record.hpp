#pragma once

// Execution records: everything one run produced, losslessly serializable
// to JSON. A record embeds the scenario it came from and the seed, so any
// published number is reproducible by one command. from_json(to_json(x))
// is the identity, and saving twice yields identical bytes.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aempc/runner.hpp"
#include "aempc/scenario.hpp"

namespace aempc {

constexpr int kRecordSchemaVersion = 1;

struct ExecutionRecord {
    int schema_version = kRecordSchemaVersion;
    std::string scenario_digest;
    Json scenario_json;
    bool feasible = false;
    GuaranteeSets prediction;
    CommittedVector committed;
    std::vector<std::optional<FieldElement>> outputs;
    std::vector<Transcript> transcripts;
    AdversaryView view;
    std::vector<TraceEvent> trace;
    int commitment_rounds = 0;
    int base_rounds = 0;
    long network_rounds = 0;

    Scenario scenario() const { return Scenario::from_json(scenario_json); }

    Json to_json() const {
        Json j;
        j["schema_version"] = schema_version;
        j["scenario_digest"] = scenario_digest;
        j["scenario"] = scenario_json;
        j["feasible"] = feasible;
        j["prediction"] = Json{{"correctness", prediction.correctness_parties},
                               {"privacy", prediction.privacy_parties}};
        Json committed_values = Json::array();
        for (const FieldElement& v : committed.values) committed_values.push_back(v.value);
        j["committed"] = Json{{"values", committed_values}, {"defaulted", committed.defaulted}};
        Json outs = Json::array();
        for (const auto& o : outputs) {
            if (o) {
                outs.push_back(o->value);
            } else {
                outs.push_back(nullptr);
            }
        }
        j["outputs"] = outs;
        Json trs = Json::array();
        for (const Transcript& t : transcripts) {
            Json entries = Json::array();
            for (const TranscriptEntry& e : t.entries) {
                entries.push_back(Json::array({e.base_round, e.peer, e.incoming ? 1 : 0,
                                               e.payload.to_hex(), e.network_round}));
            }
            trs.push_back(Json{{"party", t.party},
                               {"input", t.input.value},
                               {"seed", t.seed},
                               {"commitment_end", t.commitment_end},
                               {"entries", entries}});
        }
        j["transcripts"] = trs;
        Json view_items = Json::array();
        for (const ViewItem& it : view.items) {
            view_items.push_back(Json::array({static_cast<int>(it.kind), it.party, it.peer,
                                              it.edge_id, it.number,
                                              it.payload ? Json(it.payload->to_hex()) : Json(nullptr),
                                              it.round}));
        }
        j["adversary_view"] = view_items;
        Json trace_items = Json::array();
        for (const TraceEvent& e : trace) {
            trace_items.push_back(Json::array({static_cast<int>(e.kind), e.round, e.edge_id,
                                               e.sender, e.receiver, e.message_id,
                                               e.payload_bits, e.detail}));
        }
        j["trace"] = trace_items;
        j["rounds"] = Json{{"commitment", commitment_rounds},
                           {"base", base_rounds},
                           {"network", network_rounds}};
        return j;
    }

    static ExecutionRecord from_json(const Json& j) {
        if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
            throw std::invalid_argument("record: missing schema_version");
        }
        const int version = j.at("schema_version").get<int>();
        if (version != kRecordSchemaVersion) {
            throw std::invalid_argument("record: unsupported schema_version " +
                                        std::to_string(version));
        }
        ExecutionRecord rec;
        rec.schema_version = version;
        rec.scenario_digest = j.at("scenario_digest").get<std::string>();
        rec.scenario_json = j.at("scenario");
        const Scenario scenario = Scenario::from_json(rec.scenario_json);
        const uint64_t p = scenario.p;
        rec.feasible = j.at("feasible").get<bool>();
        for (int x : j.at("prediction").at("correctness")) rec.prediction.correctness_parties.insert(x);
        for (int x : j.at("prediction").at("privacy")) rec.prediction.privacy_parties.insert(x);
        for (uint64_t v : j.at("committed").at("values")) {
            rec.committed.values.emplace_back(v, p);
        }
        for (int x : j.at("committed").at("defaulted")) rec.committed.defaulted.insert(x);
        for (const Json& o : j.at("outputs")) {
            if (o.is_null()) {
                rec.outputs.push_back(std::nullopt);
            } else {
                rec.outputs.emplace_back(FieldElement(o.get<uint64_t>(), p));
            }
        }
        for (const Json& jt : j.at("transcripts")) {
            Transcript t;
            t.party = jt.at("party").get<int>();
            t.input = FieldElement(jt.at("input").get<uint64_t>(), p);
            t.seed = jt.at("seed").get<uint64_t>();
            t.commitment_end = jt.at("commitment_end").get<int>();
            for (const Json& je : jt.at("entries")) {
                TranscriptEntry e;
                e.base_round = je.at(0).get<int>();
                e.peer = je.at(1).get<int>();
                e.incoming = je.at(2).get<int>() != 0;
                e.payload = Bits::from_hex(je.at(3).get<std::string>());
                e.network_round = je.at(4).get<long>();
                t.entries.push_back(std::move(e));
            }
            rec.transcripts.push_back(std::move(t));
        }
        for (const Json& jv : j.at("adversary_view")) {
            ViewItem it;
            it.kind = static_cast<ViewItem::Kind>(jv.at(0).get<int>());
            it.party = jv.at(1).get<int>();
            it.peer = jv.at(2).get<int>();
            it.edge_id = jv.at(3).get<int>();
            it.number = jv.at(4).get<uint64_t>();
            if (!jv.at(5).is_null()) it.payload = Bits::from_hex(jv.at(5).get<std::string>());
            it.round = jv.at(6).get<long>();
            rec.view.items.push_back(std::move(it));
        }
        for (const Json& je : j.at("trace")) {
            TraceEvent e;
            e.kind = static_cast<TraceEvent::Kind>(je.at(0).get<int>());
            e.round = je.at(1).get<long>();
            e.edge_id = je.at(2).get<int>();
            e.sender = je.at(3).get<int>();
            e.receiver = je.at(4).get<int>();
            e.message_id = je.at(5).get<uint64_t>();
            e.payload_bits = je.at(6).get<size_t>();
            e.detail = je.at(7).get<std::string>();
            rec.trace.push_back(std::move(e));
        }
        rec.commitment_rounds = j.at("rounds").at("commitment").get<int>();
        rec.base_rounds = j.at("rounds").at("base").get<int>();
        rec.network_rounds = j.at("rounds").at("network").get<long>();
        return rec;
    }

    // Canonical bytes: key-sorted compact JSON.
    std::string canonical_bytes() const { return to_json().dump(); }
};

inline ExecutionRecord make_record(const Scenario& scenario, const RunResult& run) {
    ExecutionRecord rec;
    rec.scenario_digest = scenario.digest();
    rec.scenario_json = scenario.to_json();
    rec.feasible = run.feasible;
    rec.prediction = run.prediction;
    rec.committed = run.committed;
    rec.outputs = run.outputs;
    rec.transcripts = run.transcripts;
    rec.view = run.view;
    rec.trace = run.trace;
    rec.commitment_rounds = run.commitment_rounds;
    rec.base_rounds = run.base_rounds;
    rec.network_rounds = run.network_rounds;
    return rec;
}

inline void persist_record(const ExecutionRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("persist_record: cannot write '" + path + "'");
    out << rec.canonical_bytes();
    if (!out) throw std::runtime_error("persist_record: write failed for '" + path + "'");
}

inline ExecutionRecord load_record(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_record: cannot read '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("load_record: corrupt file '" + path + "': " + e.what());
    }
    return ExecutionRecord::from_json(j);
}

}  // namespace aempc
