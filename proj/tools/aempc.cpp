// Command-line front end: analyze / run / privacy / reveal-check verbs over
// scenario files. Human summary on stdout, machine report to --out.
// Exit codes: 0 verdict passed, 1 verdict failed, 2 usage or validation
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aempc/harness.hpp"
#include "aempc/record.hpp"
#include "aempc/runner.hpp"
#include "aempc/scenario.hpp"

namespace {

using namespace aempc;

std::vector<uint64_t> parse_inputs(const std::string& csv) {
    std::vector<uint64_t> out;
    std::string token;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoull(token));
            token.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    return out;
}

void write_report(const std::string& path, const Json& report) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
    out << report.dump(2) << "\n";
}

Json base_report(const Scenario& scenario) {
    return Json{{"schema_version", kRecordSchemaVersion},
                {"scenario_digest", scenario.digest()},
                {"seed", scenario.seed}};
}

std::string set_to_string(const std::set<int>& s) {
    std::string out = "{";
    bool first = true;
    for (int x : s) {
        if (!first) out += ",";
        out += "P" + std::to_string(x);
        first = false;
    }
    return out + "}";
}

int cmd_analyze(const std::string& scenario_path, const std::string& out_path) {
    Scenario scenario = parse_scenario(scenario_path);
    const NetworkMap net = scenario.network();
    const bool feasible = is_feasible(scenario.corruption, net, scenario.n);
    const GuaranteeAnalysis analysis =
        compute_func_with_witnesses(scenario.corruption, net, scenario.n);

    std::cout << "feasible: " << (feasible ? "yes" : "no") << "\n";
    std::cout << "correctness-guaranteed: " << set_to_string(analysis.sets.correctness_parties)
              << "\n";
    std::cout << "privacy-guaranteed:     " << set_to_string(analysis.sets.privacy_parties) << "\n";

    Json report = base_report(scenario);
    report["feasible"] = feasible;
    report["guarantees"] = Json{{"correctness", analysis.sets.correctness_parties},
                                {"privacy", analysis.sets.privacy_parties}};
    Json cw = Json::object(), pw = Json::object();
    for (const auto& [party, clique] : analysis.correctness_witness) {
        cw[std::to_string(party)] = clique;
    }
    for (const auto& [party, clique] : analysis.privacy_witness) {
        pw[std::to_string(party)] = clique;
    }
    report["witness_cliques"] = Json{{"correctness", cw}, {"privacy", pw}};
    write_report(out_path, report);
    return 0;
}

int cmd_run(const std::string& scenario_path, std::optional<uint64_t> seed,
            const std::string& out_path) {
    Scenario scenario = parse_scenario(scenario_path);
    if (seed) scenario.seed = *seed;
    RunResult run = run_slotted(scenario);
    ExecutionRecord record = make_record(scenario, run);
    CorrectnessReport verdicts = check_correctness(record);

    std::cout << "scenario digest: " << record.scenario_digest << "\n";
    std::cout << "seed: " << scenario.seed << "\n";
    std::cout << "committed defaults: " << set_to_string(run.committed.defaulted) << "\n";
    std::cout << "expected output: " << verdicts.expected_output << "\n";
    std::cout << "verdicts: " << verdicts.summary() << "\n";
    if (!verdicts.pass) {
        std::cout << "first divergence: " << verdicts.first_divergence << "\n";
    }
    std::cout << (verdicts.pass ? "PASS" : "FAIL") << "\n";

    if (!out_path.empty()) {
        Json report = record.to_json();
        Json jv = Json::array();
        for (const PartyVerdict& v : verdicts.verdicts) {
            jv.push_back(Json{{"party", v.party},
                              {"guaranteed", v.guaranteed},
                              {"committed_ok", v.committed_ok},
                              {"output_ok", v.output_ok}});
        }
        report["correctness"] = Json{{"pass", verdicts.pass},
                                     {"expected_output", verdicts.expected_output},
                                     {"verdicts", jv},
                                     {"first_divergence", verdicts.first_divergence}};
        write_report(out_path, report);
    }
    return verdicts.pass ? 0 : 1;
}

int cmd_privacy(const std::string& scenario_path, const std::string& inputs_a_csv,
                const std::string& inputs_b_csv, const std::string& phase_name, int trials,
                double tolerance, std::optional<uint64_t> seed, std::optional<int> distinguished,
                const std::string& out_path) {
    Scenario scenario = parse_scenario(scenario_path);
    const uint64_t base_seed = seed ? *seed : scenario.seed;
    const RunPhase phase = (phase_name == "commit") ? RunPhase::CommitmentOnly : RunPhase::Full;
    PrivacyTestReport report =
        estimate_view_distance(scenario, parse_inputs(inputs_a_csv), parse_inputs(inputs_b_csv),
                               phase, trials, tolerance, base_seed, distinguished);

    std::cout << "trials: " << report.trials << " per arm (accepted " << report.accepted_a << "/"
              << report.accepted_b << ", discard rate " << report.discard_rate << ")\n";
    std::cout << "tv estimate: " << report.tv_estimate << " (tolerance " << report.tolerance
              << ")\n";
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";

    Json j = base_report(scenario);
    j["seed"] = base_seed;
    j["privacy"] = Json{{"inputs_a", report.inputs_a},
                        {"inputs_b", report.inputs_b},
                        {"phase", phase_name},
                        {"trials", report.trials},
                        {"accepted_a", report.accepted_a},
                        {"accepted_b", report.accepted_b},
                        {"discard_rate", report.discard_rate},
                        {"tv_estimate", report.tv_estimate},
                        {"tolerance", report.tolerance},
                        {"pass", report.pass}};
    write_report(out_path, j);
    return report.pass ? 0 : 1;
}

int cmd_reveal_check(const std::string& scenario_path, std::optional<uint64_t> seed, int trials,
                     const std::string& out_path) {
    Scenario scenario = parse_scenario(scenario_path);
    if (seed) scenario.seed = *seed;
    ExecutionRecord record = make_record(scenario, run_slotted(scenario));
    const int failures = reveal_perturbation_failures(record, trials, scenario.seed ^ 0xb1ad);

    std::cout << "perturbations: " << trials << ", reveal changes: " << failures << "\n";
    std::cout << (failures == 0 ? "PASS" : "FAIL") << "\n";

    Json j = base_report(scenario);
    j["reveal_check"] =
        Json{{"perturbations", trials}, {"failures", failures}, {"pass", failures == 0}};
    write_report(out_path, j);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synchronous MPC simulator over tamperable channels"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    std::optional<uint64_t> seed;

    auto* analyze = app.add_subcommand("analyze", "guarantee analysis and feasibility");
    analyze->add_option("--scenario", scenario_path, "scenario file")->required();
    std::string analyze_out;
    analyze->add_option("--out", analyze_out, "report file");

    auto* run = app.add_subcommand("run", "execute the protocol and check correctness");
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed, "seed override");
    run->add_option("--out", out_path, "record + verdict report file");

    auto* privacy = app.add_subcommand("privacy", "view-distribution distance between two inputs");
    const PrivacyConfig defaults;
    std::string inputs_a, inputs_b, phase = "full", privacy_out;
    int trials = defaults.trials;
    double tolerance = defaults.tolerance;
    std::optional<int> distinguished;
    privacy->add_option("--scenario", scenario_path, "scenario template")->required();
    privacy->add_option("--inputs-a", inputs_a, "comma-separated input vector")->required();
    privacy->add_option("--inputs-b", inputs_b, "comma-separated input vector")->required();
    privacy->add_option("--phase", phase, "commit | full")
        ->check(CLI::IsMember({"commit", "full"}));
    privacy->add_option("--trials", trials, "trials per arm");
    privacy->add_option("--tolerance", tolerance, "pass threshold");
    privacy->add_option("--seed", seed, "base seed");
    privacy->add_option("--distinguished", distinguished,
                        "party exempt from the agreement precondition (negative controls)");
    privacy->add_option("--out", privacy_out, "report file");

    auto* reveal_check = app.add_subcommand("reveal-check", "binding under transcript perturbation");
    int perturbations = 100;
    std::string reveal_out;
    reveal_check->add_option("--scenario", scenario_path, "scenario file")->required();
    reveal_check->add_option("--seed", seed, "seed override");
    reveal_check->add_option("--trials", perturbations, "number of perturbations");
    reveal_check->add_option("--out", reveal_out, "report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(scenario_path, analyze_out);
        if (app.got_subcommand(run)) return cmd_run(scenario_path, seed, out_path);
        if (app.got_subcommand(privacy)) {
            return cmd_privacy(scenario_path, inputs_a, inputs_b, phase, trials, tolerance, seed,
                               distinguished, privacy_out);
        }
        if (app.got_subcommand(reveal_check)) {
            return cmd_reveal_check(scenario_path, seed, perturbations, reveal_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
