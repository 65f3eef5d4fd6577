#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

// Exit-status contract of the command-line tool over the scenario corpus:
// 0 on pass, 1 on verdict failure, 2 on usage/validation errors.

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(AEMPC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string scenario(const std::string& name) {
    return std::string(AEMPC_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("run: every valid corpus scenario passes, the infeasible one is a usage error") {
    const char* passing[] = {
        "s01_honest_sum_n4.json",      "s02_eavesdrop_recorder_n4.json",
        "s03_partial_passthrough_n4.json", "s04_partial_bitflip_n4.json",
        "s05_full_dropper_n4.json",    "s06_default_forcer_n7.json",
        "s07_active_liars_n7.json",    "s08_mul_passive_n5.json",
        "s09_privacy_positive_n4.json", "s10_privacy_negative_n4.json",
        "s11_mixed_channels_n7.json",  "s12_silent_controller_n7.json",
    };
    for (const char* name : passing) {
        CAPTURE(name);
        CHECK(run_cli("run --scenario " + scenario(name)) == 0);
    }
    CHECK(run_cli("run --scenario " + scenario("s13_infeasible_n4.json")) == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("run") == 2);                                   // missing --scenario
    CHECK(run_cli("run --scenario /nonexistent.json") == 2);      // unreadable file
    CHECK(run_cli("run --scenario " + scenario("s01_honest_sum_n4.json") + " --bogus") == 2);
}

TEST_CASE("run twice with the same seed produces identical reports") {
    const std::string out1 = "/tmp/aempc_cli_r1.json", out2 = "/tmp/aempc_cli_r2.json";
    REQUIRE(run_cli("run --scenario " + scenario("s06_default_forcer_n7.json") +
                    " --seed 7 --out " + out1) == 0);
    REQUIRE(run_cli("run --scenario " + scenario("s06_default_forcer_n7.json") +
                    " --seed 7 --out " + out2) == 0);
    std::ifstream f1(out1), f2(out2);
    std::string b1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string b2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    REQUIRE_FALSE(b1.empty());
    CHECK(b1 == b2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("analyze reports the eavesdropped party outside the privacy set") {
    const std::string out = "/tmp/aempc_cli_analyze.json";
    REQUIRE(run_cli("analyze --scenario " + scenario("s10_privacy_negative_n4.json") + " --out " +
                    out) == 0);
    std::ifstream in(out);
    nlohmann::json report;
    in >> report;
    CHECK(report.at("feasible").get<bool>());
    CHECK(report.at("guarantees").at("privacy") == nlohmann::json::array({2, 3, 4}));
    CHECK(report.at("guarantees").at("correctness") == nlohmann::json::array({1, 2, 3, 4}));
    CHECK(report.at("scenario_digest").get<std::string>().size() == 64);
    std::remove(out.c_str());
}

TEST_CASE("reveal-check passes on the sacrifice scenario") {
    CHECK(run_cli("reveal-check --scenario " + scenario("s06_default_forcer_n7.json") +
                  " --trials 20") == 0);
}

TEST_CASE("privacy verb: incomparable inputs are a usage error") {
    CHECK(run_cli("privacy --scenario " + scenario("s09_privacy_positive_n4.json") +
                  " --inputs-a 1,2,3,0 --inputs-b 1,2,3,9 --trials 1000") == 2);
}
