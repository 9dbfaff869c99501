// End-to-end checks of the command-line surface: exit codes, JSON payloads,
// stream shapes, and byte determinism. The binary path arrives through the
// PACONTRACT_BIN environment variable set by CMake.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("PACONTRACT_BIN");
    if (bin == nullptr) {
        ADD_FAILURE() << "PACONTRACT_BIN not set";
        return {};
    }
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        ADD_FAILURE() << "popen failed";
        return {};
    }
    RunResult result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = ::testing::TempDir() + "pacontract_cli_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
    std::vector<nlohmann::json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
    }
    return lines;
}

const char* kDiscreteSpace = R"({"points": ["0","1","2"], "dist": [[0,1,1],[1,0,1],[1,1,0]], "s": 1.0})";
const char* kShiftMapJson = R"({"table": [1, 2, 2]})";

TEST(CliValidate, AcceptsTheDiscreteSpace) {
    const auto space = write_temp("space.json", kDiscreteSpace);
    const auto result = run_cli("validate " + space);
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["s_min"], 1.0);
    EXPECT_TRUE(j["violations"].empty());
}

TEST(CliValidate, FlagsAsymmetryWithExitOne) {
    const auto space = write_temp("asym.json", R"({"dist": [[0,1],[2,0]]})");
    const auto result = run_cli("validate " + space);
    EXPECT_EQ(result.exit_code, 1);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_FALSE(j["valid"].get<bool>());
    EXPECT_FALSE(j["violations"].empty());
    EXPECT_TRUE(j["s_min"].is_null());  // axioms (i)-(ii) fail, no coefficient
}

TEST(CliValidate, MissingFileIsAnInputError) {
    EXPECT_EQ(run_cli("validate /nonexistent/space.json").exit_code, 2);
}

TEST(CliValidate, StructuralDefectsAreInputErrors) {
    const auto negative = write_temp("neg.json", R"({"dist": [[0,-1],[-1,0]]})");
    EXPECT_EQ(run_cli("validate " + negative).exit_code, 2);
    const auto small_s = write_temp("smalls.json", R"({"dist": [[0,1],[1,0]], "s": 0.5})");
    EXPECT_EQ(run_cli("validate " + small_s).exit_code, 2);
    const auto garbage = write_temp("garbage.json", "not json at all");
    EXPECT_EQ(run_cli("validate " + garbage).exit_code, 2);
}

TEST(CliClassify, ReportsTheReferenceClassification) {
    const auto space = write_temp("space.json", kDiscreteSpace);
    const auto map = write_temp("map.json", kShiftMapJson);
    const auto result = run_cli("classify " + space + " " + map);
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_FALSE(j["banach"]["is_member"].get<bool>());
    EXPECT_EQ(j["banach"]["beta_min"], 1.0);
    EXPECT_FALSE(j["kannan"]["is_member"].get<bool>());
    EXPECT_TRUE(j["pa"]["is_member"].get<bool>());
    EXPECT_EQ(j["pa"]["alpha_min"], 0.5);
    EXPECT_EQ(j["pa"]["n_min"], 2);
}

TEST(CliClassify, NegativeVerdictsStillExitZero) {
    const auto space = write_temp("space2.json", R"({"dist": [[0,1],[1,0]]})");
    const auto map = write_temp("ident2.json", R"({"table": [0, 1]})");
    const auto result = run_cli("classify " + space + " " + map);
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_FALSE(j["pa"]["is_member"].get<bool>());
}

TEST(CliClassify, OutOfRangeMapIsAnInputError) {
    const auto space = write_temp("space.json", kDiscreteSpace);
    const auto map = write_temp("bad_map.json", R"({"table": [1, 2, 7]})");
    EXPECT_EQ(run_cli("classify " + space + " " + map).exit_code, 2);
    const auto short_map = write_temp("short_map.json", R"({"table": [1, 2]})");
    EXPECT_EQ(run_cli("classify " + space + " " + short_map).exit_code, 2);
}

TEST(CliClassify, OutputIsByteDeterministic) {
    const auto space = write_temp("space.json", kDiscreteSpace);
    const auto map = write_temp("map.json", kShiftMapJson);
    const auto a = run_cli("classify " + space + " " + map);
    const auto b = run_cli("classify " + space + " " + map);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliCensus, StreamsTwentySevenRecordsForDiscreteThree) {
    const auto result = run_cli("census --n 3 --kind discrete");
    EXPECT_EQ(result.exit_code, 0);
    const auto lines = parse_lines(result.out);
    ASSERT_EQ(lines.size(), 28u);  // 27 per-map records + final report
    for (std::size_t k = 0; k < 27; ++k) {
        EXPECT_TRUE(lines[k].contains("table"));
        EXPECT_TRUE(lines[k].contains("pa"));
    }
    const auto& report = lines.back();
    EXPECT_EQ(report["maps"], 27);
    EXPECT_GE(report["counts"]["pa_not_banach"].get<std::size_t>(), 1u);
    EXPECT_EQ(report["counts"]["banach_not_pa"], 0);
    EXPECT_EQ(report["theorem_violations"], 0);
    EXPECT_EQ(report["generator"]["rng"], "mt19937_64:u53");
}

TEST(CliCensus, SinglePointCensusHasOneRecord) {
    const auto result = run_cli("census --n 1 --kind discrete");
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_EQ(parse_lines(result.out).size(), 2u);
}

TEST(CliCensus, GuardRejectsLargePointCounts) {
    EXPECT_EQ(run_cli("census --n 7 --kind discrete").exit_code, 2);
}

TEST(CliCensus, RandomSpacesAreSeedDeterministic) {
    const auto a = run_cli("census --n 3 --kind random_perturbed --p 2 --seed 9");
    const auto b = run_cli("census --n 3 --kind random_perturbed --p 2 --seed 9");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliSolve, CertifiedHalvingDemo) {
    const auto result = run_cli(
        "solve --map-expr x/2 --metric-power 2 --s 2 --alpha 0.25 --x0 1 --tol 1e-12");
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_EQ(j["status"], "converged");
    EXPECT_TRUE(j["certificate"]["certified"].get<bool>());
    EXPECT_LT(std::abs(j["point"].get<double>()), 1e-6);
    EXPECT_LE(j["iterations"].get<int>(), 25);
    EXPECT_EQ(j["decay"]["c_fit"], 0.25);
}

TEST(CliSolve, IdentityExpressionIsFixedImmediately) {
    const auto result = run_cli("solve --map-expr x");
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_EQ(j["residual_trace"][0], 0.0);
    EXPECT_EQ(j["iterations"], 1);
}

TEST(CliSolve, TranslationHitsIterationCap) {
    const auto result = run_cli("solve --map-expr x+1 --stop-rule residual --max-iter 5");
    EXPECT_EQ(result.exit_code, 1);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_EQ(j["status"], "max_iter_reached");
    EXPECT_EQ(j["residual_trace"].size(), 5u);
}

TEST(CliSolve, InputErrors) {
    EXPECT_EQ(run_cli("solve --map-expr x+").exit_code, 2);
    EXPECT_EQ(run_cli("solve --map-expr x/2 --alpha 0.6 --s 2").exit_code, 2);
    EXPECT_EQ(run_cli("solve --map-expr x/2 --stop-rule never").exit_code, 2);
    EXPECT_EQ(run_cli("solve --map-expr x/2 --metric-power 0.5").exit_code, 2);
}

TEST(CliSelftest, PassesOnAFreshBuild) {
    const auto result = run_cli("selftest");
    EXPECT_EQ(result.exit_code, 0);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["alpha_min"], 0.5);
    for (const auto& check : j["checks"]) {
        EXPECT_TRUE(check["pass"].get<bool>()) << check["name"];
    }
}

TEST(CliSelftest, CorruptedExpectationFails) {
    const auto result = run_cli("selftest --expect-alpha-min 0.6");
    EXPECT_EQ(result.exit_code, 1);
    const auto j = nlohmann::json::parse(result.out);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_EQ(j["alpha_min"], 0.5);  // the computed value is still reported
}

TEST(CliGeneral, UnknownSubcommandIsAnInputError) {
    EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli("").exit_code, 2);
}

}  // namespace
