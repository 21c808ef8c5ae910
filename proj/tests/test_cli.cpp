#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "twoip/twoip.hpp"
#include "support.hpp"

using nlohmann::json;
using testsupport::read_file;
using testsupport::run_command;

namespace {

const std::string kCli = TWOIP_CLI_PATH;

json load_json(const std::string& path) { return json::parse(read_file(path)); }

const json* find_row(const json& doc, const std::string& id) {
    for (const auto& row : doc["properties"])
        if (row["id"] == id) return &row;
    return nullptr;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST(CliVerify, PassesAndIsDeterministic) {
    std::string out;
    const std::string base =
        kCli + " verify --seed 7 --trials 200 --dims 2,3 --field both";
    EXPECT_EQ(run_command(base + " --output cli_v1.json", &out), 0) << out;
    EXPECT_EQ(run_command(base + " --output cli_v2.json", &out), 0) << out;

    const std::string first = read_file("cli_v1.json");
    const std::string second = read_file("cli_v2.json");
    ASSERT_FALSE(first.empty());
    EXPECT_EQ(first, second);  // byte-identical reports

    const json doc = json::parse(first);
    EXPECT_EQ(doc["verdict"], "pass");
    EXPECT_EQ(doc["config"]["seed"], 7);
    EXPECT_GT(doc["properties"].size(), 40u);
}

TEST(CliVerify, DifferentSeedChangesReport) {
    std::string out;
    const std::string base = kCli + " verify --trials 100 --dims 2 --field real";
    EXPECT_EQ(run_command(base + " --seed 1 --output cli_s1.json", &out), 0) << out;
    EXPECT_EQ(run_command(base + " --seed 2 --output cli_s2.json", &out), 0) << out;
    EXPECT_NE(read_file("cli_s1.json"), read_file("cli_s2.json"));
}

TEST(CliVerify, InjectedDefectFailsAndNamesTheAxiom) {
    std::string out;
    const int rc = run_command(kCli + " verify --seed 7 --trials 100 --dims 3"
                                      " --field real --inject-defect 0.01"
                                      " --output cli_defect.json",
                               &out);
    EXPECT_EQ(rc, 1);
    EXPECT_NE(out.find("FAIL"), std::string::npos);
    EXPECT_NE(out.find("2I5_first_slot_additivity"), std::string::npos) << out;
    const json doc = load_json("cli_defect.json");
    EXPECT_EQ(doc["verdict"], "fail");
    const json* row = find_row(doc, "2I5_first_slot_additivity[real]");
    ASSERT_NE(row, nullptr);
    EXPECT_FALSE((*row)["pass"].get<bool>());
}

TEST(CliVerify, RejectsZeroTrials) {
    std::string out;
    EXPECT_NE(run_command(kCli + " verify --trials 0", &out), 0);
    EXPECT_NE(out.find("trials"), std::string::npos);
}

TEST(CliVerify, RejectsDimensionOne) {
    std::string out;
    EXPECT_NE(run_command(kCli + " verify --trials 10 --dims 1,3", &out), 0);
}

TEST(CliBounds, WorkedPositiveInstance) {
    write_text("cli_inst.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0.5, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "m": 0.5,
        "M": 1.5
    })");
    std::string out;
    EXPECT_EQ(run_command(kCli + " bounds --input cli_inst.json --output cli_b.json", &out), 0)
        << out;
    const json doc = load_json("cli_b.json");
    EXPECT_EQ(doc["verdict"], "pass");

    const auto slack_of = [&](const std::string& id) {
        const json* row = find_row(doc, id);
        EXPECT_NE(row, nullptr) << id;
        return row ? (*row)["slack"].get<double>() : -1.0;
    };
    EXPECT_NEAR(slack_of("2.15"), 1.0 / std::sqrt(0.75) - std::sqrt(1.25), 1e-9);
    EXPECT_NEAR(slack_of("2.17"), 1.0 / std::sqrt(0.75) - std::sqrt(1.25), 1e-9);
    EXPECT_NEAR(slack_of("2.18"), 1.0 / 3.0 - 0.25, 1e-9);
    const double rhs219 = (std::sqrt(1.5) - std::sqrt(0.5)) / std::pow(0.75, 0.25);
    const double lhs219 = std::sqrt(1.25) + 1.0 - std::sqrt(4.25);
    EXPECT_NEAR(slack_of("2.19"), rhs219 - lhs219, 1e-9);
    // Loose agreement with the 6-decimal claims in the operation contract.
    EXPECT_NEAR(slack_of("2.15"), 0.036667, 1e-5);
    EXPECT_NEAR(slack_of("2.19"), 0.499760, 1e-5);
}

TEST(CliBounds, ExtremalInstanceFlaggedTight) {
    write_text("cli_tight.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 1, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "a": 0,
        "A": 2
    })");
    std::string out;
    EXPECT_EQ(
        run_command(kCli + " bounds --input cli_tight.json --output cli_t.json", &out), 0)
        << out;
    const json doc = load_json("cli_t.json");
    const json* row = find_row(doc, "2.3");
    ASSERT_NE(row, nullptr);
    EXPECT_NEAR((*row)["slack"].get<double>(), 0.0, 1e-12);
    EXPECT_TRUE(row->contains("tight") && (*row)["tight"].get<bool>());
    EXPECT_NE(out.find("tight"), std::string::npos);
}

TEST(CliBounds, FailedHypothesisIsStillTabulated) {
    write_text("cli_nohyp.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [3, 0, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "a": 0,
        "A": 1
    })");
    std::string out;
    EXPECT_EQ(
        run_command(kCli + " bounds --input cli_nohyp.json --output cli_n.json", &out), 0)
        << out;
    const json doc = load_json("cli_n.json");
    const json* cond = find_row(doc, "2.1(a,A)");
    ASSERT_NE(cond, nullptr);
    EXPECT_FALSE((*cond)["hypothesis_ok"].get<bool>());
    EXPECT_NEAR((*cond)["rhs"].get<double>(), -6.0, 1e-12);
    const json* bound = find_row(doc, "2.3");
    ASSERT_NE(bound, nullptr);
    EXPECT_FALSE((*bound)["hypothesis_ok"].get<bool>());
    EXPECT_TRUE((*bound)["rhs"].is_number());  // values still reported
    EXPECT_EQ(doc["verdict"], "pass");         // flagged rows do not fail the run
}

TEST(CliBounds, ComplexInstanceRoundTrips) {
    write_text("cli_cplx.json", R"({
        "field": "complex",
        "weights": [1, 1, 1],
        "x": [[1, 0], [0, 1], 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "a": [1, -1],
        "A": [1, 1]
    })");
    std::string out;
    EXPECT_EQ(
        run_command(kCli + " bounds --input cli_cplx.json --output cli_c.json", &out), 0)
        << out;
    const json doc = load_json("cli_c.json");
    const json* row = find_row(doc, "2.3");
    ASSERT_NE(row, nullptr);
    EXPECT_NEAR((*row)["lhs"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR((*row)["rhs"].get<double>(), 1.0, 1e-12);
}

TEST(CliBounds, BothPairsProduceAllRows) {
    write_text("cli_both.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0.5, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "a": 0.25, "A": 2.0,
        "m": 0.5, "M": 1.5
    })");
    std::string out;
    EXPECT_EQ(
        run_command(kCli + " bounds --input cli_both.json --output cli_bp.json", &out), 0)
        << out;
    const json doc = load_json("cli_bp.json");
    EXPECT_NE(find_row(doc, "2.1(a,A)"), nullptr);
    EXPECT_NE(find_row(doc, "2.1(m,M)"), nullptr);
    for (const char* id : {"2.3", "2.9", "2.16", "2.15", "2.17", "2.18", "2.19"})
        EXPECT_NE(find_row(doc, id), nullptr) << id;
}

TEST(CliBounds, ParseErrorsNameTheField) {
    write_text("cli_bad.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0, 0],
        "z": [0, 0, 1],
        "m": 0.5,
        "M": 1.5
    })");
    std::string out;
    EXPECT_EQ(run_command(kCli + " bounds --input cli_bad.json", &out), 2);
    EXPECT_NE(out.find("'y'"), std::string::npos) << out;

    write_text("cli_bad2.json", R"({"field": "real"})");
    EXPECT_EQ(run_command(kCli + " bounds --input cli_bad2.json", &out), 2);

    write_text("cli_bad3.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0, [0.5, 0.5]],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "m": 0.5, "M": 1.5
    })");
    EXPECT_EQ(run_command(kCli + " bounds --input cli_bad3.json", &out), 2);
    EXPECT_NE(out.find("imaginary"), std::string::npos) << out;

    // x shorter than weights
    write_text("cli_bad4.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "m": 0.5, "M": 1.5
    })");
    EXPECT_EQ(run_command(kCli + " bounds --input cli_bad4.json", &out), 2);
    EXPECT_NE(out.find("'x'"), std::string::npos) << out;

    // 'a' without 'A'
    write_text("cli_bad5.json", R"({
        "field": "real",
        "weights": [1, 1, 1],
        "x": [1, 0, 0],
        "y": [1, 0, 0],
        "z": [0, 0, 1],
        "a": 0.5
    })");
    EXPECT_EQ(run_command(kCli + " bounds --input cli_bad5.json", &out), 2);
    EXPECT_NE(out.find("together"), std::string::npos) << out;
}

TEST(CliIntegral, WorkedInstance) {
    const twoip::QuadratureGrid grid = twoip::simpson_grid(1.0, 2.0, 2001);
    std::vector<double> f(grid.size()), g(grid.size()), h(grid.size(), 1.0),
        phi(grid.size(), 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes()[i];
        f[i] = x * x;
        g[i] = x;
    }
    testsupport::write_csv("cli_worked.csv", grid, phi, f, g, h);

    std::string out;
    EXPECT_EQ(run_command(kCli + " integral --input cli_worked.csv --m 2 --M 4"
                                 " --output cli_i.json",
                          &out),
              0)
        << out;
    const json doc = load_json("cli_i.json");
    EXPECT_EQ(doc["verdict"], "pass");
    EXPECT_NEAR(doc["moments"]["two_inner_det"].get<double>(), 0.25, 1e-7);

    const json* p36 = find_row(doc, "3.6");
    ASSERT_NE(p36, nullptr);
    EXPECT_NEAR((*p36)["lhs"].get<double>(), 4.6296e-4, 1e-6);

    // The printed 3.7 constant fails on this instance while the consistent
    // one holds; the report must show both.
    const json* p37 = find_row(doc, "3.7");
    const json* p37_printed = find_row(doc, "3.7-printed");
    ASSERT_NE(p37, nullptr);
    ASSERT_NE(p37_printed, nullptr);
    EXPECT_GT((*p37)["slack"].get<double>(), 0.0);
    EXPECT_LT((*p37_printed)["slack"].get<double>(), 0.0);
    EXPECT_TRUE((*p37_printed)["advisory"].get<bool>());
    EXPECT_NEAR((*p37)["lhs"].get<double>(), 0.250925, 1e-5);
    EXPECT_NEAR((*p37)["rhs"].get<double>(), 0.265165, 1e-5);
    EXPECT_NEAR((*p37_printed)["rhs"].get<double>(), 0.088388, 1e-5);
}

TEST(CliIntegral, WhichFilterSelectsOneBound) {
    std::string out;
    EXPECT_EQ(run_command(kCli + " integral --input cli_worked.csv --m 2 --M 4"
                                 " --which 3.8 --output cli_i8.json",
                          &out),
              0)
        << out;
    const json doc = load_json("cli_i8.json");
    EXPECT_NE(find_row(doc, "3.8"), nullptr);
    EXPECT_EQ(find_row(doc, "3.6"), nullptr);
}

TEST(CliIntegral, FailedPremiseIsFlaggedNotFatal) {
    const twoip::QuadratureGrid grid = twoip::simpson_grid(0.0, 1.0, 201);
    std::vector<double> f(grid.size()), g(grid.size()), h(grid.size(), 1.0),
        phi(grid.size(), 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes()[i];
        f[i] = x * x;
        g[i] = x;
    }
    testsupport::write_csv("cli_nopremise.csv", grid, phi, f, g, h);
    std::string out;
    EXPECT_EQ(run_command(kCli + " integral --input cli_nopremise.csv --m 0.5 --M 4"
                                 " --output cli_np.json",
                          &out),
              0)
        << out;
    const json doc = load_json("cli_np.json");
    EXPECT_EQ(doc["verdict"], "pass");  // flagged, not failed
    const json* sync = find_row(doc, "premise_synchronous(3.5)");
    ASSERT_NE(sync, nullptr);
    EXPECT_FALSE((*sync)["hypothesis_ok"].get<bool>());
    const json* p36 = find_row(doc, "3.6");
    ASSERT_NE(p36, nullptr);
    EXPECT_FALSE((*p36)["hypothesis_ok"].get<bool>());
    EXPECT_TRUE((*p36)["lhs"].is_number());  // values still tabulated
}

TEST(CliIntegral, VanishingDenominatorIsRejected) {
    write_text("cli_h0.csv",
               "node,weight,phi,f,g,h\n"
               "0,0.5,1,0,0,0\n"
               "1,0.5,1,1,1,1\n");
    std::string out;
    EXPECT_EQ(run_command(kCli + " integral --input cli_h0.csv --m 1 --M 2", &out), 2);
    EXPECT_NE(out.find("vanishes"), std::string::npos) << out;
}

TEST(CliIntegral, MalformedCsvIsRejected) {
    write_text("cli_empty.csv", "");
    std::string out;
    EXPECT_EQ(run_command(kCli + " integral --input cli_empty.csv --m 1 --M 2", &out), 2);
    EXPECT_NE(out.find("empty"), std::string::npos) << out;

    write_text("cli_ragged.csv",
               "node,weight,phi,f,g,h\n"
               "0,0.5,1,0,0\n");
    EXPECT_EQ(run_command(kCli + " integral --input cli_ragged.csv --m 1 --M 2", &out), 2);
    EXPECT_NE(out.find("line 2"), std::string::npos) << out;

    write_text("cli_header.csv", "node,weight,phi\n0,1,1\n");
    EXPECT_EQ(run_command(kCli + " integral --input cli_header.csv --m 1 --M 2", &out), 2);
    EXPECT_NE(out.find("header"), std::string::npos) << out;

    write_text("cli_wide.csv",
               "node,weight,phi,f,g,h\n"
               "0,0.5,1,0,0,1,9\n");
    EXPECT_EQ(run_command(kCli + " integral --input cli_wide.csv --m 1 --M 2", &out), 2);

    write_text("cli_text.csv",
               "node,weight,phi,f,g,h\n"
               "0,0.5,oops,0,0,1\n");
    EXPECT_EQ(run_command(kCli + " integral --input cli_text.csv --m 1 --M 2", &out), 2);
    EXPECT_NE(out.find("phi"), std::string::npos) << out;
}

TEST(CliRobustness, GarbageInputsProduceParseErrors) {
    twoip::SeededGenerator gen(2026);
    for (int trial = 0; trial < 30; ++trial) {
        std::string garbage;
        const std::size_t len = 1 + static_cast<std::size_t>(gen.next_in(0.0, 200.0));
        for (std::size_t i = 0; i < len; ++i) {
            if (trial % 2 == 0) {
                garbage += static_cast<char>(32 + static_cast<int>(gen.next_in(0.0, 95.0)));
            } else {
                garbage += static_cast<char>(1 + static_cast<int>(gen.next_in(0.0, 255.0)));
            }
        }
        write_text("cli_garbage.bin", garbage);
        std::string out;
        EXPECT_EQ(run_command(kCli + " bounds --input cli_garbage.bin", &out), 2)
            << "trial " << trial << ": " << out;
        EXPECT_EQ(run_command(kCli + " integral --input cli_garbage.bin --m 1 --M 2", &out),
                  2)
            << "trial " << trial << ": " << out;
    }
}

TEST(CliSharpness, ProbesBothTargets) {
    std::string out;
    EXPECT_EQ(run_command(kCli + " sharpness --constant 0.2499 --which thm2.1"
                                 " --field both --output cli_sh1.json",
                          &out),
              0)
        << out;
    const json doc1 = load_json("cli_sh1.json");
    for (const auto& entry : doc1["witnesses"]) {
        EXPECT_TRUE(entry["found"].get<bool>());
        EXPECT_GT(entry["witness"]["violation"].get<double>(), 0.0);
    }

    EXPECT_EQ(run_command(kCli + " sharpness --constant 0.25 --which thm2.1"
                                 " --field both --output cli_sh2.json",
                          &out),
              0)
        << out;
    for (const auto& entry : load_json("cli_sh2.json")["witnesses"]) {
        EXPECT_FALSE(entry["found"].get<bool>());
        EXPECT_TRUE(entry["witness"].is_null());
    }

    EXPECT_EQ(run_command(kCli + " sharpness --constant 0.499 --which thm2.2"
                                 " --field real --output cli_sh3.json",
                          &out),
              0)
        << out;
    EXPECT_TRUE(load_json("cli_sh3.json")["witnesses"][0]["found"].get<bool>());

    EXPECT_NE(run_command(kCli + " sharpness --constant 0.25 --which thm9.9", &out), 0);
}

TEST(CliGeneral, UnknownSubcommandFails) {
    std::string out;
    EXPECT_NE(run_command(kCli + " frobnicate", &out), 0);
    EXPECT_NE(run_command(kCli, &out), 0);  // a subcommand is required
}

TEST(CliGeneral, UnwritableOutputFails) {
    std::string out;
    EXPECT_EQ(run_command(kCli + " verify --trials 5 --dims 2 --field real"
                                 " --output /nonexistent-dir/report.json",
                          &out),
              3);
}
