#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rotor/cli.hpp"
#include "rotor/lattice_io.hpp"
#include "rotor/render.hpp"
#include "test_support.hpp"

namespace rotor::cli {
namespace {

namespace fs = std::filesystem;
using lattice::DiamondGraph;
using lattice::LatticePoint;

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("rotor_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path dir_;
};

std::set<LatticePoint> painted_sites(const testing::Image& image) {
    const int n = (image.width - 1) / 2;
    std::set<LatticePoint> sites;
    for (int row = 0; row < image.height; ++row) {
        for (int col = 0; col < image.width; ++col) {
            const auto px = image.at(row, col);
            if (px != std::array<unsigned char, 3>{255, 255, 255}) {
                sites.insert({col - n, n - row});
            }
        }
    }
    return sites;
}

TEST(CliVerifyDiamond, SmallRunPasses) {
    const Outcome r = invoke({"verify-diamond", "--n-max", "1"});
    EXPECT_EQ(r.code, kExitSuccess) << r.err;
    std::istringstream csv(r.out);
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n,chips,is_diamond,odometer_match,wall_ms");
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("0,1,1,1,", 0), 0u) << line;
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("1,5,1,1,", 0), 0u) << line;
}

TEST(CliVerifyDiamond, JsonRowsForEveryCheckpoint) {
    const Outcome r = invoke({"verify-diamond", "--n-max", "12", "--variant", "modified", "--format", "json"});
    ASSERT_EQ(r.code, kExitSuccess) << r.err;
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 13u);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        EXPECT_EQ(rows[n]["n"], n);
        EXPECT_EQ(rows[n]["chips"], lattice::diamond_size(static_cast<std::int64_t>(n)));
        EXPECT_TRUE(rows[n]["is_diamond"].get<bool>());
        EXPECT_TRUE(rows[n]["odometer_match"].get<bool>());
    }
}

TEST(CliVerifyDiamond, UsageErrors) {
    EXPECT_EQ(invoke({"verify-diamond", "--n-max", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify-diamond"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify-diamond", "--n-max", "3", "--variant", "other"}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
}

TEST_F(CliFiles, VerifyDiamondWritesReportFile) {
    const fs::path report = dir_ / "report.csv";
    const Outcome r = invoke({"verify-diamond", "--n-max", "4", "--out", report.string()});
    EXPECT_EQ(r.code, kExitSuccess);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(report).rfind("n,chips,", 0), 0u);
    EXPECT_FALSE(fs::exists(dir_ / "report.csv.tmp"));
}

TEST(CliCheckOdometer, Passes) {
    const Outcome r = invoke({"check-odometer", "--n-max", "1"});
    EXPECT_EQ(r.code, kExitSuccess) << r.err;
    EXPECT_NE(r.out.find("1,1,1,1,1,1"), std::string::npos);
    EXPECT_EQ(invoke({"check-odometer", "--n-max", "0"}).code, kExitUsage);

    const OdometerCheckReport report = check_odometer(20);
    EXPECT_TRUE(report.passed());
    ASSERT_EQ(report.rows.size(), 20u);
    for (const auto& row : report.rows) {
        EXPECT_TRUE(row.passed()) << "n=" << row.n;
    }
}

TEST(CliCheckOdometer, MutatedCorrectionSetFails) {
    // Move (1,1) out of C and (0,1) into it at n = 5 only.
    const std::set<LatticePoint> flipped{{1, 1}, {0, 1}};
    const aggregation::OdometerFormula mutated = [](const DiamondGraph& d) {
        FiringVector u = lattice::odometer_formula(d);
        if (d.radius() == 5) {
            u.count[d.vertex({1, 1})] += 1;
            u.count[d.vertex({0, 1})] -= 1;
        }
        return u;
    };
    ASSERT_TRUE(lattice::in_C({1, 1}, 5));
    ASSERT_FALSE(lattice::in_C({0, 1}, 5));

    const OdometerCheckReport report = check_odometer(8, mutated);
    ASSERT_FALSE(report.passed());
    EXPECT_EQ(report.failure->n, 5);
    EXPECT_TRUE(flipped.contains(report.failure->where))
        << report.failure->where.x << "," << report.failure->where.y;
    EXPECT_EQ(report.rows.size(), 5u);
    EXPECT_FALSE(report.rows.back().passed());
}

TEST_F(CliFiles, RenderRadiusOne) {
    const fs::path image = dir_ / "d1.ppm";
    ASSERT_EQ(invoke({"render", "--n", "1", "--out", image.string()}).code, kExitSuccess);
    const testing::Image ppm = testing::read_ppm(slurp(image));
    EXPECT_EQ(ppm.width, 3);
    EXPECT_EQ(ppm.height, 3);
    const std::set<LatticePoint> expected{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    EXPECT_EQ(painted_sites(ppm), expected);
    // The origin fires four times and its rotor returns to north.
    EXPECT_EQ(ppm.at(1, 1), (std::array<unsigned char, 3>{255, 0, 0}));
}

TEST_F(CliFiles, RenderRadiusFiftyIsDeterministicDiamond) {
    const fs::path a = dir_ / "a.ppm";
    const fs::path b = dir_ / "b.ppm";
    ASSERT_EQ(invoke({"render", "--n", "50", "--out", a.string()}).code, kExitSuccess);
    ASSERT_EQ(invoke({"render", "--n", "50", "--out", b.string()}).code, kExitSuccess);
    const std::string bytes = slurp(a);
    EXPECT_EQ(bytes, slurp(b));

    const testing::Image ppm = testing::read_ppm(bytes);
    ASSERT_EQ(ppm.width, 101);
    const auto sites = painted_sites(ppm);
    EXPECT_EQ(sites.size(), 5101u);
    for (const LatticePoint& p : sites) {
        ASSERT_LE(lattice::norm(p), 50);
    }
}

TEST_F(CliFiles, RenderToUnwritablePathFails) {
    const fs::path bad = dir_ / "missing" / "out.ppm";
    const Outcome r = invoke({"render", "--n", "2", "--out", bad.string()});
    EXPECT_EQ(r.code, kExitCheckFailed);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(invoke({"render", "--n", "2"}).code, kExitUsage);
}

TEST(CliSapTest, SeededRunsPassAndRepeat) {
    const Outcome tiny = invoke({"sap-test", "--trials", "1", "--max-vertices", "1"});
    EXPECT_EQ(tiny.code, kExitSuccess) << tiny.err;

    const std::vector<std::string> args{"sap-test", "--trials", "40", "--max-vertices", "4", "--bound", "4",
                                        "--seed", "7"};
    const Outcome first = invoke(args);
    const Outcome second = invoke(args);
    EXPECT_EQ(first.code, kExitSuccess) << first.out;
    EXPECT_EQ(first.out, second.out);
    EXPECT_NE(first.out.find("result=pass"), std::string::npos);

    EXPECT_EQ(invoke({"sap-test", "--max-vertices", "9"}).code, kExitUsage);
    EXPECT_EQ(invoke({"sap-test", "--bound", "-1"}).code, kExitUsage);
}

TEST(CliSapTest, ReportCountsTrials) {
    const SapTestReport report = sap_test(25, 5, 4, 3);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.trials, 25u);
    EXPECT_GT(report.evaluated, 25u);
}

TEST(CliDump, OdometerOfSmallDiamonds) {
    const Outcome one = invoke({"dump", "--n", "1", "--what", "odometer"});
    ASSERT_EQ(one.code, kExitSuccess);
    const auto records = lattice::records_from_json(nlohmann::json::parse(one.out));
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].x, 0);
    EXPECT_EQ(records[0].y, 0);
    EXPECT_EQ(records[0].value, 4);

    const Outcome two = invoke({"dump", "--n", "2", "--what", "odometer", "--format", "csv"});
    ASSERT_EQ(two.code, kExitSuccess);
    std::map<LatticePoint, std::int64_t> values;
    for (const auto& r : lattice::records_from_csv(two.out)) {
        values[{r.x, r.y}] = r.value;
    }
    const std::map<LatticePoint, std::int64_t> expected{
        {{0, 0}, 12}, {{1, 0}, 2}, {{-1, 0}, 2}, {{0, 1}, 2}, {{0, -1}, 2}};
    EXPECT_EQ(values, expected);
}

TEST(CliDump, EverySelectorRoundTrips) {
    const DiamondGraph d(6);
    for (const std::string format : {"json", "csv"}) {
        const Outcome g = invoke({"dump", "--n", "6", "--what", "graph", "--format", format});
        ASSERT_EQ(g.code, kExitSuccess);
        const DirectedMultigraph graph = format == "json"
                                             ? lattice::graph_from_diamond_json(nlohmann::json::parse(g.out))
                                             : lattice::graph_from_diamond_csv(g.out);
        EXPECT_EQ(graph, d.graph());

        const Outcome o = invoke({"dump", "--n", "6", "--what", "odometer", "--format", format});
        const auto odo = format == "json" ? lattice::records_from_json(nlohmann::json::parse(o.out))
                                          : lattice::records_from_csv(o.out);
        EXPECT_EQ(lattice::firing_from_records(d, odo), lattice::odometer_formula(d));

        const Outcome r = invoke({"dump", "--n", "6", "--what", "rotors", "--format", format});
        const auto rot = format == "json" ? lattice::records_from_json(nlohmann::json::parse(r.out))
                                          : lattice::records_from_csv(r.out);
        EXPECT_EQ(lattice::rotors_from_records(d, rot), lattice::predicted_final_rotors(d));
    }
}

TEST(CliDump, UsageErrors) {
    EXPECT_EQ(invoke({"dump", "--n", "3", "--what", "chips"}).code, kExitUsage);
    EXPECT_EQ(invoke({"dump", "--n", "0", "--what", "graph"}).code, kExitUsage);
    EXPECT_EQ(invoke({"dump", "--n", "3"}).code, kExitUsage);
}

TEST(CliSimulate, SummaryFormats) {
    const Outcome json = invoke({"simulate", "--chips", "61", "--variant", "modified"});
    ASSERT_EQ(json.code, kExitSuccess);
    const auto summary = nlohmann::json::parse(json.out);
    EXPECT_EQ(summary["occupied"], 61);
    EXPECT_EQ(summary["radius"], 5);
    EXPECT_TRUE(summary["is_diamond"].get<bool>());
    EXPECT_EQ(summary["variant"], "modified");

    const Outcome csv = invoke({"simulate", "--chips", "7", "--format", "csv"});
    ASSERT_EQ(csv.code, kExitSuccess);
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "chips,variant,occupied,radius,is_diamond");
    EXPECT_NE(csv.out.find("7,standard,7,"), std::string::npos);
    EXPECT_EQ(csv.out.back(), '\n');

    EXPECT_EQ(invoke({"simulate", "--chips", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"simulate", "--chips", "5", "--format", "ppm"}).code, kExitUsage);
}

TEST_F(CliFiles, SimulateWritesImage) {
    const fs::path image = dir_ / "sim.ppm";
    ASSERT_EQ(invoke({"simulate", "--chips", "25", "--format", "ppm", "--out", image.string()}).code,
              kExitSuccess);
    EXPECT_EQ(painted_sites(testing::read_ppm(slurp(image))).size(), 25u);
}

TEST(Cli, HelpExitsCleanly) {
    const Outcome r = invoke({"--help"});
    EXPECT_EQ(r.code, kExitSuccess);
    EXPECT_NE(r.out.find("verify-diamond"), std::string::npos);
}

}  // namespace
}  // namespace rotor::cli
