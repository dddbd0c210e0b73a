#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dlcz/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "dlcz-sim");
    std::ostringstream out, err;
    const int code = dlcz::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

int exit_status(const std::string& command) {
    const int raw = std::system((command + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("dlcz_cli_test_" + name);
}

}  // namespace

TEST(Cli, BinaryExitCodes) {
    const std::string sim = DLCZ_SIM_PATH;
    EXPECT_EQ(exit_status(sim + " params"), 0);
    EXPECT_EQ(exit_status(sim + " --version"), 0);
    EXPECT_EQ(exit_status(sim + " no-such-command"), 2);
    EXPECT_EQ(exit_status(sim + " g2-scan --trials 0"), 2);
    EXPECT_EQ(exit_status(sim + " params --config /nonexistent/file.ini"), 2);
    EXPECT_EQ(exit_status(sim + " phase-match --preset sideways"), 2);
    EXPECT_EQ(exit_status(sim + " spectrum-scan --centers ''"), 2);
    EXPECT_EQ(exit_status(sim + " params --out /nonexistent/dir/out.csv"), 1);
}

TEST(Cli, InvalidConfigNamesField) {
    const auto path = temp_file("bad.ini");
    std::ofstream(path) << "preset = paper-default\n[write]\nwaist = 0 mm\n";
    const Result r = run({"params", "--config", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("Beam.waist"), std::string::npos) << r.err;
    std::filesystem::remove(path);
}

TEST(Cli, G2ScanHeaderAndColumns) {
    const Result r = run({"g2-scan", "--trials", "20000", "--delays", "0:2:1 us", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l[0].rfind("# dlcz-sim 0.1.0 config_hash=", 0), 0u);
    EXPECT_NE(l[0].find("seed=5"), std::string::npos);
    EXPECT_NE(l[0].find("trials=20000 mode=signal"), std::string::npos);
    EXPECT_EQ(l[1], "delay_us,g12,sigma_g12,g11,g22,R,nonclassical,N1,N2,N12,n_trials");
    EXPECT_EQ(l[4].substr(l[4].rfind(',') + 1), "20000");
}

TEST(Cli, G2ScanIsReproducibleAndWorkerIndependent) {
    const std::vector<std::string> base{"g2-scan", "--trials", "50000", "--delays", "0:1:0.5 us"};
    auto one = base, eight = base;
    one.insert(one.end(), {"--workers", "1"});
    eight.insert(eight.end(), {"--workers", "8"});
    const Result a = run(one), b = run(one), c = run(eight);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);

    auto other_seed = one;
    other_seed.insert(other_seed.end(), {"--seed", "2"});
    EXPECT_NE(lines(run(other_seed).out)[2], lines(a.out)[2]);
}

TEST(Cli, ControlModeIsLabelled) {
    const Result r = run({"g2-scan", "--trials", "1000", "--delays", "0:0:1 us", "--control"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("mode=control"), std::string::npos);
}

TEST(Cli, DumpEvents) {
    const auto path = temp_file("events.csv");
    const Result r = run({"g2-scan", "--trials", "5000", "--delays", "0:1:1 us", "--dump-events",
                          path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "trial,channel,timestamp_ns,label");
    std::filesystem::remove(path);
}

TEST(Cli, SpectrumScanRows) {
    const Result r = run({"spectrum-scan", "--centers", "-1:1:0.5 GHz", "--pressures", "1,10 Torr",
                          "--channel", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    // Header, column row, 2 channels x 2 pressures x 5 centers.
    ASSERT_EQ(l.size(), 2u + 20u);
    EXPECT_EQ(l[1],
              "channel,pressure_torr,etalon_center_ghz,expected_counts,signal,crf_e1_g1,crf_e2_g1,"
              "crf_e1_g2,crf_e2_g2");
}

TEST(Cli, PhaseMatchVerdicts) {
    const Result r = run({"phase-match"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l[2].rfind("co_propagating,", 0), 0u);
    EXPECT_NE(l[2].find("PASS"), std::string::npos);
    EXPECT_EQ(l[3].rfind("counter_propagating,", 0), 0u);
    EXPECT_NE(l[3].find("FAIL"), std::string::npos);
}

TEST(Cli, ParamsListsEveryModule) {
    const Result r = run({"params"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* module : {"core-config", "geometry", "decoherence", "emission-model",
                               "spectral-filter", "correlation-stats"}) {
        EXPECT_NE(r.out.find(std::string("# module: ") + module), std::string::npos) << module;
    }
    EXPECT_NE(r.out.find("spatial_mode_count,7929"), std::string::npos);
}

TEST(Cli, OutWritesFile) {
    const auto path = temp_file("params.csv");
    const Result r = run({"params", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    EXPECT_EQ(content.str(), run({"params"}).out);
    std::filesystem::remove(path);
}
