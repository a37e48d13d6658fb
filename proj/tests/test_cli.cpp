#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hardy/report.hpp"

#ifndef HARDY_CLI_PATH
#error "HARDY_CLI_PATH must point at the built CLI"
#endif

namespace {

struct CliRun {
    int status;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(HARDY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int st = pclose(pipe);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, ApplyConstant) {
    const CliRun r = run("apply --op hardy1d --fn 'power a=0 n=1' --x 7");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(hardy::json::parse(r.out)["value"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, WeakNormOfHardyIndicator) {
    const CliRun r = run("norm --space 'weakLp p=1 n=1' --fn 'hardy_of indicator r=1'");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(hardy::json::parse(r.out)["value"].get<double>(), 2.0, 1e-8);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("certify --claim UPhiCampanato --param alpha=2").status, 2);
    EXPECT_EQ(run("certify --claim NoSuchClaim").status, 2);
    EXPECT_EQ(run("certify --claim HardyLp --param p").status, 2);
    EXPECT_EQ(run("certify --all --claim HardyLp").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("apply --op hardynd --fn 'power a=0 n=2' --x 1").status, 2);
    EXPECT_EQ(run("sweep --claim HardyLp --param-grid p=1:2").status, 2);
}

TEST(Cli, CertifyWeakTypePasses) {
    const std::string path = ::testing::TempDir() + "weak.json";
    const CliRun r = run("certify --claim WeakType --param p=1 --param n=1 --seed 7 --out " + path);
    EXPECT_EQ(r.status, 0);
    const auto j = hardy::json::parse(slurp(path));
    ASSERT_EQ(j["certificates"].size(), 1u);
    EXPECT_EQ(j["certificates"][0]["verdict"], "PASS");
    EXPECT_EQ(j["config"]["seed"], 7);
}

TEST(Cli, DeterministicApartFromTiming) {
    const std::string a = ::testing::TempDir() + "det_a.json", b = ::testing::TempDir() + "det_b.json";
    const std::string args = "certify --claim WeakType --param n=1 --param p=2 --seed 3 --out ";
    ASSERT_EQ(run(args + a).status, 0);
    ASSERT_EQ(run(args + b).status, 0);
    auto ja = hardy::json::parse(slurp(a)), jb = hardy::json::parse(slurp(b));
    ja.erase("timing");
    jb.erase("timing");
    ja["config"].erase("output_path");
    jb["config"].erase("output_path");
    EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Cli, SeedFromEnvironment) {
    const CliRun r = run("certify --claim HardyLp --print-config");
    const CliRun e = run("certify --claim HardyLp --print-config --seed 99");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(hardy::json::parse(e.out)["seed"], 99);
    const std::string cmd = std::string("HARDY_SEED=17 ") + HARDY_CLI_PATH + " certify --claim HardyLp --print-config";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    pclose(pipe);
    EXPECT_EQ(hardy::json::parse(out)["seed"], 17);
}

TEST(Cli, SweepClaimedColumnIsTwoOverTwoPlusAlpha) {
    const CliRun r = run("sweep --claim UPhiCampanato --weight polar:2 --param n=2 --param-grid alpha=-0.4:0.9:14 --claimed-only");
    ASSERT_EQ(r.status, 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "param,claimed,lower,upper_worst,verdict");
    int rows = 0;
    double prev = 1e300;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string a, c;
        std::getline(ls, a, ',');
        std::getline(ls, c, ',');
        const double alpha = std::stod(a), claimed = std::stod(c);
        EXPECT_NEAR(claimed, 2.0 / (2.0 + alpha), 1e-14);
        EXPECT_LT(claimed, prev);
        prev = claimed;
        ++rows;
    }
    EXPECT_EQ(rows, 14);
}

TEST(Cli, ConfigFileUnknownKeyIsUsageError) {
    const std::string path = ::testing::TempDir() + "bad_config.json";
    std::ofstream(path) << R"({"seed": 1, "colour": "blue"})";
    EXPECT_EQ(run("certify --claim HardyLp --config " + path).status, 2);
}
