#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "stirling/io.hpp"

using namespace stirling;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(STIRLING_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("stirling_cli_test_" + name);
}

}  // namespace

TEST(CliTriangle, CsvRows) {
    const auto r = run("triangle --n-max 2 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,i,count\n1,1,1\n2,1,1\n2,2,2\n");
}

TEST(CliTriangle, OracleAgrees) { EXPECT_EQ(run("triangle --n-max 3 --oracle").code, 0); }

TEST(CliTriangle, UsageErrors) {
    EXPECT_EQ(run("triangle --n-max 0").code, 2);
    EXPECT_EQ(run("triangle").code, 2);
    EXPECT_EQ(run("triangle --n-max 3 --stat bogus").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(CliTriangle, JsonOutputRoundTrips) {
    const auto path = temp_file("triangle.json");
    ASSERT_EQ(run("triangle --n-max 40 --format json --out " + path.string()).code, 0);
    const std::string text = io::read_file(path.string());
    EXPECT_EQ(io::triangle_json(io::parse_triangle_json(text)), text);
    std::filesystem::remove(path);
}

TEST(CliPoly, BothRoutesAgree) {
    const auto a = run("poly --n 5");
    const auto b = run("poly --n 5 --route triangle");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, "degree,coefficient\n0,0\n1,1\n2,52\n3,328\n4,444\n5,120\n");
}

TEST(CliRoots, OrderTwo) {
    const auto r = run("roots --n 2");
    ASSERT_EQ(r.code, 0);
    const auto cert = io::parse_certificate_json(r.out);
    ASSERT_EQ(cert.isolating_intervals.size(), 2U);
    EXPECT_LT(cert.isolating_intervals[0].lo, make_rational(-1, 2));
    EXPECT_GE(cert.isolating_intervals[0].hi, make_rational(-1, 2));
    EXPECT_EQ(cert.isolating_intervals[1].hi, 0);
    EXPECT_EQ(io::certificate_json(cert), r.out);
}

TEST(CliRoots, OrderOne) {
    const auto cert = io::parse_certificate_json(run("roots --n 1").out);
    EXPECT_EQ(cert.distinct_real_root_count, 1U);
    ASSERT_EQ(cert.isolating_intervals.size(), 1U);
    EXPECT_EQ(cert.isolating_intervals[0].hi, 0);
}

TEST(CliRoots, InterlaceThirty) {
    const auto r = run("roots --n 30 --interlace");
    EXPECT_EQ(r.code, 0);
    const auto doc = io::parse_json(r.out);
    EXPECT_TRUE(doc.at("certificate").at("verified").boolean());
    EXPECT_TRUE(doc.at("interlace").at("verified").boolean());
}

TEST(CliRoots, WidthRefinement) {
    const auto cert = io::parse_certificate_json(run("roots --n 3 --width 1/1000").out);
    for (const auto& iv : cert.isolating_intervals) EXPECT_LE(iv.hi - iv.lo, make_rational(1, 1000));
    EXPECT_EQ(run("roots --n 3 --width abc").code, 2);
}

TEST(CliRoots, RefusesHugeOrders) { EXPECT_EQ(run("roots --n 100000").code, 3); }

TEST(CliMoments, OrderTwo) {
    const auto r = run("moments --n 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("2,5/3,2/9,3,"), std::string::npos);
    const auto j = run("moments --n 2 --format json");
    EXPECT_NE(j.out.find("\"mean\": [5, 3], \"variance\": [2, 9]"), std::string::npos);
}

TEST(CliMoments, RangeRoundTrips) {
    const auto r = run("moments --n-max 25 --ks --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(io::moments_json(io::parse_moments_json(r.out)), r.out);
    const auto c = run("moments --n-max 25 --ks");
    EXPECT_EQ(io::moments_csv(io::parse_moments_csv(c.out)), c.out);
}

TEST(CliMode, OrderFour) {
    const auto r = run("mode --n 4 --format json");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"mu\": [3, 1], \"argmax\": [3]"), std::string::npos);
}

TEST(CliNormality, ExactAndEmpirical) {
    const auto exact = run("normality --n 50 --format json");
    ASSERT_EQ(exact.code, 0);
    const auto rec = io::parse_moments_json(exact.out);
    ASSERT_EQ(rec.size(), 1U);
    ASSERT_TRUE(rec[0].ks_exact.has_value());
    EXPECT_NEAR(*rec[0].ks_exact, 0.086024724688922966, 1e-12);

    EXPECT_EQ(run("normality --n 20 --samples 1000").code, 2);
    const auto a = run("normality --n 20 --samples 5000 --seed 9");
    const auto b = run("normality --n 20 --samples 5000 --seed 9");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run("normality --n 1").code, 2);
}

TEST(CliNormality, PlotFiles) {
    const auto pmf = temp_file("pmf.csv");
    const auto normal = temp_file("normal.csv");
    ASSERT_EQ(run("normality --n 30 --plot-pmf " + pmf.string() + " --plot-normal " + normal.string()).code, 0);
    const std::string p = io::read_file(pmf.string());
    EXPECT_EQ(p.rfind("t,density\n", 0), 0U);
    EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 31);
    EXPECT_EQ(io::read_file(normal.string()).rfind("t,density\n", 0), 0U);
    std::filesystem::remove(pmf);
    std::filesystem::remove(normal);
}

TEST(CliSample, SeedRequiredAndDeterministic) {
    EXPECT_EQ(run("sample --n 4").code, 2);
    const auto a = run("sample --n 12 --count 5 --seed 17");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run("--seed 17 sample --n 12 --count 5").out);
    std::size_t lines = 0;
    std::size_t start = 0;
    while (start < a.out.size()) {
        const auto end = a.out.find('\n', start);
        EXPECT_NO_THROW(StirlingPermutation::parse(12, a.out.substr(start, end - start)));
        ++lines;
        start = end + 1;
    }
    EXPECT_EQ(lines, 5U);
    const auto stats = run("sample --n 3 --count 2 --seed 1 --stats");
    EXPECT_EQ(stats.out.rfind("ascents,descents,plateaux\n", 0), 0U);
}

TEST(CliCache, WrittenAndReused) {
    const auto path = temp_file("cache.txt");
    std::filesystem::remove(path);
    const auto first = run("--cache " + path.string() + " triangle --n-max 30");
    ASSERT_EQ(first.code, 0);
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto second = run("--cache " + path.string() + " triangle --n-max 30");
    EXPECT_EQ(first.out, second.out);
    {
        std::ofstream corrupt(path);
        corrupt << "garbage\n";
    }
    EXPECT_EQ(run("--cache " + path.string() + " triangle --n-max 3").code, 1);
    std::filesystem::remove(path);
}

TEST(CliVerify, QuickSuiteAllPasses) {
    const auto r = run("verify --suite all --quick");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(run("verify --suite nonsense").code, 2);
}
