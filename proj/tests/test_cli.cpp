#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " \"" EQUISURF_CLI "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (auto n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, ClassifyOk) {
    auto r = run("classify \"S21 + 1 R3 # M(1)\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("Sph(1,1)\n", 0), 0u);
    EXPECT_NE(r.out.find("fixed points 4"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("classify \"S21 # N(0)\"").code, 3);
    EXPECT_EQ(run("classify \"S21 + 1 R4\"").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("verify --suite nope").code, 2);
    EXPECT_EQ(run("verify --suite axioms --grid 99").code, 2);
    EXPECT_EQ(run("cohomology Sph(1,1) --format pdf").code, 2);
    EXPECT_EQ(run("cohomology Sph(1,1) --window 1,2,3").code, 2);
    EXPECT_EQ(run("ext EB --shift 1").code, 2);
    EXPECT_EQ(run("ext Q3").code, 2);
    EXPECT_EQ(run("verify --suite axioms --figures /nonexistent/tables.txt").code, 2);
}

TEST(Cli, JsonOutputParsesAndIsStable) {
    auto r = run("cohomology \"Sph(1,1)\" --format json");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("class"), "Sph(1,1)");
    EXPECT_EQ(j.at("invariants").at("fixed_points"), 4);
    EXPECT_EQ(j.dump(2) + "\n", r.out);
    EXPECT_EQ(run("cohomology \"S21 + 1 R3 # M(1)\" --format json").out, r.out);
}

TEST(Cli, AsciiWindowFromFlagAndEnvironment) {
    auto a = run("cohomology \"NOdd(0,0)\" --window -1,1,-1,1");
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("NOdd(0,0) = M3"), std::string::npos);
    EXPECT_NE(a.out.find("q\\p  -1  0  1\n"), std::string::npos);
    auto b = run("cohomology \"NOdd(0,0)\"", "EQUISURF_WINDOW=-1,1,-1,1");
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run("cohomology \"NOdd(0,0)\"", "EQUISURF_WINDOW=junk").code, 2);
}

TEST(Cli, SvgFormat) {
    auto r = run("cohomology \"Sph(0,0)\" --format svg --window 0,2,0,2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
}

TEST(Cli, VerifySuites) {
    auto e = run("verify --suite ext");
    EXPECT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("all checks passed"), std::string::npos);
    EXPECT_EQ(run("verify --suite axioms").code, 0);
    EXPECT_EQ(run("verify --suite theorems --grid 2").code, 0);
    EXPECT_EQ(run("verify --suite figures --figures \"" EQUISURF_FIGURES_FILE "\"").code, 0);
}

TEST(Cli, Ext) {
    auto r = run("ext EB");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("dim Ext^1       0"), std::string::npos);
    EXPECT_EQ(run("ext \"M3\" --shift 2,1").code, 0);
}

TEST(Cli, ReplayFixtureAndClass) {
    auto r = run("replay EB");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1 admissible rank class(es)"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(run("replay \"Sph(1,1)\"").code, 0);
    EXPECT_EQ(run("replay \"S21 # N(0)\"").code, 3);
}
