#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "jetnf/serialize.hpp"

using namespace jetnf;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(JETNF_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 512> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("milnor worked example") {
    auto r = run_cli("milnor --order 8 \"x^4\"");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "mu: 3"));
    CHECK(contains(r.output, "basis: 1, x, x^2"));
    CHECK(contains(r.output, "certified: yes"));
}

TEST_CASE("resonances worked example") {
    auto r = run_cli("resonances --lambda 2,1 --dmax 12");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "resonant: y^2*d/dx"));
    CHECK(contains(r.output, "certified_complete: yes"));
    CHECK(contains(r.output, "count: 1"));
}

TEST_CASE("wdiv worked example") {
    auto r = run_cli("wdiv --g \"y^2 - x\" --f \"y^3\" --order 8 --vars x,y");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "quotient: y"));
    CHECK(contains(r.output, "remainder: x*y"));
}

TEST_CASE("exit codes") {
    // Mathematical refusal: not versal.
    auto r1 = run_cli("versal --F \"x^3 + l1*x\" --nx 1 --vars x,l1");
    CHECK(r1.exit_code == 1);
    CHECK(contains(r1.output, "refusal"));
    CHECK(contains(r1.output, "uncovered_classes: 1"));
    // Input error: implicit multiplication.
    auto r2 = run_cli("parse \"2x\"");
    CHECK(r2.exit_code == 2);
    // Resonant frequency in the homological solve.
    auto r3 = run_cli("homological --omega 1,2 --dof 2 --g \"q1^2*q2^-1\"");
    CHECK(r3.exit_code == 1);
    CHECK(contains(r3.output, "resonant frequency"));
}

TEST_CASE("determinism") {
    std::string cmd = "pdnf --lambda 2,1 --w \"x*y + y^2; x^2\" --order 7 --format doc --vars x,y";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("doc output round trips") {
    auto r = run_cli("parse \"1/2 + x^2 - 3*x*y\" --order 6 --format doc --vars x,y");
    CHECK(r.exit_code == 0);
    size_t pos = r.output.find("series {");
    REQUIRE(pos != std::string::npos);
    SeriesDoc doc = parse_series_doc(r.output.substr(pos));
    CHECK(doc.series.coeff(Multidegree{{1, 1}}) == Coeff::rational(Rational(-3)));
    CHECK(doc.series.coeff(Multidegree{{0, 0}}) == Coeff::rational(Rational(1, 2)));
    CHECK(doc.var_names == std::vector<std::string>{"x", "y"});
    // Emit again from the parsed value: byte-identical series block.
    CHECK(series_doc_str(doc) == r.output.substr(pos, series_doc_str(doc).size()));
}

TEST_CASE("quadratic field flows through") {
    auto r = run_cli("resonances --lambda \"sqrt(2),1\" --field quad:2 --dmax 12");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "count: 0"));
    CHECK(contains(r.output, "certified_complete: yes"));
    auto p = run_cli("poincare --lambda \"1,-sqrt(2)\" --field quad:2");
    CHECK(p.exit_code == 0);
    CHECK(contains(p.output, "domain: siegel"));
}

TEST_CASE("siegel and diophantine scans") {
    auto r = run_cli("siegel --lambda \"1,-1\" --C 1000 --k 2 --dmax 8");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "violation_I: (2,1)"));
    CHECK(contains(r.output, "exact_zero: yes"));
    auto d = run_cli("diophantine --omega 1,2 --C 0.5 --tau 2 --kmax 10");
    CHECK(d.exit_code == 1);
    CHECK(contains(d.output, "violation_I: (2,-1)"));
}

TEST_CASE("induce golden example") {
    auto r = run_cli("induce --F \"x^3 + l1*x + l2\" --G \"x^3 + 3*a^2*x^2 + a\" --nx 1 "
                     "--order 8 --vars x,l1,l2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "-3*a^4"));
    CHECK(contains(r.output, "a + 2*a^6"));
    CHECK(contains(r.output, "x + a^2"));
    CHECK(contains(r.output, "verified: yes"));
}

TEST_CASE("wprep numeric table") {
    auto r = run_cli("wprep-numeric --f \"y^2 - x\" --d 2 --grid 0.1,0.2,0.3 --radius 1 "
                     "--nodes 256 --field float --vars x,y");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "nodes: 256"));
    // J2 ~ -x on the grid.
    CHECK(contains(r.output, "-0.0999"));
    CHECK(contains(r.output, "-0.2000"));
    CHECK(contains(r.output, "-0.2999"));
}
