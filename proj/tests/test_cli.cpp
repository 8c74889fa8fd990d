#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "semioval/cli.hpp"

#ifndef SEMIOVAL_FIXTURES
#define SEMIOVAL_FIXTURES "fixtures"
#endif

using namespace semioval;

namespace {
std::string fixture(const std::string& name) {
    return std::string(SEMIOVAL_FIXTURES) + "/" + name;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("semioval_test_tmp_") + std::to_string(rand()) + ".txt";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};
} // namespace

TEST_CASE("cmd_verify on the 26-point fixture") {
    auto out = cmd_verify(fixture("table2_q11.pts"), 11);
    CHECK(out.exit_code == 0);
    std::string why;
    REQUIRE(validate_report(out.report, &why));
    const auto& r = out.report["results"];
    CHECK(r["size"] == 26);
    CHECK(r["blocking_semioval"] == true);
    CHECK(r["spectrum"][10] == 1);
    CHECK(r["spectrum"][1] == 26);
    CHECK(r["tangent_map"]["(0,0,1)"] == "[1,0,0]");
}

TEST_CASE("cmd_verify flags a broken set") {
    std::ifstream in(fixture("table2_q11.pts"));
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    TempFile broken(contents + "1:1:1\n");
    auto out = cmd_verify(broken.path, 11);
    CHECK(out.exit_code == 1);
    CHECK(out.report["results"]["semioval"] == false);
}

TEST_CASE("cmd_verify errors") {
    TempFile empty("# nothing here\n");
    CHECK_THROWS_AS(cmd_verify(empty.path, 11), pointset_error);
    TempFile dup("1:1:0\n2:2:0\n");
    CHECK_THROWS_AS(cmd_verify(dup.path, 11), pointset_error); // same point twice
    TempFile oof("1:1:11\n");
    CHECK_THROWS_AS(cmd_verify(oof.path, 11), pointset_error);
    TempFile garbage("1:x:3\n");
    CHECK_THROWS_AS(cmd_verify(garbage.path, 11), pointset_error);
    CHECK_THROWS_AS(cmd_verify("no_such_file.pts", 11), pointset_error);
}

TEST_CASE("cmd_spectrum matches cmd_verify") {
    auto v = cmd_verify(fixture("table2_q11.pts"), 11);
    auto s = cmd_spectrum(fixture("table2_q11.pts"), 11);
    CHECK(s.report["results"]["spectrum"] == v.report["results"]["spectrum"]);
}

TEST_CASE("cmd_bounds") {
    auto out = cmd_bounds(11);
    CHECK(out.exit_code == 0);
    const auto& r = out.report["results"];
    CHECK(r["minimum_possible_size"] == 25);
    CHECK(r["dover_bound"] == 25);
    CHECK(r["heger_takats_bound"] == 22);
    CHECK(r["excluded_secants"] == json::array({7, 8, 9}));
    CHECK(r["ten_secant"] == "at most one");

    auto q7 = cmd_bounds(7);
    CHECK(q7.report["results"]["minimum_possible_size"] == 15);
    auto q3 = cmd_bounds(3);
    CHECK(q3.report["results"]["dover_bound"].is_null());
    CHECK_THROWS_AS(cmd_bounds(6), gf_error); // not a prime power
}

TEST_CASE("cmd_stabilizer on the 26-point fixture") {
    auto out = cmd_stabilizer(fixture("table2_q11.pts"), 11);
    const auto& r = out.report["results"];
    CHECK(r["order"] == 5);
    CHECK(r["fixed_points"] == json::array({"(0,0,1)", "(0,1,0)", "(1,0,0)"}));
}

TEST_CASE("cmd_orbits scenarios") {
    CHECK(cmd_orbits("ten-secant-pairs").report["results"]["orbit_count"] == 5);
    auto i3 = cmd_orbits("i3");
    CHECK(i3.report["results"]["candidate_points"] == 81);
    CHECK(i3.report["results"]["orbit_count"] == 45);
    CHECK(cmd_orbits("i4").report["results"]["orbit_count"] == 15);
    CHECK_THROWS_AS(cmd_orbits("bogus"), std::invalid_argument);
}

TEST_CASE("cmd_export is deterministic") {
    std::string out1 = "semioval_test_export1.cnf", out2 = "semioval_test_export2.cnf";
    auto a = cmd_export("base", 2, "dimacs", out1, 0, 0);
    auto b = cmd_export("base", 2, "dimacs", out2, 0, 0);
    CHECK(a.report["results"]["content_hash"] == b.report["results"]["content_hash"]);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("vertexless triangle fixtures verify for every shipped q") {
    for (int q : {3, 4, 5, 7, 11}) {
        auto out = cmd_verify(fixture("vertexless_triangle_q" + std::to_string(q) + ".pts"), q);
        CHECK(out.exit_code == 0);
        CHECK(out.report["results"]["size"] == 3 * q - 3);
    }
}

TEST_CASE("reports validate against the schema") {
    std::string why;
    CHECK(validate_report(cmd_bounds(11).report, &why));
    CHECK(validate_report(cmd_orbits("i3").report, &why));
    json bad = {{"tool", "semioval"}};
    CHECK(!validate_report(bad, &why));
    CHECK(!why.empty());
}
