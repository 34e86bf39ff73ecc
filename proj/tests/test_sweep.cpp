#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "hmbec/semiclassical.hpp"
#include "hmbec/sweep.hpp"

using namespace hmbec;

namespace {

std::string tmp_csv(const char* tag) {
    return std::string("/tmp/hmbec_sweep_test_") + tag + ".csv";
}

}  // namespace

TEST_CASE("range parsing") {
    const Axis a = parse_range("alpha", "0:2:5");
    CHECK(a.name == "alpha");
    CHECK(a.start == 0.0);
    CHECK(a.stop == 2.0);
    CHECK(a.count == 5);

    const Axis single = parse_range("n", "100");
    CHECK(single.count == 1);
    CHECK(single.start == 100.0);
    CHECK(single.stop == 100.0);

    const Axis neg = parse_range("z", "-0.5:0.5:3");
    CHECK(neg.start == -0.5);

    for (const char* bad : {"", "1:2", "1:2:3:4", "a:b:c", "1:2:x", "0:1:0", "2:1:5"}) {
        CHECK_THROWS_AS(parse_range("alpha", bad), std::invalid_argument);
        try {
            parse_range("alpha", bad);
        } catch (const std::invalid_argument& e) {
            // the diagnostic names the offending flag
            CHECK(std::string(e.what()).find("--alpha") != std::string::npos);
        }
    }
}

TEST_CASE("axis sampling") {
    const Axis a{"x", -1.0, 1.0, 5};
    CHECK(axis_value(a, 0) == doctest::Approx(-1.0));
    CHECK(axis_value(a, 2) == doctest::Approx(0.0));
    CHECK(axis_value(a, 4) == doctest::Approx(1.0));
    const Axis one{"x", 3.5, 3.5, 1};
    CHECK(axis_value(one, 0) == 3.5);
}

TEST_CASE("numeric cell formatting") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        double x;
        if (trial == 0) x = 0.0;
        else if (trial == 1) x = 1.0 / 3.0;
        else x = std::ldexp(static_cast<double>(rng()) / 1e19 - 0.9, (trial % 40) - 20);
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);  // 17 significant digits round-trip exactly
    }
}

TEST_CASE("single-cell sweep matches the direct call") {
    SweepSpec spec;
    spec.target = "classical-energy";
    spec.fixed = {{"lambda", 0.5}, {"alpha", 3.0}, {"k", 0.0}, {"theta", 0.0}};
    spec.axes = {Axis{"z", 0.25, 0.25, 1}};
    const auto result = run_sweep(spec, 1);
    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.columns.size() == 3);  // z, energy, error
    CHECK(result.columns[0] == "z");
    CHECK(result.columns[1] == "energy");
    CHECK(result.columns[2] == "error");
    const double direct = classical_energy({0.25, 0.0}, {0.5, 3.0, 0.0}, 0.0);
    CHECK(std::stod(result.rows[0][1]) == direct);
    CHECK(result.rows[0][2].empty());
    CHECK_FALSE(result.any_failed());
}

TEST_CASE("worker count does not change the result") {
    SweepSpec spec;
    spec.target = "expectation";
    spec.fixed = {{"n", 60.0}};
    spec.axes = {Axis{"alpha", 0.2, 1.8, 9}, Axis{"lambda", 0.0, 0.4, 3}};
    const auto serial = run_sweep(spec, 1);
    const auto parallel = run_sweep(spec, 8);
    CHECK(serial == parallel);
    CHECK(serial.rows.size() == 27);
}

TEST_CASE("failed cells are tagged, not dropped") {
    SweepSpec spec;
    spec.target = "classical-energy";
    // z = 1.5 is outside phase space: that cell must fail, the rest succeed
    spec.fixed = {{"lambda", 0.0}, {"alpha", 0.0}, {"k", 0.0}, {"theta", 0.0}};
    spec.axes = {Axis{"z", 0.0, 1.5, 4}};
    const auto result = run_sweep(spec, 2);
    REQUIRE(result.rows.size() == 4);
    CHECK(result.any_failed());
    for (int i = 0; i < 3; ++i) {
        CHECK(result.rows[i][2].empty());
        CHECK_FALSE(result.rows[i][1].empty());
    }
    CHECK_FALSE(result.rows[3][2].empty());
    CHECK(result.rows[3][1].empty());
    // sanitized error text: single CSV cell, no separators
    CHECK(result.rows[3][2].find(',') == std::string::npos);
    CHECK(result.rows[3][2].find('\n') == std::string::npos);
}

TEST_CASE("invalid sweep requests are rejected before any work") {
    SweepSpec spec;
    spec.target = "threshold";
    spec.fixed = {};
    SUBCASE("no axes") {
        CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
    }
    SUBCASE("three axes") {
        spec.axes = {Axis{"a", 0, 1, 2}, Axis{"b", 0, 1, 2}, Axis{"c", 0, 1, 2}};
        CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
    }
    SUBCASE("axis clashes with a fixed parameter") {
        spec.fixed = {{"n", 100.0}};
        spec.axes = {Axis{"n", 100.0, 200.0, 2}};
        CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
    }
    SUBCASE("unknown target") {
        spec.target = "nonsense";
        spec.axes = {Axis{"n", 100.0, 200.0, 2}};
        CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
    }
    SUBCASE("bad axis count") {
        spec.axes = {Axis{"n", 100.0, 200.0, 0}};
        CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
    }
}

TEST_CASE("persistence round trip") {
    SweepSpec spec;
    spec.target = "region";
    spec.fixed = {{"k", 0.0}, {"beta", 0.0}};
    spec.axes = {Axis{"alpha", -2.0, 4.0, 7}, Axis{"lambda", -1.0, 3.0, 5}};
    const auto result = run_sweep(spec, 4);
    REQUIRE(result.rows.size() == 35);

    const std::string path = tmp_csv("roundtrip");
    persist(result, path);
    const auto back = load(path);
    CHECK(back == result);
    std::remove(path.c_str());

    // meta lines record the construction
    bool saw_target = false, saw_axis = false;
    for (const auto& m : result.meta) {
        if (m.find("target=region") != std::string::npos) saw_target = true;
        if (m.find("alpha=-2:4:7") != std::string::npos) saw_axis = true;
    }
    CHECK(saw_target);
    CHECK(saw_axis);
}

TEST_CASE("load failure modes") {
    CHECK_THROWS_AS(load("/nonexistent/path.csv"), std::runtime_error);

    const std::string path = tmp_csv("badcols");
    {
        FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("a,b,error\n1,2,\n1,2,3,4\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load(path), std::runtime_error);
    std::remove(path.c_str());
}
