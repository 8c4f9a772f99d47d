#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sim/constants.hpp"
#include "sim/errors.hpp"
#include "sim/scenario.hpp"
#include "sim/table.hpp"

using namespace sim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("parse_scenario units") {
    const Scenario sc = parse_scenario(
        "# reference trap\n"
        "omega_T = 480 kHz\n"
        "omega_eg = 5.1e15 rad/s\n"
        "gamma = 1.2e8 1/s\n"
        "mass = 174 u\n"
        "t0 = 5 ns\n"
        "temperature = 1 mK\n"
        "delta = 0.5\n"
        "seed = 42\n");
    CHECK(*sc.omega_T == doctest::Approx(constants::two_pi * 4.8e5).epsilon(1e-12));
    CHECK(*sc.omega_eg == 5.1e15);
    CHECK(*sc.gamma == 1.2e8);
    CHECK(*sc.mass == doctest::Approx(174.0 * constants::atomic_mass_unit).epsilon(1e-12));
    CHECK(*sc.t0 == doctest::Approx(5e-9).epsilon(1e-12));
    CHECK(*sc.temperature == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(*sc.delta == 0.5);
    CHECK(*sc.seed == 42);
}

TEST_CASE("parse_scenario errors carry line numbers and key names") {
    // unknown key
    CHECK_THROWS_WITH_AS(parse_scenario("omega_t = 480 kHz\n"),
                         doctest::Contains("unknown key 'omega_t'"), config_error);
    // duplicate key names both lines
    try {
        parse_scenario("delta = 0.5\nomega_eg = 5.1e15 rad/s\ndelta = 0.2\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("line 1") != std::string::npos);
        CHECK(msg.find("duplicate key 'delta'") != std::string::npos);
    }
    // unit mismatch
    CHECK_THROWS_WITH_AS(parse_scenario("mass = 174 kHz\n"),
                         doctest::Contains("unit"), config_error);
    CHECK_THROWS_WITH_AS(parse_scenario("omega_T = 480\n"),
                         doctest::Contains("unit"), config_error);
    // dimensionless with stray unit
    CHECK_THROWS_AS(parse_scenario("delta = 0.5 kHz\n"), config_error);
    // malformed line
    CHECK_THROWS_AS(parse_scenario("what is this\n"), config_error);
    // bad state name
    CHECK_THROWS_AS(parse_scenario("state = plasma\n"), config_error);
}

TEST_CASE("missing required key is reported by name") {
    const Scenario sc = parse_scenario("omega_eg = 5.1e15 rad/s\n");
    CHECK_THROWS_WITH_AS(sc.require(sc.mass, "mass"),
                         doctest::Contains("'mass'"), config_error);
}

TEST_CASE("grid validation") {
    Scenario sc = parse_scenario("grid_min = 2\ngrid_max = 1\ngrid_points = 10\n");
    CHECK_THROWS_WITH_AS(sc.grid_or(0.0, 1.0, 10),
                         doctest::Contains("non-monotone"), config_error);

    sc = parse_scenario("grid_min = 0\ngrid_max = 3\ngrid_points = 4\n");
    const auto values = sc.grid_or(0.0, 1.0, 2).values();
    REQUIRE(values.size() == 4);
    CHECK(values[0] == 0.0);
    CHECK(values[3] == 3.0);
    CHECK(values[1] == doctest::Approx(1.0).epsilon(1e-12));

    // defaults kick in when keys are absent
    const GridSpec def = parse_scenario("").grid_or(0.0, 3.0, 301);
    CHECK(def.points == 301);
}

TEST_CASE("gamma/dipole consistency warning") {
    const Scenario sc = parse_scenario(
        "omega_eg = 5.1e15 rad/s\n"
        "gamma = 1.2e8 1/s\n"
        "dipole_moment = 1e-29 C*m\n");
    REQUIRE(sc.warnings.size() == 1);
    CHECK(sc.warnings[0].find("ignored") != std::string::npos);
}

TEST_CASE("write_table basics") {
    const std::string path = temp_path("sim_test_table.csv");

    // empty row set: header-only file
    write_table({}, {"a", "b"}, path);
    CHECK(slurp(path) == "a,b\n");

    write_table({{1.0, std::string("x")}, {0.5, std::string("y")}}, {"a", "b"}, path);
    CHECK(slurp(path) == "a,b\n1,x\n0.5,y\n");

    // NaN is a hard error and the file is not rewritten
    const std::string before = slurp(path);
    CHECK_THROWS_AS(
        write_table({{std::nan(""), std::string("x")}}, {"a", "b"}, path),
        std::invalid_argument);
    CHECK(slurp(path) == before);

    CHECK_THROWS_AS(write_table({{1.0}}, {"a", "b"}, path), std::invalid_argument);
    std::filesystem::remove(path);
}

TEST_CASE("float formatting is 12 significant digits") {
    CHECK(format_float(0.4376) == "0.4376");
    CHECK(format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(format_float(5.3e-4) == "0.00053");
    CHECK(format_float(1.23456789012345e8) == "123456789.012");
}

TEST_CASE("metadata sidecar") {
    const std::string path = temp_path("sim_test_meta.txt");
    write_metadata({{"command", "fig2"}, {"seed", "7"}}, path);
    CHECK(slurp(path) == "command = fig2\nseed = 7\n");
    std::filesystem::remove(path);
}
