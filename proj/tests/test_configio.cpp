#include <doctest.h>

#include <string>

#include "searchmkt/configio.hpp"
#include "searchmkt/errors.hpp"
#include "searchmkt/market.hpp"

using namespace searchmkt;

namespace {

std::string parse_error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const solver_error& e) {
        CHECK(e.code() == errc::parse);
        return e.what();
    }
    FAIL("expected a parse error");
    return {};
}

}  // namespace

TEST_CASE("a plain market file parses") {
    const std::string text =
        "# benchmark market\n"
        "N = 3\n"
        "v = 1.0\n"
        "c = 0.05  # per quote beyond the first\n"
        "theta = 0, 0, 0.9, 0.1\n";
    const run_config rc = parse_config(text);
    CHECK(rc.market.N == 3);
    CHECK(rc.market.v == 1.0);
    CHECK(rc.market.c == 0.05);
    REQUIRE(rc.market.theta.size() == 4);
    CHECK(rc.market.theta[2] == 0.9);
    CHECK_FALSE(rc.lambda.has_value());
    CHECK_FALSE(rc.tech.has_value());
    validate_config(rc.market);  // should not throw
}

TEST_CASE("parsing is lenient, validation is not") {
    const run_config rc = parse_config("N = 3\nv = 1\nc = 0.05\ntheta = 0, 0, 0.89, 0.1\n");
    try {
        validate_config(rc.market);
        FAIL("expected theta-sum");
    } catch (const solver_error& e) {
        CHECK(e.code() == errc::validation);
        CHECK(std::string(e.what()).find("theta-sum") != std::string::npos);
    }
}

TEST_CASE("sampling matrix block") {
    const std::string text =
        "N = 3\n"
        "v = 1\n"
        "c = 0.02\n"
        "theta = 0, 0, 0.9, 0.1\n"
        "delta:\n"
        "1, 0, 0\n"
        "0, 0.6, 0.4\n"
        "0, 0, 1\n";
    const run_config rc = parse_config(text);
    REQUIRE(rc.tech.has_value());
    CHECK(rc.tech->N == 3);
    CHECK(rc.tech->delta[1][1] == 1.0);
    CHECK(rc.tech->delta[2][3] == 0.4);
    CHECK(rc.tech->delta[3][3] == 1.0);
    CHECK(rc.tech->delta[1][0] == 0.0);  // index zero stays padding
}

TEST_CASE("optional run parameters") {
    const run_config rc = parse_config(
        "N = 3\nv = 1\nc = 0.02\ntheta = 0, 0, 0.7, 0.3\n"
        "lambda = 0.3\nshift_from = 2\nshift_to = 3\nshift = 0.15\n"
        "c_min = 0.01\nc_max = 0.1\n");
    CHECK(rc.lambda == 0.3);
    CHECK(rc.shift_from == 2);
    CHECK(rc.shift_to == 3);
    CHECK(rc.shift == 0.15);
    CHECK(rc.c_min == 0.01);
    CHECK(rc.c_max == 0.1);
}

TEST_CASE("render and parse are inverse") {
    run_config rc;
    rc.market.N = 3;
    rc.market.v = 2.0 / 3.0;
    rc.market.c = 0.1 + 0.2;  // deliberately not a round decimal
    rc.market.theta = {0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    rc.lambda = 0.3;
    rc.shift_from = 2;
    rc.shift_to = 3;
    rc.shift = 1.0 / 7.0;
    rc.c_min = 0.01;
    rc.c_max = 1.0 / 9.0;
    rc.tech = noisy_tech{3, {{0, 0, 0, 0},
                             {0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                             {0, 0, 0.6, 0.4},
                             {0, 0, 0, 1}}};
    const std::string text = render_config(rc);
    CHECK(text.rfind("N = 3\n", 0) == 0);
    CHECK(parse_config(text) == rc);
}

TEST_CASE("parse diagnostics carry the location") {
    CHECK(parse_error_of("N = 3\nfoo = 1\n").find("line 2") != std::string::npos);
    CHECK(parse_error_of("N = 3\nfoo = 1\n").find("unknown key 'foo'") != std::string::npos);
    CHECK(parse_error_of("N 3\n").find("expected 'key = value'") != std::string::npos);
    CHECK(parse_error_of("v = abc\n").find("expected a number") != std::string::npos);
    CHECK(parse_error_of("v = abc\n").find("column 5") != std::string::npos);
    CHECK(parse_error_of("N = 3.5\n").find("expected an integer") != std::string::npos);
    CHECK(parse_error_of("theta = 0,,1\n").find("empty entry") != std::string::npos);
}

TEST_CASE("sampling matrix block errors") {
    CHECK(parse_error_of("delta:\n").find("needs N set") != std::string::npos);
    CHECK(parse_error_of("N = 3\ndelta:\n0,1,0\n0,0,1\n").find("row(s) short") !=
          std::string::npos);
    CHECK(parse_error_of("N = 3\ndelta:\n0,1\n0,0,1\n1,1,1\n").find("got 2") !=
          std::string::npos);
    const std::string twice =
        "N = 3\ndelta:\n1,0,0\n0,1,0\n0,0,1\ndelta:\n1,0,0\n0,1,0\n0,0,1\n";
    CHECK(parse_error_of(twice).find("duplicate delta block") != std::string::npos);
}

TEST_CASE("missing files are parse errors") {
    try {
        load_config("/nonexistent/searchmkt.cfg");
        FAIL("expected a parse error");
    } catch (const solver_error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
    }
}
