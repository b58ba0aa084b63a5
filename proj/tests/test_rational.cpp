#include <doctest.h>

#include "fmdil/errors.hpp"
#include "fmdil/rational.hpp"

using namespace fmdil;

TEST_SUITE("rational") {

TEST_CASE("parsing and formatting") {
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational(" 2/8 ") == Rational(1, 4)); // normalized
    CHECK(to_string(Rational(1, 4)) == "1/4");
    CHECK(to_string(Rational(3)) == "3");
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
    CHECK_THROWS_AS(parse_rational("abc"), UsageError);
    CHECK_THROWS_AS(parse_rational(""), UsageError);
    CHECK_THROWS_AS(parse_rational("1.5"), UsageError);
}

TEST_CASE("dyadic values convert exactly") {
    CHECK(to_double(Rational(3, 4)) == 0.75);
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(0)) == 0.0);
}

TEST_CASE("list parsing") {
    auto pts = parse_rational_list("0,1/4,1/2,1");
    REQUIRE(pts.size() == 4);
    CHECK(pts[1] == Rational(1, 4));
    CHECK(pts[3] == Rational(1));
    CHECK_THROWS_AS(parse_rational_list(""), UsageError);
}

} // TEST_SUITE
