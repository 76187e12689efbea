#include "homdom/error.hpp"
#include "homdom/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace homdom;

TEST_CASE("rationals print canonically")
{
    CHECK(to_string(make_rat(6, 4)) == "3/2");
    CHECK(to_string(make_rat(-6, 3)) == "-2");
    CHECK(to_string(make_rat(0, 5)) == "0");
}

TEST_CASE("parse_rat accepts canonical and unreduced forms")
{
    CHECK(parse_rat("12/7") == make_rat(12, 7));
    CHECK(parse_rat("-4/6") == make_rat(-2, 3));
    CHECK(parse_rat("5") == 5);
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
    CHECK_THROWS_AS(parse_rat(""), ParseError);
    CHECK_THROWS_AS(parse_rat("1.5"), ParseError);
}

TEST_CASE("powers and logs")
{
    CHECK(pow(make_rat(2, 3), 3) == make_rat(8, 27));
    CHECK(pow_signed(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK_THROWS(pow_signed(Rat(0), -1));
    CHECK(ipow(10, 20) == BigInt("100000000000000000000"));
    BigInt huge = pow(BigInt(7), 2000);
    CHECK(log_abs(huge) == doctest::Approx(2000 * std::log(7.0)));
    CHECK(log_rat(Rat(huge, pow(BigInt(3), 1000))) == doctest::Approx(2000 * std::log(7.0) - 1000 * std::log(3.0)));
    CHECK(std::isinf(log_rat(Rat(0))));
}

TEST_CASE("floor_power is exact at perfect powers")
{
    CHECK(floor_power(BigInt(8), 2, 3) == 4);
    CHECK(floor_power(BigInt(9), 2, 3) == 4);
    CHECK(floor_power(BigInt(27), 2, 3) == 9);
    CHECK(floor_power(BigInt(26), 2, 3) == 8);
}
