#include <doctest.h>

#include "busytime/errors.hpp"
#include "busytime/time.hpp"

using namespace busytime;

TEST_CASE("[time] integer, fraction and decimal literals parse exactly") {
    CHECK(parse_time("3") == Time(3));
    CHECK(parse_time("-7/2") == Time(-7) / Time(2));
    CHECK(parse_time("0.25") == Time(1) / Time(4));
    CHECK(parse_time("+5") == Time(5));
    CHECK(parse_time(" 2/3 ") == Time(2) / Time(3));
    CHECK(parse_time("1.50") == Time(3) / Time(2));
    CHECK(parse_time("-0.1") == Time(-1) / Time(10));
    CHECK(parse_time("4/6") == Time(2) / Time(3));
}

TEST_CASE("[time] malformed literals are rejected") {
    CHECK_THROWS_AS(parse_time(""), ParseError);
    CHECK_THROWS_AS(parse_time("-"), ParseError);
    CHECK_THROWS_AS(parse_time("abc"), ParseError);
    CHECK_THROWS_AS(parse_time("1/0"), ParseError);
    CHECK_THROWS_AS(parse_time("1/2x"), ParseError);
    CHECK_THROWS_AS(parse_time("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_time("1/-2"), ParseError);
}

TEST_CASE("[time] canonical string form") {
    CHECK(time_to_string(Time(3)) == "3");
    CHECK(time_to_string(Time(-7) / Time(2)) == "-7/2");
    CHECK(time_to_string(parse_time("0.25")) == "1/4");
    CHECK(time_to_string(Time(0)) == "0");
    CHECK(time_to_string(parse_time(time_to_string(parse_time("22/7")))) == "22/7");
}

TEST_CASE("[time] arithmetic is exact") {
    Time a = parse_time("0.1");
    Time b = parse_time("0.2");
    Time c = a + b;
    CHECK(c == parse_time("3/10"));
    Time third = Time(1) / Time(3);
    Time sum = third + third + third;
    CHECK(sum == Time(1));
    CHECK(is_integral(sum));
    CHECK_FALSE(is_integral(third));
}

TEST_CASE("[time] common denominator is the lcm") {
    CHECK(common_denominator({}) == 1);
    CHECK(common_denominator({Time(4), Time(7)}) == 1);
    CHECK(common_denominator({parse_time("1/2"), parse_time("1/3")}) == 6);
    CHECK(common_denominator({parse_time("5/6"), parse_time("1/4")}) == 12);
}

TEST_CASE("[time] scaled_int64 converts exact multiples only") {
    CHECK(scaled_int64(parse_time("3/2"), BigInt(2)) == std::int64_t{3});
    CHECK(scaled_int64(Time(5), BigInt(4)) == std::int64_t{20});
    CHECK_FALSE(scaled_int64(parse_time("1/3"), BigInt(2)).has_value());
    Time huge = Time(BigInt("123456789012345678901234567890"));
    CHECK_FALSE(scaled_int64(huge, BigInt(1000)).has_value());
}
