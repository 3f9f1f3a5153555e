#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace busytime {

/// Exact rational time value. The underlying type keeps the canonical
/// reduced form with a positive denominator at all times.
using Time = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "3", "-7/2" or "0.25" into an exact rational.
/// Throws ParseError on anything else (including float notation with
/// exponents).
Time parse_time(const std::string& text);

/// Canonical text form: "3" for integers, "-7/2" otherwise.
std::string time_to_string(const Time& t);

bool is_integral(const Time& t);

/// Least common multiple of the denominators of all given values
/// (1 for an empty list).
BigInt common_denominator(const std::vector<Time>& values);

/// t * scale when that product is an integer fitting int64, otherwise
/// nullopt. Used to run oracle searches on machine integers.
std::optional<std::int64_t> scaled_int64(const Time& t, const BigInt& scale);

}  // namespace busytime
