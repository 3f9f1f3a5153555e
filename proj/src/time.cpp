#include "busytime/time.hpp"

#include <cctype>
#include <limits>

#include "busytime/errors.hpp"

namespace busytime {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Time parse_time(const std::string& text) {
    std::string s = text;
    // trim surrounding whitespace
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty time literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        s.erase(s.begin());
    }
    if (s.empty()) throw ParseError("bare sign is not a time literal: '" + text + "'");

    Time value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction: '" + text + "'");
        BigInt d(den);
        if (d == 0) throw ParseError("zero denominator: '" + text + "'");
        value = Time(BigInt(num), d);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw ParseError("malformed decimal: '" + text + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Time(BigInt(whole) * scale + BigInt(frac), scale);
    } else {
        if (!all_digits(s)) throw ParseError("malformed time literal: '" + text + "'");
        value = Time(BigInt(s));
    }
    return negative ? Time(-value) : value;
}

std::string time_to_string(const Time& t) {
    const BigInt num = numerator(t);
    const BigInt den = denominator(t);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

bool is_integral(const Time& t) { return denominator(t) == 1; }

BigInt common_denominator(const std::vector<Time>& values) {
    BigInt l = 1;
    for (const Time& v : values) l = boost::multiprecision::lcm(l, denominator(v));
    return l;
}

std::optional<std::int64_t> scaled_int64(const Time& t, const BigInt& scale) {
    const BigInt den = denominator(t);
    if (scale % den != 0) return std::nullopt;
    const BigInt scaled = numerator(t) * (scale / den);
    if (scaled > std::numeric_limits<std::int64_t>::max() ||
        scaled < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return scaled.convert_to<std::int64_t>();
}

}  // namespace busytime
