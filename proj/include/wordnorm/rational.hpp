#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace wordnorm {

// Every metric quantity in the library is an exact rational; nothing is ever
// rounded through floating point.
using Rat = boost::rational<long long>;

inline bool is_integer(const Rat& v) { return v.denominator() == 1; }

// Largest integer <= v.  boost::rational has no floor of its own.
inline long long rat_floor(const Rat& v) {
    long long q = v.numerator() / v.denominator();
    if (v.numerator() % v.denominator() != 0 && v.numerator() < 0) --q;
    return q;
}

// Canonical text form: "p/q" reduced, denominator suppressed when 1.
inline std::string rat_str(const Rat& v) {
    std::string s = std::to_string(v.numerator());
    if (v.denominator() != 1) s += "/" + std::to_string(v.denominator());
    return s;
}

// Accepts "p", "-p", "p/q".  Anything else is malformed input.
inline Rat rat_parse(const std::string& text) {
    const auto bad = [&] { throw MalformedInputError("bad rational '" + text + "'"); };
    if (text.empty()) bad();
    std::size_t slash = text.find('/');
    const auto parse_ll = [&](const std::string& part) -> long long {
        if (part.empty()) bad();
        std::size_t pos = 0;
        long long val = 0;
        try {
            val = std::stoll(part, &pos);
        } catch (const std::exception&) {
            bad();
        }
        if (pos != part.size()) bad();
        return val;
    };
    if (slash == std::string::npos) return Rat(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    if (den <= 0) bad();
    return Rat(num, den);
}

} // namespace wordnorm
