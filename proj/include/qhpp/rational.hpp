#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhpp {

// Every arithmetic value in this library is an exact integer or an exact
// rational. Floating point is banned from the core: the nonexistence
// arguments hinge on exact comparisons like 17/19 < 1.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Canonical "p/q" form (gcd-reduced, sign on the numerator); plain "p"
/// when the denominator is 1.
inline std::string to_string(const Rat& r) {
    Int n = numerator(r), d = denominator(r);
    std::string s = n.str();
    if (d != 1) s += "/" + d.str();
    return s;
}

inline std::string to_string(const Int& n) { return n.str(); }

/// Parses "p", "-p" or "p/q". Whitespace around tokens is ignored.
inline Rat parse_rational(std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(text)));
        Int num{std::string(trim(text.substr(0, slash)))};
        Int den{std::string(trim(text.substr(slash + 1)))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    }
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    return r * r == n;
}

/// True when r is an integer that is a perfect square.
inline bool is_integer_perfect_square(const Rat& r) {
    return denominator(r) == 1 && is_perfect_square(numerator(r));
}

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

} // namespace qhpp
