#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "hazard/error.hpp"

namespace hazard {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// Decimal when the reduced denominator has only factors 2 and 5, `p/q` otherwise.
inline std::string format_rational(const Rational& r) {
    BigInt num = numerator_of(r);
    BigInt den = denominator_of(r);
    if (den == 1) return num.str();

    BigInt rest = den;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return num.str() + "/" + den.str();

    unsigned places = std::max(twos, fives);
    BigInt scale = boost::multiprecision::pow(BigInt(10), places);
    BigInt scaled = num * scale / den;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, 1, '.');
    return negative ? "-" + digits : digits;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

// Accepts `[-]123`, `[-]1.25` and `[-]p/q`. Throws hazard::Error on malformed text.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto fail = [&]() -> Rational { throw Error("malformed number '" + std::string(text) + "'"); };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto p = s.substr(0, slash);
        auto q = s.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q)) return fail();
        BigInt den{std::string(q)};
        if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
        value = Rational(BigInt(std::string(p)), den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if (!whole.empty() && !detail::all_digits(whole)) return fail();
        if (!frac.empty() && !detail::all_digits(frac)) return fail();
        BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
        BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        value = Rational(w * scale + f, scale);
    } else {
        if (!detail::all_digits(s)) return fail();
        value = Rational(BigInt(std::string(s)));
    }
    return negative ? Rational(-value) : value;
}

}  // namespace hazard
