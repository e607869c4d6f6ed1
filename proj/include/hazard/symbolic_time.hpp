#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "hazard/error.hpp"
#include "hazard/rational.hpp"

namespace hazard {

using DelayValues = std::map<std::string, Rational, std::less<>>;

// An instant of the form  constant + sum_j k_j * d_j  where every d_j is a
// named delay symbol (assumed > 0) and every k_j is a positive integer.
class SymbolicTime {
public:
    using Coefficients = std::map<std::string, std::int64_t, std::less<>>;

    SymbolicTime() = default;
    SymbolicTime(Rational constant) : constant_(std::move(constant)) {}  // NOLINT: implicit by intent
    SymbolicTime(int constant) : constant_(constant) {}                   // NOLINT

    static SymbolicTime symbol(const std::string& name, std::int64_t coeff = 1) {
        SymbolicTime t;
        t.add_symbol(name, coeff);
        return t;
    }

    const Rational& constant() const { return constant_; }
    const Coefficients& coefficients() const { return coeffs_; }
    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

    std::int64_t coefficient(std::string_view name) const {
        auto it = coeffs_.find(name);
        return it == coeffs_.end() ? 0 : it->second;
    }

    SymbolicTime& operator+=(const SymbolicTime& o) {
        constant_ += o.constant_;
        for (const auto& [s, k] : o.coeffs_) add_symbol(s, k);
        return *this;
    }

    friend SymbolicTime operator+(SymbolicTime a, const SymbolicTime& b) { return a += b; }

    friend SymbolicTime operator*(std::int64_t k, const SymbolicTime& t) {
        if (k < 0) throw Error("symbolic times can only be scaled by nonnegative integers");
        SymbolicTime r(Rational(t.constant_ * k));
        for (const auto& [s, c] : t.coeffs_) r.add_symbol(s, c * k);
        return r;
    }

    friend bool operator==(const SymbolicTime&, const SymbolicTime&) = default;

    Rational evaluate(const DelayValues& delays) const {
        Rational v = constant_;
        for (const auto& [s, k] : coeffs_) {
            auto it = delays.find(s);
            if (it == delays.end()) throw MissingDelayAssignment(s);
            v += it->second * k;
        }
        return v;
    }

    // Replaces the assigned symbols by their values; the rest stay symbolic.
    SymbolicTime substitute(const DelayValues& delays) const {
        SymbolicTime r(constant_);
        for (const auto& [s, k] : coeffs_) {
            if (auto it = delays.find(s); it != delays.end())
                r.constant_ += it->second * k;
            else
                r.add_symbol(s, k);
        }
        return r;
    }

    void collect_symbols(std::set<std::string>& out) const {
        for (const auto& [s, k] : coeffs_) out.insert(s);
    }

    std::size_t summand_count() const { return coeffs_.size() + (constant_ != 0 ? 1 : 0); }

    // `5+2*tau`, `tau`, `1.5`, `0`.
    std::string to_string() const {
        std::string out;
        if (constant_ != 0 || coeffs_.empty()) out = format_rational(constant_);
        for (const auto& [s, k] : coeffs_) {
            if (!out.empty()) out += "+";
            if (k != 1) out += std::to_string(k) + "*";
            out += s;
        }
        return out;
    }

private:
    void add_symbol(const std::string& name, std::int64_t k) {
        if (name.empty()) throw Error("delay symbol name must be non-empty");
        if (k < 0) throw NegativeDelay("negative coefficient for delay symbol '" + name + "'");
        if (k == 0) return;
        coeffs_[name] += k;
    }

    Rational constant_ = 0;
    Coefficients coeffs_;
};

enum class TimeOrder { Less, Equal, Greater, Incomparable };

// Order that holds for every positive value of every delay symbol: a < b iff
// a's constant and each of a's coefficients are <= b's, not all equal.
inline TimeOrder compare_times(const SymbolicTime& a, const SymbolicTime& b) {
    bool some_less = false;
    bool some_greater = false;
    auto note = [&](auto x, auto y) {
        if (x < y) some_less = true;
        if (x > y) some_greater = true;
    };
    note(a.constant(), b.constant());
    auto ia = a.coefficients().begin();
    auto ib = b.coefficients().begin();
    const auto ea = a.coefficients().end();
    const auto eb = b.coefficients().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            note(ia->second, std::int64_t{0});
            ++ia;
        } else if (ia == ea || ib->first < ia->first) {
            note(std::int64_t{0}, ib->second);
            ++ib;
        } else {
            note(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    if (some_less && some_greater) return TimeOrder::Incomparable;
    if (some_less) return TimeOrder::Less;
    if (some_greater) return TimeOrder::Greater;
    return TimeOrder::Equal;
}

// b - a for a <= b; the result is again a valid (nonnegative) time.
inline SymbolicTime elapsed(const SymbolicTime& from, const SymbolicTime& to) {
    auto ord = compare_times(from, to);
    if (ord != TimeOrder::Less && ord != TimeOrder::Equal)
        throw Error("elapsed time from " + from.to_string() + " to " + to.to_string() + " is not nonnegative");
    SymbolicTime r(Rational(to.constant() - from.constant()));
    for (const auto& [s, k] : to.coefficients()) {
        std::int64_t d = k - from.coefficient(s);
        if (d > 0) r += SymbolicTime::symbol(s, d);
    }
    return r;
}

// Delay expression: `const`, `sym`, `k*sym`, or a `+`-separated sum of them.
// Constants are nonnegative decimals or `p/q` fractions.
inline SymbolicTime parse_symbolic_time(std::string_view text) {
    auto fail = [&](const std::string& why) -> SymbolicTime {
        throw Error("bad delay expression '" + std::string(text) + "': " + why);
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto is_ident = [](std::string_view s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
        return true;
    };

    if (trim(text).empty()) return fail("empty");
    SymbolicTime total;
    std::string_view rest = text;
    while (true) {
        auto plus = rest.find('+');
        std::string_view term = trim(rest.substr(0, plus));
        if (term.empty()) return fail("empty term");
        if (auto star = term.find('*'); star != std::string_view::npos) {
            auto k = trim(term.substr(0, star));
            auto sym = trim(term.substr(star + 1));
            if (!detail::all_digits(k) || !is_ident(sym)) return fail("expected k*symbol");
            total += SymbolicTime::symbol(std::string(sym), std::stoll(std::string(k)));
        } else if (is_ident(term)) {
            total += SymbolicTime::symbol(std::string(term));
        } else {
            if (term.front() == '-') throw NegativeDelay("negative delay constant in '" + std::string(text) + "'");
            try {
                total += SymbolicTime(parse_rational(term));
            } catch (const Error&) {
                return fail("bad constant '" + std::string(term) + "'");
            }
        }
        if (plus == std::string_view::npos) break;
        rest = rest.substr(plus + 1);
    }
    return total;
}

}  // namespace hazard
