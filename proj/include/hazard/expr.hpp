#pragma once

// Boolean expressions and their arithmetic (pseudo-Boolean) form.
//
// Logical operations over {0,1} are replaced by arithmetic ones
// (NOT x = 1 - x, x AND y = x*y, x OR y = x + y - x*y) and every product is
// reduced with x^m = x, so a polynomial is always multilinear and has a
// unique representation for the function it computes.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hazard/error.hpp"
#include "hazard/rational.hpp"

namespace hazard {

class Bit {
public:
    constexpr Bit() = default;
    constexpr explicit Bit(bool v) : value_(v ? 1 : 0) {}

    static Bit from_int(long long v) {
        if (v != 0 && v != 1) throw Error("bit value must be 0 or 1, got " + std::to_string(v));
        return Bit(v == 1);
    }

    constexpr int value() const { return value_; }
    constexpr bool is_one() const { return value_ == 1; }
    constexpr Bit operator!() const { return Bit(value_ == 0); }
    constexpr char to_char() const { return value_ ? '1' : '0'; }

    friend constexpr bool operator==(Bit, Bit) = default;

private:
    std::uint8_t value_ = 0;
};

inline constexpr Bit kZero{false};
inline constexpr Bit kOne{true};

using Assignment = std::map<std::string, Bit, std::less<>>;

class BoolExpr {
public:
    enum class Kind { Const, Var, Not, And, Or, Xor, Nand, Nor };

    static BoolExpr constant(Bit b) { return BoolExpr(Node{Kind::Const, b, {}, {}}); }

    static BoolExpr var(std::string name) {
        if (name.empty()) throw Error("variable name must be non-empty");
        return BoolExpr(Node{Kind::Var, kZero, std::move(name), {}});
    }

    static BoolExpr make(Kind kind, std::vector<BoolExpr> children) {
        check_arity(kind, children.size());
        return BoolExpr(Node{kind, kZero, {}, std::move(children)});
    }

    static BoolExpr negate(BoolExpr e) { return make(Kind::Not, {std::move(e)}); }
    static BoolExpr all_of(std::vector<BoolExpr> c) { return make(Kind::And, std::move(c)); }
    static BoolExpr any_of(std::vector<BoolExpr> c) { return make(Kind::Or, std::move(c)); }
    static BoolExpr exclusive(BoolExpr a, BoolExpr b) { return make(Kind::Xor, {std::move(a), std::move(b)}); }

    Kind kind() const { return node_->kind; }
    Bit bit() const { return node_->bit; }
    const std::string& name() const { return node_->name; }
    const std::vector<BoolExpr>& children() const { return node_->children; }

    static void check_arity(Kind kind, std::size_t n) {
        switch (kind) {
            case Kind::Const:
            case Kind::Var:
                if (n != 0) throw ArityError("leaf expression cannot have children");
                return;
            case Kind::Not:
                if (n != 1) throw ArityError("NOT takes exactly 1 operand, got " + std::to_string(n));
                return;
            case Kind::Xor:
                if (n != 2) throw ArityError("XOR takes exactly 2 operands, got " + std::to_string(n));
                return;
            case Kind::And:
            case Kind::Or:
            case Kind::Nand:
            case Kind::Nor:
                if (n < 2) throw ArityError("n-ary gate needs at least 2 operands, got " + std::to_string(n));
                return;
        }
    }

    friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
        if (a.node_ == b.node_) return true;
        return a.kind() == b.kind() && a.bit() == b.bit() && a.name() == b.name() && a.children() == b.children();
    }

private:
    struct Node {
        Kind kind;
        Bit bit;
        std::string name;
        std::vector<BoolExpr> children;
    };

    explicit BoolExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    std::shared_ptr<const Node> node_;
};

inline void collect_variables(const BoolExpr& e, std::set<std::string>& out) {
    if (e.kind() == BoolExpr::Kind::Var) out.insert(e.name());
    for (const auto& c : e.children()) collect_variables(c, out);
}

inline std::set<std::string> variables(const BoolExpr& e) {
    std::set<std::string> out;
    collect_variables(e, out);
    return out;
}

// Truth-table semantics, evaluated directly on the tree.
inline Bit evaluate(const BoolExpr& e, const Assignment& sigma) {
    using K = BoolExpr::Kind;
    switch (e.kind()) {
        case K::Const:
            return e.bit();
        case K::Var: {
            auto it = sigma.find(e.name());
            if (it == sigma.end()) throw UnknownVariable(e.name());
            return it->second;
        }
        case K::Not:
            return !evaluate(e.children()[0], sigma);
        case K::Xor:
            return Bit(evaluate(e.children()[0], sigma) != evaluate(e.children()[1], sigma));
        case K::And:
        case K::Nand: {
            bool all = std::all_of(e.children().begin(), e.children().end(),
                                   [&](const BoolExpr& c) { return evaluate(c, sigma).is_one(); });
            return Bit(e.kind() == K::And ? all : !all);
        }
        case K::Or:
        case K::Nor: {
            bool any = std::any_of(e.children().begin(), e.children().end(),
                                   [&](const BoolExpr& c) { return evaluate(c, sigma).is_one(); });
            return Bit(e.kind() == K::Or ? any : !any);
        }
    }
    return kZero;
}

// ---------------------------------------------------------------------------
// Multilinear polynomials
// ---------------------------------------------------------------------------

// Sorted, duplicate-free list of variable names. The empty monomial is the
// constant term.
using Monomial = std::vector<std::string>;

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

class MultilinearPoly {
public:
    using TermMap = std::map<Monomial, BigInt, MonomialOrder>;

    MultilinearPoly() = default;

    static MultilinearPoly constant(BigInt c) {
        MultilinearPoly p;
        p.add_term({}, std::move(c));
        return p;
    }

    static MultilinearPoly variable(const std::string& name) {
        if (name.empty()) throw Error("variable name must be non-empty");
        MultilinearPoly p;
        p.add_term({name}, 1);
        return p;
    }

    // Builds from arbitrary (possibly repeated-variable) monomials; repeated
    // variables collapse by x^m = x and like terms are merged.
    static MultilinearPoly from_terms(const std::vector<std::pair<std::vector<std::string>, BigInt>>& raw) {
        MultilinearPoly p;
        for (const auto& [vars, coeff] : raw) p.add_term(vars, coeff);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    BigInt constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    std::set<std::string> variables() const {
        std::set<std::string> out;
        for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
        return out;
    }

    friend MultilinearPoly operator+(const MultilinearPoly& a, const MultilinearPoly& b) {
        MultilinearPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend MultilinearPoly operator-(const MultilinearPoly& a, const MultilinearPoly& b) {
        MultilinearPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b) {
        MultilinearPoly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial merged;
                merged.reserve(ma.size() + mb.size());
                std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(merged));
                r.add_term(merged, ca * cb);
            }
        }
        return r;
    }

    friend MultilinearPoly operator*(const BigInt& k, const MultilinearPoly& p) {
        return MultilinearPoly::constant(k) * p;
    }

    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) { return a.terms_ == b.terms_; }

    // Integer value at a full assignment of the polynomial's variables.
    BigInt value(const Assignment& sigma) const {
        BigInt total = 0;
        for (const auto& [m, c] : terms_) {
            bool on = true;
            for (const auto& v : m) {
                auto it = sigma.find(v);
                if (it == sigma.end()) throw UnknownVariable(v);
                if (!it->second.is_one()) {
                    on = false;
                    break;
                }
            }
            if (on) total += c;
        }
        return total;
    }

    // Fixes one variable to a constant.
    MultilinearPoly restrict(const std::string& var, Bit b) const {
        MultilinearPoly r;
        for (const auto& [m, c] : terms_) {
            auto it = std::find(m.begin(), m.end(), var);
            if (it == m.end()) {
                r.add_term(m, c);
            } else if (b.is_one()) {
                Monomial rest;
                rest.reserve(m.size() - 1);
                for (const auto& v : m)
                    if (v != var) rest.push_back(v);
                r.add_term(rest, c);
            }
        }
        return r;
    }

    // e.g. `1 - x`, `x + y - x*y`, `0` for the zero polynomial.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string body;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i) body += "*";
                body += m[i];
            }
            if (m.empty())
                out += mag.str();
            else if (mag == 1)
                out += body;
            else
                out += mag.str() + "*" + body;
        }
        return out;
    }

private:
    void add_term(std::vector<std::string> vars, const BigInt& coeff) {
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(vars), coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

// Boolean value of p at sigma. Throws UnknownVariable for an unassigned
// variable and NotBooleanValued if the integer value is outside {0,1}.
inline Bit poly_eval(const MultilinearPoly& p, const Assignment& sigma) {
    BigInt v = p.value(sigma);
    if (v == 0) return kZero;
    if (v == 1) return kOne;
    throw NotBooleanValued("polynomial " + p.to_string() + " evaluates to " + v.str());
}

namespace detail {

inline MultilinearPoly one_minus(const MultilinearPoly& p) { return MultilinearPoly::constant(1) - p; }
inline MultilinearPoly poly_or(const MultilinearPoly& a, const MultilinearPoly& b) { return a + b - a * b; }
inline MultilinearPoly poly_xor(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a + b - BigInt(2) * (a * b);
}

}  // namespace detail

inline MultilinearPoly arithmetize(const BoolExpr& e) {
    using K = BoolExpr::Kind;
    BoolExpr::check_arity(e.kind(), e.children().size());
    const auto& ch = e.children();
    auto fold = [&](auto op) {
        MultilinearPoly acc = arithmetize(ch[0]);
        for (std::size_t i = 1; i < ch.size(); ++i) acc = op(acc, arithmetize(ch[i]));
        return acc;
    };
    auto product = [](const MultilinearPoly& a, const MultilinearPoly& b) { return a * b; };
    switch (e.kind()) {
        case K::Const:
            return MultilinearPoly::constant(e.bit().value());
        case K::Var:
            return MultilinearPoly::variable(e.name());
        case K::Not:
            return detail::one_minus(arithmetize(ch[0]));
        case K::And:
            return fold(product);
        case K::Or:
            return fold(detail::poly_or);
        case K::Xor:
            return detail::poly_xor(arithmetize(ch[0]), arithmetize(ch[1]));
        case K::Nand:
            return detail::one_minus(fold(product));
        case K::Nor:
            return detail::one_minus(fold(detail::poly_or));
    }
    return {};
}

inline constexpr std::size_t kExhaustiveCheckLimit = 20;

namespace detail {

inline BoolExpr join(BoolExpr::Kind kind, const BoolExpr& a, const BoolExpr& b) {
    std::vector<BoolExpr> parts;
    for (const BoolExpr* x : {&a, &b}) {
        if (x->kind() == kind)
            parts.insert(parts.end(), x->children().begin(), x->children().end());
        else
            parts.push_back(*x);
    }
    return BoolExpr::make(kind, std::move(parts));
}

inline BoolExpr shannon(const MultilinearPoly& p) {
    using K = BoolExpr::Kind;
    if (p.is_constant()) {
        BigInt c = p.constant_term();
        if (c != 0 && c != 1) throw NotBooleanValued("constant " + c.str() + " is not a bit");
        return BoolExpr::constant(Bit(c == 1));
    }
    const std::string x = *p.variables().begin();
    const MultilinearPoly hi = p.restrict(x, kOne);
    const MultilinearPoly lo = p.restrict(x, kZero);
    const BoolExpr pos = BoolExpr::var(x);
    const BoolExpr neg = BoolExpr::negate(pos);
    const auto is = [](const MultilinearPoly& q, int v) { return q.is_constant() && q.constant_term() == v; };

    if (is(hi, 1) && is(lo, 0)) return pos;
    if (is(hi, 0) && is(lo, 1)) return neg;
    if (is(hi, 1)) return join(K::Or, pos, shannon(lo));
    if (is(lo, 1)) return join(K::Or, neg, shannon(hi));
    if (is(hi, 0)) return join(K::And, neg, shannon(lo));
    if (is(lo, 0)) return join(K::And, pos, shannon(hi));
    return join(K::Or, join(K::And, pos, shannon(hi)), join(K::And, neg, shannon(lo)));
}

}  // namespace detail

// Canonical Boolean form of a Boolean-valued polynomial: Shannon expansion on
// the smallest variable name first, with the constant cofactor cases folded
// into plain AND/OR so that `x + y - x*y` comes back as `x | y`.
inline BoolExpr poly_to_bool(const MultilinearPoly& p) {
    auto vars = p.variables();
    if (vars.size() <= kExhaustiveCheckLimit) {
        std::vector<std::string> names(vars.begin(), vars.end());
        Assignment sigma;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << names.size()); ++mask) {
            for (std::size_t i = 0; i < names.size(); ++i) sigma[names[i]] = Bit(((mask >> i) & 1U) != 0);
            BigInt v = p.value(sigma);
            if (v != 0 && v != 1)
                throw NotBooleanValued("polynomial " + p.to_string() + " takes value " + v.str());
        }
    }
    return detail::shannon(p);
}

// ---------------------------------------------------------------------------
// Text form: identifiers, `!`, `&`, `^`, `|`, parentheses, literals 0/1.
// Precedence `!` > `&` > `^` > `|`.
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(BoolExpr::Kind k) {
    using K = BoolExpr::Kind;
    switch (k) {
        case K::Or:
            return 1;
        case K::Xor:
            return 2;
        case K::And:
            return 3;
        default:
            return 4;
    }
}

inline void render(const BoolExpr& e, std::string& out, int min_prec) {
    using K = BoolExpr::Kind;
    auto wrap = [&](int prec, auto body) {
        bool paren = prec < min_prec;
        if (paren) out += "(";
        body();
        if (paren) out += ")";
    };
    auto joined = [&](const char* op, int prec) {
        const auto& ch = e.children();
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (i) out += op;
            render(ch[i], out, prec);
        }
    };
    switch (e.kind()) {
        case K::Const:
            out += e.bit().to_char();
            return;
        case K::Var:
            out += e.name();
            return;
        case K::Not:
            out += "!";
            render(e.children()[0], out, 4);
            return;
        case K::And:
            wrap(3, [&] { joined(" & ", 3); });
            return;
        case K::Or:
            wrap(1, [&] { joined(" | ", 1); });
            return;
        case K::Xor:
            wrap(2, [&] {
                render(e.children()[0], out, 2);
                out += " ^ ";
                render(e.children()[1], out, 3);
            });
            return;
        case K::Nand:
            out += "!(";
            joined(" & ", 3);
            out += ")";
            return;
        case K::Nor:
            out += "!(";
            joined(" | ", 1);
            out += ")";
            return;
    }
}

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    BoolExpr parse() {
        BoolExpr e = parse_or();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(1, pos_ + 1, what); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    template <typename Next>
    BoolExpr nary(BoolExpr::Kind kind, char op, Next next) {
        std::vector<BoolExpr> parts{(this->*next)()};
        while (accept(op)) parts.push_back((this->*next)());
        if (parts.size() == 1) return parts.front();
        return BoolExpr::make(kind, std::move(parts));
    }

    BoolExpr parse_or() { return nary(BoolExpr::Kind::Or, '|', &ExprParser::parse_xor); }

    BoolExpr parse_xor() {
        BoolExpr lhs = parse_and();
        while (accept('^')) lhs = BoolExpr::exclusive(lhs, parse_and());
        return lhs;
    }

    BoolExpr parse_and() { return nary(BoolExpr::Kind::And, '&', &ExprParser::parse_unary); }

    BoolExpr parse_unary() {
        if (accept('!')) return BoolExpr::negate(parse_unary());
        return parse_primary();
    }

    BoolExpr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BoolExpr e = parse_or();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            return BoolExpr::constant(Bit(c == '1'));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return BoolExpr::var(std::string(text_.substr(start, pos_ - start)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string to_string(const BoolExpr& e) {
    std::string out;
    detail::render(e, out, 0);
    return out;
}

inline BoolExpr parse_bool_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace hazard
