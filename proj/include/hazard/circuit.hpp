#pragma once

// Gate-level netlists. Every gate is a pure delay on each input followed by
// an ideal (zero-delay) logic function.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hazard/error.hpp"
#include "hazard/expr.hpp"
#include "hazard/symbolic_time.hpp"
#include "hazard/waveform.hpp"

namespace hazard {

enum class GateKind { Not, And, Or, Nand, Nor, Xor };

inline std::string_view gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::Not:
            return "NOT";
        case GateKind::And:
            return "AND";
        case GateKind::Or:
            return "OR";
        case GateKind::Nand:
            return "NAND";
        case GateKind::Nor:
            return "NOR";
        case GateKind::Xor:
            return "XOR";
    }
    return "?";
}

inline std::optional<GateKind> parse_gate_kind(std::string_view text) {
    std::string upper(text);
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (GateKind k : {GateKind::Not, GateKind::And, GateKind::Or, GateKind::Nand, GateKind::Nor, GateKind::Xor})
        if (gate_kind_name(k) == upper) return k;
    return std::nullopt;
}

inline Bit apply_gate(GateKind kind, std::span<const Bit> in) {
    auto ones = static_cast<std::size_t>(std::count(in.begin(), in.end(), kOne));
    switch (kind) {
        case GateKind::Not:
            return !in[0];
        case GateKind::And:
            return Bit(ones == in.size());
        case GateKind::Or:
            return Bit(ones > 0);
        case GateKind::Nand:
            return Bit(ones != in.size());
        case GateKind::Nor:
            return Bit(ones == 0);
        case GateKind::Xor:
            return Bit(ones % 2 == 1);
    }
    return kZero;
}

struct Gate {
    std::string name;
    GateKind kind = GateKind::And;
    std::vector<std::string> inputs;
    std::vector<SymbolicTime> input_delays;

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct OutputPort {
    std::string name;
    std::string driver;

    friend bool operator==(const OutputPort&, const OutputPort&) = default;
};

struct Netlist {
    std::vector<std::string> primary_inputs;
    std::vector<Gate> gates;
    std::vector<OutputPort> outputs;

    const Gate* find_gate(std::string_view name) const {
        for (const auto& g : gates)
            if (g.name == name) return &g;
        return nullptr;
    }

    bool is_input(std::string_view name) const {
        return std::find(primary_inputs.begin(), primary_inputs.end(), name) != primary_inputs.end();
    }

    bool has_signal(std::string_view name) const { return is_input(name) || find_gate(name) != nullptr; }

    const OutputPort* find_output(std::string_view name) const {
        for (const auto& o : outputs)
            if (o.name == name) return &o;
        return nullptr;
    }

    // Every delay symbol referenced by some gate input.
    std::set<std::string> delay_symbols() const {
        std::set<std::string> out;
        for (const auto& g : gates)
            for (const auto& d : g.input_delays) d.collect_symbols(out);
        return out;
    }

    friend bool operator==(const Netlist&, const Netlist&) = default;
};

inline void check_gate_arity(const Gate& g) {
    const std::size_t n = g.inputs.size();
    const bool ok = g.kind == GateKind::Not ? n == 1 : g.kind == GateKind::Xor ? n == 2 : n >= 2;
    if (!ok)
        throw ArityError("gate " + g.name + ": " + std::string(gate_kind_name(g.kind)) + " cannot take " +
                         std::to_string(n) + " input(s)");
    if (g.input_delays.size() != n)
        throw ArityError("gate " + g.name + ": " + std::to_string(g.input_delays.size()) + " delays for " +
                         std::to_string(n) + " inputs");
    for (const auto& d : g.input_delays)
        if (d.constant() < 0) throw NegativeDelay("gate " + g.name + ": negative delay " + d.to_string());
}

// Gates in dependency order; among ready gates the earliest-declared goes
// first, so an already ordered list comes back unchanged.
inline std::vector<const Gate*> topo_order(const Netlist& n) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n.gates.size(); ++i) index.emplace(n.gates[i].name, i);

    std::vector<std::size_t> pending(n.gates.size(), 0);
    std::vector<std::vector<std::size_t>> consumers(n.gates.size());
    for (std::size_t i = 0; i < n.gates.size(); ++i) {
        for (const auto& in : n.gates[i].inputs) {
            auto it = index.find(in);
            if (it == index.end()) continue;
            ++pending[i];
            consumers[it->second].push_back(i);
        }
    }

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n.gates.size(); ++i)
        if (pending[i] == 0) ready.push(i);

    std::vector<const Gate*> order;
    order.reserve(n.gates.size());
    while (!ready.empty()) {
        std::size_t g = ready.top();
        ready.pop();
        order.push_back(&n.gates[g]);
        for (std::size_t c : consumers[g])
            if (--pending[c] == 0) ready.push(c);
    }
    if (order.size() != n.gates.size()) {
        std::string stuck;
        for (std::size_t i = 0; i < n.gates.size(); ++i)
            if (pending[i] != 0) stuck += (stuck.empty() ? "" : ", ") + n.gates[i].name;
        throw CycleDetected("combinational cycle through gates: " + stuck);
    }
    return order;
}

// Checks every structural invariant; throws on the first violation.
inline void validate(const Netlist& n) {
    std::set<std::string> names;
    for (const auto& in : n.primary_inputs)
        if (!names.insert(in).second) throw DuplicateName("duplicate signal name '" + in + "'");
    for (const auto& g : n.gates)
        if (!names.insert(g.name).second) throw DuplicateName("duplicate signal name '" + g.name + "'");
    for (const auto& g : n.gates) {
        check_gate_arity(g);
        for (const auto& in : g.inputs)
            if (!names.count(in)) throw UndefinedSignal("gate " + g.name + " reads undefined signal '" + in + "'");
    }
    std::set<std::string> outs;
    for (const auto& o : n.outputs) {
        if (!outs.insert(o.name).second) throw DuplicateName("duplicate output name '" + o.name + "'");
        if (!names.count(o.driver))
            throw UndefinedSignal("output " + o.name + " driven by undefined signal '" + o.driver + "'");
    }
    (void)topo_order(n);
}

// Replaces the assigned delay symbols by their values.
inline Netlist bind_delays(Netlist n, const DelayValues& values) {
    for (auto& g : n.gates)
        for (auto& d : g.input_delays) d = d.substitute(values);
    return n;
}

// Zero-delay Boolean function of a signal as an expression over the primary inputs.
inline BoolExpr cone_expression(const Netlist& n, const std::string& signal) {
    std::map<std::string, BoolExpr> memo;
    std::function<BoolExpr(const std::string&)> build = [&](const std::string& s) -> BoolExpr {
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        if (n.is_input(s)) return memo.emplace(s, BoolExpr::var(s)).first->second;
        const Gate* g = n.find_gate(s);
        if (!g) throw UndefinedSignal("undefined signal '" + s + "'");
        std::vector<BoolExpr> ch;
        for (const auto& in : g->inputs) ch.push_back(build(in));
        using K = BoolExpr::Kind;
        K kind = K::And;
        switch (g->kind) {
            case GateKind::Not:
                kind = K::Not;
                break;
            case GateKind::And:
                kind = K::And;
                break;
            case GateKind::Or:
                kind = K::Or;
                break;
            case GateKind::Nand:
                kind = K::Nand;
                break;
            case GateKind::Nor:
                kind = K::Nor;
                break;
            case GateKind::Xor:
                kind = K::Xor;
                break;
        }
        return memo.emplace(s, BoolExpr::make(kind, std::move(ch))).first->second;
    };
    return build(signal);
}

// ---------------------------------------------------------------------------
// Stimulus
// ---------------------------------------------------------------------------

struct Stimulus {
    Assignment from_vector;
    Assignment to_vector;
    Rational switch_time = 0;

    // Bit strings in input declaration order, first character = first input.
    static Stimulus from_bits(const Netlist& n, std::string_view from, std::string_view to, Rational at) {
        auto decode = [&](std::string_view bits, const char* which) {
            if (bits.size() != n.primary_inputs.size())
                throw Error(std::string("--") + which + " has " + std::to_string(bits.size()) +
                            " bits but the netlist has " + std::to_string(n.primary_inputs.size()) + " inputs");
            Assignment v;
            for (std::size_t i = 0; i < bits.size(); ++i) {
                if (bits[i] != '0' && bits[i] != '1')
                    throw Error(std::string("--") + which + " must contain only 0 and 1");
                v[n.primary_inputs[i]] = Bit(bits[i] == '1');
            }
            return v;
        };
        return {decode(from, "from"), decode(to, "to"), std::move(at)};
    }

    // Vector as an integer, first declared input most significant.
    static std::uint64_t encode(const Netlist& n, const Assignment& v) {
        std::uint64_t x = 0;
        for (const auto& in : n.primary_inputs) x = (x << 1) | static_cast<std::uint64_t>(v.at(in).value());
        return x;
    }

    static std::string bits(const Netlist& n, const Assignment& v) {
        std::string s;
        for (const auto& in : n.primary_inputs) s += v.at(in).to_char();
        return s;
    }
};

inline void validate(const Netlist& n, const Stimulus& s) {
    for (const Assignment* v : {&s.from_vector, &s.to_vector}) {
        if (v->size() != n.primary_inputs.size()) throw Error("stimulus must assign exactly the primary inputs");
        for (const auto& in : n.primary_inputs)
            if (!v->count(in)) throw Error("stimulus does not assign input '" + in + "'");
    }
}

inline std::map<std::string, Waveform> stimulus_waveforms(const Netlist& n, const Stimulus& s) {
    validate(n, s);
    std::map<std::string, Waveform> out;
    for (const auto& in : n.primary_inputs) {
        Bit a = s.from_vector.at(in);
        Bit b = s.to_vector.at(in);
        out.emplace(in, a == b ? Waveform::constant(a) : Waveform::from_steps(a, {SymbolicTime(s.switch_time)}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   input  X1 X2 X3 X4
//   gate   N1 NOT X3            delay=tau
//   gate   A1 AND X1 X2         delays=tau,2*tau
//   output Y = O1
// ---------------------------------------------------------------------------

inline const SymbolicTime& default_delay() {
    static const SymbolicTime tau = SymbolicTime::symbol("tau");
    return tau;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t col;
};

inline std::vector<Token> split_line(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace detail

inline Netlist parse_netlist(std::string_view text) {
    Netlist n;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto toks = detail::split_line(line);
        if (toks.empty()) continue;
        auto fail = [&](const detail::Token& t, const std::string& what) -> void {
            throw SyntaxError(line_no, t.col, what);
        };
        auto need_ident = [&](const detail::Token& t) {
            if (!detail::is_identifier(t.text)) fail(t, "expected identifier, got '" + std::string(t.text) + "'");
            return std::string(t.text);
        };

        const auto& kw = toks[0];
        if (kw.text == "input") {
            if (toks.size() < 2) fail(kw, "input declaration lists no signals");
            for (std::size_t i = 1; i < toks.size(); ++i) n.primary_inputs.push_back(need_ident(toks[i]));
        } else if (kw.text == "output") {
            // output NAME = SIGNAL, with or without spaces around '='
            std::string joined;
            for (std::size_t i = 1; i < toks.size(); ++i) joined += std::string(toks[i].text) + " ";
            auto eq = joined.find('=');
            if (toks.size() < 2 || eq == std::string::npos) fail(kw, "expected 'output NAME = SIGNAL'");
            auto lhs = detail::split_line(std::string_view(joined).substr(0, eq));
            auto rhs = detail::split_line(std::string_view(joined).substr(eq + 1));
            if (lhs.size() != 1 || rhs.size() != 1) fail(toks[1], "expected 'output NAME = SIGNAL'");
            const auto& first = toks[1];
            if (!detail::is_identifier(lhs[0].text)) fail(first, "bad output name '" + std::string(lhs[0].text) + "'");
            if (!detail::is_identifier(rhs[0].text))
                fail(toks.back(), "bad output driver '" + std::string(rhs[0].text) + "'");
            n.outputs.push_back({std::string(lhs[0].text), std::string(rhs[0].text)});
        } else if (kw.text == "gate") {
            if (toks.size() < 4) fail(kw, "expected 'gate NAME KIND INPUT...'");
            Gate g;
            g.name = need_ident(toks[1]);
            auto kind = parse_gate_kind(toks[2].text);
            if (!kind) fail(toks[2], "unknown gate kind '" + std::string(toks[2].text) + "'");
            g.kind = *kind;
            std::optional<SymbolicTime> shared;
            std::optional<std::vector<SymbolicTime>> positional;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                const auto& t = toks[i];
                auto eq = t.text.find('=');
                if (eq == std::string_view::npos) {
                    if (shared || positional) fail(t, "gate inputs must precede delay attributes");
                    g.inputs.push_back(need_ident(t));
                    continue;
                }
                auto key = t.text.substr(0, eq);
                auto value = t.text.substr(eq + 1);
                try {
                    if (key == "delay") {
                        shared = parse_symbolic_time(value);
                    } else if (key == "delays") {
                        std::vector<SymbolicTime> list;
                        std::size_t p = 0;
                        while (true) {
                            auto comma = value.find(',', p);
                            list.push_back(parse_symbolic_time(value.substr(p, comma - p)));
                            if (comma == std::string_view::npos) break;
                            p = comma + 1;
                        }
                        positional = std::move(list);
                    } else {
                        fail(t, "unknown gate attribute '" + std::string(key) + "'");
                    }
                } catch (const SyntaxError&) {
                    throw;
                } catch (const Error& e) {
                    throw SyntaxError(line_no, t.col + eq + 1, e.what());
                }
            }
            if (g.inputs.empty()) fail(toks[2], "gate has no inputs");
            if (positional) {
                if (positional->size() != g.inputs.size())
                    throw ArityError("gate " + g.name + ": delays= lists " + std::to_string(positional->size()) +
                                     " values for " + std::to_string(g.inputs.size()) + " inputs");
                g.input_delays = std::move(*positional);
            } else {
                g.input_delays.assign(g.inputs.size(), shared.value_or(default_delay()));
            }
            n.gates.push_back(std::move(g));
        } else {
            fail(kw, "unknown statement '" + std::string(kw.text) + "'");
        }
    }
    validate(n);
    return n;
}

inline std::string print_netlist(const Netlist& n) {
    std::ostringstream os;
    if (!n.primary_inputs.empty()) {
        os << "input";
        for (const auto& in : n.primary_inputs) os << ' ' << in;
        os << '\n';
    }
    for (const auto& g : n.gates) {
        os << "gate " << g.name << ' ' << gate_kind_name(g.kind);
        for (const auto& in : g.inputs) os << ' ' << in;
        bool uniform = std::all_of(g.input_delays.begin(), g.input_delays.end(),
                                   [&](const SymbolicTime& d) { return d == g.input_delays.front(); });
        if (uniform) {
            os << " delay=" << g.input_delays.front().to_string();
        } else {
            os << " delays=";
            for (std::size_t i = 0; i < g.input_delays.size(); ++i) os << (i ? "," : "") << g.input_delays[i].to_string();
        }
        os << '\n';
    }
    for (const auto& o : n.outputs) os << "output " << o.name << " = " << o.driver << '\n';
    return os.str();
}

}  // namespace hazard
