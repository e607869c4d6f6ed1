#pragma once

// Binary piecewise-constant signals.
//
// A Waveform is an initial level (the value as t -> -inf) followed by a
// strictly increasing list of toggle instants. In Heaviside form this is
//
//     initial + sum_i s_i * h(t - t_i),   s_i alternating, h(0) = 1,
//
// so the value at a step instant is already the post-transition value.

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hazard/error.hpp"
#include "hazard/expr.hpp"
#include "hazard/symbolic_time.hpp"

namespace hazard {

class Waveform {
public:
    Waveform() = default;

    static Waveform constant(Bit level) { return Waveform(level, {}); }

    // h(t - at): low, then high from `at` on.
    static Waveform step(SymbolicTime at) { return Waveform(kZero, {std::move(at)}); }

    // Canonical waveform from an already strictly increasing toggle list.
    static Waveform from_steps(Bit initial, std::vector<SymbolicTime> steps) {
        for (std::size_t i = 1; i < steps.size(); ++i) {
            auto ord = compare_times(steps[i - 1], steps[i]);
            if (ord == TimeOrder::Incomparable)
                throw AmbiguousOrdering(steps[i - 1].to_string(), steps[i].to_string());
            if (ord != TimeOrder::Less)
                throw Error("waveform steps must be strictly increasing: " + steps[i - 1].to_string() +
                            " then " + steps[i].to_string());
        }
        return Waveform(initial, std::move(steps));
    }

    // Normalizes an arbitrary toggle multiset: sorts it under the symbolic
    // order and cancels coincident toggles pairwise.
    static Waveform from_toggles(Bit initial, std::vector<SymbolicTime> toggles) {
        for (std::size_t i = 1; i < toggles.size(); ++i) {
            for (std::size_t j = i; j > 0; --j) {
                auto ord = compare_times(toggles[j - 1], toggles[j]);
                if (ord == TimeOrder::Incomparable)
                    throw AmbiguousOrdering(toggles[j - 1].to_string(), toggles[j].to_string());
                if (ord != TimeOrder::Greater) break;
                std::swap(toggles[j - 1], toggles[j]);
            }
        }
        std::vector<SymbolicTime> steps;
        for (std::size_t i = 0; i < toggles.size();) {
            std::size_t j = i;
            while (j < toggles.size() && toggles[j] == toggles[i]) ++j;
            if ((j - i) % 2 == 1) steps.push_back(toggles[i]);
            i = j;
        }
        return Waveform(initial, std::move(steps));
    }

    Bit initial() const { return initial_; }
    Bit final_value() const { return steps_.size() % 2 == 0 ? initial_ : !initial_; }
    const std::vector<SymbolicTime>& steps() const { return steps_; }

    friend bool operator==(const Waveform&, const Waveform&) = default;

private:
    Waveform(Bit initial, std::vector<SymbolicTime> steps) : initial_(initial), steps_(std::move(steps)) {}

    Bit initial_ = kZero;
    std::vector<SymbolicTime> steps_;
};

using SignalWaveforms = std::map<std::string, Waveform>;

inline std::size_t transition_count(const Waveform& w) { return w.steps().size(); }

inline Waveform wf_not(const Waveform& w) { return Waveform::from_steps(!w.initial(), w.steps()); }

// Pointwise combination. Step lists are merged under compare_times; every
// adjacent pair in the merged list is compared directly, so the merged order
// holds for all positive delay values or AmbiguousOrdering is raised.
inline Waveform combine(const Waveform& a, const Waveform& b, const std::function<Bit(Bit, Bit)>& op) {
    Bit va = a.initial();
    Bit vb = b.initial();
    Bit current = op(va, vb);
    const Bit initial = current;
    std::vector<SymbolicTime> out;

    const auto& sa = a.steps();
    const auto& sb = b.steps();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < sa.size() || j < sb.size()) {
        const SymbolicTime* at = nullptr;
        if (j == sb.size()) {
            at = &sa[i++];
            va = !va;
        } else if (i == sa.size()) {
            at = &sb[j++];
            vb = !vb;
        } else {
            switch (compare_times(sa[i], sb[j])) {
                case TimeOrder::Less:
                    at = &sa[i++];
                    va = !va;
                    break;
                case TimeOrder::Greater:
                    at = &sb[j++];
                    vb = !vb;
                    break;
                case TimeOrder::Equal:
                    at = &sa[i++];
                    ++j;
                    va = !va;
                    vb = !vb;
                    break;
                case TimeOrder::Incomparable:
                    throw AmbiguousOrdering(sa[i].to_string(), sb[j].to_string());
            }
        }
        Bit next = op(va, vb);
        if (next != current) {
            out.push_back(*at);
            current = next;
        }
    }
    return Waveform::from_steps(initial, std::move(out));
}

inline Waveform wf_and(const Waveform& a, const Waveform& b) {
    return combine(a, b, [](Bit x, Bit y) { return Bit(x.is_one() && y.is_one()); });
}

inline Waveform wf_or(const Waveform& a, const Waveform& b) {
    return combine(a, b, [](Bit x, Bit y) { return Bit(x.is_one() || y.is_one()); });
}

inline Waveform wf_xor(const Waveform& a, const Waveform& b) {
    return combine(a, b, [](Bit x, Bit y) { return Bit(x != y); });
}

inline Waveform wf_delay(const Waveform& w, const SymbolicTime& d) {
    if (d.constant() < 0) throw NegativeDelay("negative delay " + d.to_string());
    std::vector<SymbolicTime> shifted;
    shifted.reserve(w.steps().size());
    for (const auto& s : w.steps()) shifted.push_back(s + d);
    return Waveform::from_steps(w.initial(), std::move(shifted));
}

// Product of unit steps h(t - t_1) * ... * h(t - t_n) = h(t - max t_i).
// The times must be pairwise comparable.
inline Waveform step_product(std::span<const SymbolicTime> times) {
    if (times.empty()) return Waveform::constant(kOne);
    Waveform acc = Waveform::step(times[0]);
    for (std::size_t i = 1; i < times.size(); ++i) acc = wf_and(acc, Waveform::step(times[i]));
    return acc;
}

inline Bit wf_eval(const Waveform& w, const Rational& t, const DelayValues& delays) {
    bool value = w.initial().is_one();
    for (const auto& s : w.steps()) {
        if (s.evaluate(delays) <= t) value = !value;
    }
    return Bit(value);
}

// Symbols referenced by any step instant.
inline std::set<std::string> symbols_of(const Waveform& w) {
    std::set<std::string> out;
    for (const auto& s : w.steps()) s.collect_symbols(out);
    return out;
}

// Signed Heaviside terms: +1 for a rising step, -1 for a falling one.
inline std::vector<std::pair<int, SymbolicTime>> heaviside_terms(const Waveform& w) {
    std::vector<std::pair<int, SymbolicTime>> terms;
    bool level = w.initial().is_one();
    for (const auto& s : w.steps()) {
        terms.emplace_back(level ? -1 : +1, s);
        level = !level;
    }
    return terms;
}

// `h(t)`, `h(t-5)`, `h(t-tau)`, `h(t-(5+2*tau))`, `h(t+3)`.
inline std::string heaviside_text(const SymbolicTime& at) {
    if (at.is_zero()) return "h(t)";
    if (at.is_constant() && at.constant() < 0) return "h(t+" + format_rational(Rational(-at.constant())) + ")";
    if (at.summand_count() == 1) return "h(t-" + at.to_string() + ")";
    return "h(t-(" + at.to_string() + "))";
}

// `1 - h(t-(5+2*tau)) + h(t-(5+3*tau))`: the constant first, then terms in
// increasing time order. A zero constant is omitted unless nothing follows.
inline std::string to_string(const Waveform& w) {
    std::string out;
    if (w.initial().is_one() || w.steps().empty()) out = w.initial().is_one() ? "1" : "0";
    for (const auto& [sign, at] : heaviside_terms(w)) {
        if (out.empty())
            out = sign < 0 ? "-" : "";
        else
            out += sign < 0 ? " - " : " + ";
        out += heaviside_text(at);
    }
    return out;
}

}  // namespace hazard
