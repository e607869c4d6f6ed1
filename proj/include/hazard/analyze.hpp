#pragma once

// Symbolic hazard search.
//
// Input transitions become Heaviside steps, each gate input is shifted by
// its delay, the gate function is applied pointwise, and the resulting output
// waveform is compared with the zero-delay (ideal) behaviour: any transition
// beyond the ideal 0 or 1 is a failure.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "hazard/circuit.hpp"
#include "hazard/error.hpp"
#include "hazard/expr.hpp"
#include "hazard/waveform.hpp"

namespace hazard {

inline Waveform apply_gate(GateKind kind, std::span<const Waveform> in) {
    auto fold = [&](auto op) {
        Waveform acc = in[0];
        for (std::size_t i = 1; i < in.size(); ++i) acc = op(acc, in[i]);
        return acc;
    };
    switch (kind) {
        case GateKind::Not:
            return wf_not(in[0]);
        case GateKind::And:
            return fold(wf_and);
        case GateKind::Or:
            return fold(wf_or);
        case GateKind::Nand:
            return wf_not(fold(wf_and));
        case GateKind::Nor:
            return wf_not(fold(wf_or));
        case GateKind::Xor:
            return wf_xor(in[0], in[1]);
    }
    return {};
}

// Waveform of every primary input and gate output.
inline SignalWaveforms propagate(const Netlist& n, const SignalWaveforms& inputs) {
    SignalWaveforms sig;
    for (const auto& in : n.primary_inputs) {
        auto it = inputs.find(in);
        if (it == inputs.end()) throw Error("no waveform for primary input '" + in + "'");
        sig.emplace(in, it->second);
    }
    for (const Gate* g : topo_order(n)) {
        std::vector<Waveform> delayed;
        delayed.reserve(g->inputs.size());
        try {
            for (std::size_t i = 0; i < g->inputs.size(); ++i)
                delayed.push_back(wf_delay(sig.at(g->inputs[i]), g->input_delays[i]));
            sig.insert_or_assign(g->name, apply_gate(g->kind, delayed));
        } catch (const AmbiguousOrdering& e) {
            throw e.at_gate(g->name);
        }
    }
    return sig;
}

inline const std::string& output_driver(const Netlist& n, const std::string& out) {
    const OutputPort* port = n.find_output(out);
    if (!port) throw UndefinedSignal("no output named '" + out + "'");
    return port->driver;
}

inline MultilinearPoly output_polynomial(const Netlist& n, const std::string& out) {
    return arithmetize(cone_expression(n, output_driver(n, out)));
}

inline Bit ideal_output(const Netlist& n, const Assignment& v, const std::string& out) {
    return poly_eval(output_polynomial(n, out), v);
}

enum class HazardClass { None, Static0, Static1, Dynamic };

inline std::string_view class_key(HazardClass c) {
    switch (c) {
        case HazardClass::None:
            return "none";
        case HazardClass::Static0:
            return "static0";
        case HazardClass::Static1:
            return "static1";
        case HazardClass::Dynamic:
            return "dynamic";
    }
    return "?";
}

inline std::string_view class_label(HazardClass c) {
    switch (c) {
        case HazardClass::None:
            return "no hazard";
        case HazardClass::Static0:
            return "STATIC-0";
        case HazardClass::Static1:
            return "STATIC-1";
        case HazardClass::Dynamic:
            return "DYNAMIC";
    }
    return "?";
}

struct Pulse {
    SymbolicTime start;
    SymbolicTime end;
    SymbolicTime width;

    friend bool operator==(const Pulse&, const Pulse&) = default;
};

struct HazardReport {
    std::string output_name;
    HazardClass classification = HazardClass::None;
    Bit ideal_before;
    Bit ideal_after;
    Waveform waveform;
    std::vector<Pulse> pulses;
    std::string expression_text;
    SignalWaveforms signals;
};

// Spurious excursions of an output waveform. For a held level every step
// pair is an excursion; for a switching output the last step is the real
// transition and the pairs before it are premature excursions.
inline std::vector<Pulse> extract_pulses(const Waveform& w) {
    std::vector<Pulse> pulses;
    const auto& s = w.steps();
    for (std::size_t i = 0; i + 1 < s.size(); i += 2) pulses.push_back({s[i], s[i + 1], elapsed(s[i], s[i + 1])});
    return pulses;
}

inline HazardClass classify_waveform(const Waveform& w, Bit before, Bit after) {
    const std::size_t expected = before == after ? 0 : 1;
    const std::size_t actual = transition_count(w);
    if (actual == expected) return HazardClass::None;
    if (before == after) return before.is_one() ? HazardClass::Static1 : HazardClass::Static0;
    return HazardClass::Dynamic;
}

namespace detail {

inline HazardReport build_report(const Netlist& n, const Stimulus& s, const std::string& out,
                                 const MultilinearPoly& poly) {
    const std::string& driver = output_driver(n, out);
    HazardReport r;
    r.output_name = out;
    r.signals = propagate(n, stimulus_waveforms(n, s));
    r.waveform = r.signals.at(driver);
    r.ideal_before = poly_eval(poly, s.from_vector);
    r.ideal_after = poly_eval(poly, s.to_vector);
    r.classification = classify_waveform(r.waveform, r.ideal_before, r.ideal_after);
    if (r.classification != HazardClass::None) r.pulses = extract_pulses(r.waveform);
    r.expression_text = to_string(r.waveform);
    return r;
}

}  // namespace detail

inline HazardReport classify(const Netlist& n, const Stimulus& s, const std::string& out) {
    return detail::build_report(n, s, out, output_polynomial(n, out));
}

enum class EnumerationMode { Hamming1, AllPairs };

inline constexpr std::size_t kMaxAllPairsInputs = 16;
inline constexpr std::size_t kMaxHamming1Inputs = 24;

struct TransitionHazard {
    Stimulus stimulus;
    HazardReport report;
};

// All hazardous transitions of `out`, ordered by (from, to) as integers with
// the first declared input most significant. Switch time is 0.
inline std::vector<TransitionHazard> enumerate_transitions(const Netlist& n, const std::string& out,
                                                          EnumerationMode mode, unsigned threads = 0) {
    const std::size_t k = n.primary_inputs.size();
    if (mode == EnumerationMode::AllPairs && k > kMaxAllPairsInputs)
        throw TooManyInputs("all-pairs enumeration supports at most " + std::to_string(kMaxAllPairsInputs) +
                            " inputs, netlist has " + std::to_string(k));
    if (k > kMaxHamming1Inputs)
        throw TooManyInputs("enumeration supports at most " + std::to_string(kMaxHamming1Inputs) + " inputs");

    const MultilinearPoly poly = output_polynomial(n, out);
    const std::uint64_t count = std::uint64_t{1} << k;
    auto vector_of = [&](std::uint64_t x) {
        Assignment v;
        for (std::size_t i = 0; i < k; ++i) v[n.primary_inputs[i]] = Bit(((x >> (k - 1 - i)) & 1U) != 0);
        return v;
    };

    auto scan_from = [&](std::uint64_t from) {
        std::vector<TransitionHazard> found;
        const Assignment fv = vector_of(from);
        auto visit = [&](std::uint64_t to) {
            Stimulus s{fv, vector_of(to), 0};
            HazardReport r = detail::build_report(n, s, out, poly);
            if (r.classification != HazardClass::None) found.push_back({std::move(s), std::move(r)});
        };
        if (mode == EnumerationMode::AllPairs) {
            for (std::uint64_t to = 0; to < count; ++to)
                if (to != from) visit(to);
        } else {
            // ascending `to` order: highest bit position first flips the largest weight
            std::vector<std::uint64_t> targets;
            for (std::size_t b = 0; b < k; ++b) targets.push_back(from ^ (std::uint64_t{1} << b));
            std::sort(targets.begin(), targets.end());
            for (auto to : targets) visit(to);
        }
        return found;
    };

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));

    std::vector<std::vector<TransitionHazard>> per_from(count);
    auto worker = [&](unsigned id) {
        for (std::uint64_t from = id; from < count; from += threads) per_from[from] = scan_from(from);
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned id = 0; id < threads; ++id) jobs.push_back(std::async(std::launch::async, worker, id));
        for (auto& j : jobs) j.get();
    }

    std::vector<TransitionHazard> all;
    for (auto& chunk : per_from)
        for (auto& h : chunk) all.push_back(std::move(h));
    return all;
}

}  // namespace hazard
