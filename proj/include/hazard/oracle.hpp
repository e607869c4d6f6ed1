#pragma once

// Concrete-delay event-driven gate simulator.
//
// Shares only the netlist data model with the symbolic engine: gate functions
// are evaluated directly on bits and time is a concrete rational, so a trace
// is an independent account of what the circuit does.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hazard/circuit.hpp"
#include "hazard/error.hpp"
#include "hazard/rational.hpp"
#include "hazard/waveform.hpp"

namespace hazard {

enum class DelayModel { Pure, Inertial };

struct Event {
    Rational time;
    std::string signal;
    Bit new_value;

    friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
    Rational start_time = 0;
    std::map<std::string, Bit> initial_values;
    std::map<std::string, std::vector<Event>> events;
    std::map<std::string, Bit> final_values;
    Rational settle_time = 0;

    Bit value_at(const std::string& signal, const Rational& t) const {
        Bit v = initial_values.at(signal);
        if (auto it = events.find(signal); it != events.end())
            for (const auto& e : it->second) {
                if (e.time > t) break;
                v = e.new_value;
            }
        return v;
    }

    std::size_t event_count() const {
        std::size_t total = 0;
        for (const auto& [s, list] : events) total += list.size();
        return total;
    }
};

namespace detail {

class Simulator {
public:
    Simulator(const Netlist& n, const DelayValues& delays, DelayModel model) : netlist_(n), model_(model) {
        for (const auto& [sym, v] : delays)
            if (v <= 0) throw NonPositiveDelay("delay symbol '" + sym + "' must be positive, got " + format_rational(v));

        order_ = topo_order(n);

        elements_.resize(order_.size());
        for (std::size_t gi = 0; gi < order_.size(); ++gi) {
            const Gate& g = *order_[gi];
            for (std::size_t k = 0; k < g.inputs.size(); ++k) {
                Rational d = g.input_delays[k].evaluate(delays);
                if (d < 0) throw NegativeDelay("gate " + g.name + " has a negative delay");
                elements_[gi].push_back(Element{d, kZero, std::nullopt});
                fanout_[g.inputs[k]].push_back({gi, k});
            }
        }
    }

    Trace run(const Stimulus& s) {
        validate(netlist_, s);
        Trace tr;
        tr.start_time = s.switch_time;
        tr.settle_time = s.switch_time;

        settle(s.from_vector);
        for (const auto& in : netlist_.primary_inputs) tr.initial_values[in] = s.from_vector.at(in);
        for (std::size_t gi = 0; gi < order_.size(); ++gi) tr.initial_values[order_[gi]->name] = outputs_[gi];
        values_ = tr.initial_values;

        std::vector<std::string> changed_inputs;
        for (const auto& in : netlist_.primary_inputs)
            if (s.from_vector.at(in) != s.to_vector.at(in)) changed_inputs.push_back(in);

        if (!changed_inputs.empty()) {
            dirty_.assign(order_.size(), false);
            const Rational t0 = s.switch_time;
            for (const auto& in : changed_inputs) emit(tr, in, s.to_vector.at(in), t0);
            sweep(tr, t0);
            while (!queue_.empty()) {
                const Rational t = std::get<0>(queue_.top());
                tr.settle_time = t;
                dirty_.assign(order_.size(), false);
                while (!queue_.empty() && std::get<0>(queue_.top()) == t) {
                    auto [time, gate_name, seq, gi, k, value, generation] = queue_.top();
                    queue_.pop();
                    Element& el = elements_[gi][k];
                    if (generation != el_generation(gi, k)) continue;  // cancelled by inertial filter
                    el.value = value;
                    el.pending.reset();
                    dirty_[gi] = true;
                }
                sweep(tr, t);
            }
        }
        tr.final_values = values_;
        return tr;
    }

private:
    struct Element {
        Rational delay;
        Bit value;
        std::optional<Rational> pending;  // maturity time of the scheduled change
    };

    struct Sink {
        std::size_t gate;
        std::size_t input;
    };

    // (time, consuming gate name, sequence, gate index, input index, value, generation)
    using Entry = std::tuple<Rational, std::string, std::uint64_t, std::size_t, std::size_t, Bit, std::uint64_t>;
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) >
                   std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
        }
    };

    std::uint64_t& el_generation(std::size_t gi, std::size_t k) { return generations_[{gi, k}]; }

    void settle(const Assignment& v) {
        std::map<std::string, Bit> val(v.begin(), v.end());
        outputs_.assign(order_.size(), kZero);
        for (std::size_t gi = 0; gi < order_.size(); ++gi) {
            const Gate& g = *order_[gi];
            std::vector<Bit> in;
            for (std::size_t k = 0; k < g.inputs.size(); ++k) {
                Bit b = val.at(g.inputs[k]);
                elements_[gi][k].value = b;
                elements_[gi][k].pending.reset();
                in.push_back(b);
            }
            outputs_[gi] = apply_gate(g.kind, std::span<const Bit>(in));
            val[g.name] = outputs_[gi];
        }
    }

    // Records a signal change at t and feeds it to every delay element it drives.
    void emit(Trace& tr, const std::string& signal, Bit v, const Rational& t) {
        tr.events[signal].push_back({t, signal, v});
        values_[signal] = v;
        auto it = fanout_.find(signal);
        if (it == fanout_.end()) return;
        for (const Sink& sink : it->second) {
            Element& el = elements_[sink.gate][sink.input];
            if (el.delay == 0) {
                el.value = v;
                dirty_[sink.gate] = true;
                continue;
            }
            if (model_ == DelayModel::Inertial && el.pending && *el.pending > t) {
                // the source returned before the previous change matured: swallow both
                ++el_generation(sink.gate, sink.input);
                el.pending.reset();
                continue;
            }
            Rational at = t + el.delay;
            el.pending = at;
            queue_.emplace(at, order_[sink.gate]->name, seq_++, sink.gate, sink.input, v,
                           el_generation(sink.gate, sink.input));
        }
    }

    void sweep(Trace& tr, const Rational& t) {
        for (std::size_t gi = 0; gi < order_.size(); ++gi) {
            if (!dirty_[gi]) continue;
            const Gate& g = *order_[gi];
            std::vector<Bit> in;
            in.reserve(elements_[gi].size());
            for (const auto& el : elements_[gi]) in.push_back(el.value);
            Bit out = apply_gate(g.kind, std::span<const Bit>(in));
            if (out != outputs_[gi]) {
                outputs_[gi] = out;
                emit(tr, g.name, out, t);
            }
        }
    }

    const Netlist& netlist_;
    DelayModel model_;
    std::vector<const Gate*> order_;
    std::vector<std::vector<Element>> elements_;
    std::map<std::string, std::vector<Sink>> fanout_;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> generations_;
    std::vector<Bit> outputs_;
    std::map<std::string, Bit> values_;
    std::vector<bool> dirty_;
    std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
    std::uint64_t seq_ = 0;
};

}  // namespace detail

// Event-driven simulation with concrete delays. Each gate input is a delay
// element; the ideal gate function is re-evaluated once per distinct time
// point after all same-time input updates have landed. The inertial model
// swallows pulses strictly narrower than the delay element they enter.
inline Trace simulate(const Netlist& n, const Stimulus& s, const DelayValues& delays,
                      DelayModel model = DelayModel::Pure) {
    detail::Simulator sim(n, delays, model);
    return sim.run(s);
}

// ---------------------------------------------------------------------------
// Cross-check
// ---------------------------------------------------------------------------

struct Divergence {
    Rational time;
    Bit trace_value;
    Bit waveform_value;
};

struct SignalAgreement {
    bool agrees = true;
    std::optional<Divergence> first_divergence;
};

struct AgreementReport {
    std::map<std::string, SignalAgreement> signals;

    bool all_agree() const {
        return std::all_of(signals.begin(), signals.end(), [](const auto& kv) { return kv.second.agrees; });
    }

    std::vector<std::string> diverging() const {
        std::vector<std::string> out;
        for (const auto& [name, a] : signals)
            if (!a.agrees) out.push_back(name);
        return out;
    }
};

// Samples each signal at every trace event time, every concrete step time of
// its waveform, and epsilon before each of them (epsilon = half the smallest
// gap between sample instants), plus one instant before and after all of
// them. Compares the trace value with wf_eval there.
inline AgreementReport trace_vs_waveform(const Trace& tr, const SignalWaveforms& waveforms, const DelayValues& delays) {
    std::set<Rational> instants;
    instants.insert(tr.start_time);
    for (const auto& [sig, list] : tr.events)
        for (const auto& e : list) instants.insert(e.time);
    for (const auto& [sig, w] : waveforms)
        for (const auto& s : w.steps()) instants.insert(s.evaluate(delays));

    Rational eps = Rational(1, 2);
    for (auto it = instants.begin(), next = std::next(it); next != instants.end(); ++it, ++next) {
        Rational half_gap = (*next - *it) / 2;
        if (half_gap < eps) eps = half_gap;
    }
    std::set<Rational> samples;
    for (const auto& t : instants) {
        samples.insert(t);
        samples.insert(t - eps);
    }
    samples.insert(*instants.begin() - 1);
    samples.insert(*instants.rbegin() + 1);

    AgreementReport report;
    for (const auto& [sig, w] : waveforms) {
        SignalAgreement a;
        if (!tr.initial_values.count(sig)) {
            a.agrees = false;
            a.first_divergence = Divergence{*samples.begin(), kZero, w.initial()};
            report.signals.emplace(sig, a);
            continue;
        }
        for (const auto& t : samples) {
            Bit expected = tr.value_at(sig, t);
            Bit got = wf_eval(w, t, delays);
            if (expected != got) {
                a.agrees = false;
                a.first_divergence = Divergence{t, expected, got};
                break;
            }
        }
        report.signals.emplace(sig, a);
    }
    return report;
}

}  // namespace hazard
