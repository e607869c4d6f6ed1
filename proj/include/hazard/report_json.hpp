#pragma once

#include <json.hpp>

#include "hazard/analyze.hpp"
#include "hazard/oracle.hpp"

namespace hazard {

// {"output", "class", "ideal_before", "ideal_after", "expression",
//  "pulses": [{"start", "end", "width"}], "signals": {name: expression}}
inline nlohmann::json to_json(const HazardReport& r) {
    nlohmann::json pulses = nlohmann::json::array();
    for (const auto& p : r.pulses)
        pulses.push_back({{"start", p.start.to_string()}, {"end", p.end.to_string()}, {"width", p.width.to_string()}});
    nlohmann::json signals = nlohmann::json::object();
    for (const auto& [name, w] : r.signals) signals[name] = to_string(w);
    return {
        {"output", r.output_name},
        {"class", std::string(class_key(r.classification))},
        {"ideal_before", r.ideal_before.value()},
        {"ideal_after", r.ideal_after.value()},
        {"expression", r.expression_text},
        {"pulses", std::move(pulses)},
        {"signals", std::move(signals)},
    };
}

inline nlohmann::json to_json(const Trace& tr) {
    nlohmann::json events = nlohmann::json::array();
    std::vector<const Event*> all;
    for (const auto& [sig, list] : tr.events)
        for (const auto& e : list) all.push_back(&e);
    std::stable_sort(all.begin(), all.end(), [](const Event* a, const Event* b) { return a->time < b->time; });
    for (const Event* e : all)
        events.push_back({{"time", format_rational(e->time)}, {"signal", e->signal}, {"value", e->new_value.value()}});
    nlohmann::json initial = nlohmann::json::object();
    for (const auto& [sig, v] : tr.initial_values) initial[sig] = v.value();
    nlohmann::json final_values = nlohmann::json::object();
    for (const auto& [sig, v] : tr.final_values) final_values[sig] = v.value();
    return {
        {"start_time", format_rational(tr.start_time)},
        {"settle_time", format_rational(tr.settle_time)},
        {"initial", std::move(initial)},
        {"events", std::move(events)},
        {"final", std::move(final_values)},
    };
}

}  // namespace hazard
