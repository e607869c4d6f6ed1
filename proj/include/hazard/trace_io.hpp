#pragma once

// Trace export: VCD for external viewers and an ASCII strip chart for terminals.

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hazard/oracle.hpp"
#include "hazard/rational.hpp"

namespace hazard {

// Least common multiple of the denominators of every event time; VCD ticks
// are time * scale.
inline BigInt vcd_time_scale(const Trace& tr) {
    BigInt scale = denominator_of(tr.start_time);
    for (const auto& [sig, list] : tr.events)
        for (const auto& e : list) scale = boost::multiprecision::lcm(scale, denominator_of(e.time));
    return scale;
}

namespace detail {

inline std::string vcd_identifier(std::size_t index) {
    // printable ASCII '!'..'~', little-endian base 94
    std::string id;
    do {
        id += static_cast<char>('!' + index % 94);
        index /= 94;
    } while (index != 0);
    return id;
}

}  // namespace detail

inline void write_vcd(std::ostream& os, const Trace& tr, const std::vector<std::string>& signals,
                      const std::string& timescale = "1ps") {
    const BigInt scale = vcd_time_scale(tr);
    Rational origin = std::min(Rational(0), tr.start_time);
    auto ticks = [&](const Rational& t) {
        Rational scaled = (t - origin) * scale;
        return numerator_of(scaled) / denominator_of(scaled);
    };

    os << "$comment one model time unit = " << scale.str() << " ticks $end\n";
    os << "$timescale " << timescale << " $end\n";
    os << "$scope module circuit $end\n";
    for (std::size_t i = 0; i < signals.size(); ++i)
        os << "$var wire 1 " << detail::vcd_identifier(i) << ' ' << signals[i] << " $end\n";
    os << "$upscope $end\n$enddefinitions $end\n";

    os << "#0\n$dumpvars\n";
    for (std::size_t i = 0; i < signals.size(); ++i)
        os << tr.initial_values.at(signals[i]).to_char() << detail::vcd_identifier(i) << '\n';
    os << "$end\n";

    std::map<Rational, std::vector<std::pair<std::size_t, Bit>>> by_time;
    for (std::size_t i = 0; i < signals.size(); ++i) {
        auto it = tr.events.find(signals[i]);
        if (it == tr.events.end()) continue;
        for (const auto& e : it->second) by_time[e.time].emplace_back(i, e.new_value);
    }
    for (const auto& [t, changes] : by_time) {
        os << '#' << ticks(t).str() << '\n';
        for (const auto& [i, v] : changes) os << v.to_char() << detail::vcd_identifier(i) << '\n';
    }
}

// One row per signal: `_` low, `▔` high, `|` at an edge. Columns between
// consecutive event instants scale with the gap (2..12 columns).
inline std::string render_ascii(const Trace& tr, const std::vector<std::string>& signals, bool color = false) {
    std::set<Rational> instants;
    for (const auto& s : signals)
        if (auto it = tr.events.find(s); it != tr.events.end())
            for (const auto& e : it->second) instants.insert(e.time);

    std::vector<Rational> times(instants.begin(), instants.end());
    Rational min_gap = 1;
    for (std::size_t i = 1; i < times.size(); ++i) min_gap = std::min(min_gap, Rational(times[i] - times[i - 1]));

    std::vector<std::size_t> widths;  // columns after each instant
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        Rational cols = (times[i + 1] - times[i]) / min_gap * 2;
        auto c = static_cast<std::size_t>(numerator_of(cols) / denominator_of(cols));
        widths.push_back(std::clamp<std::size_t>(c, 2, 12));
    }
    widths.push_back(4);

    std::size_t label = 0;
    for (const auto& s : signals) label = std::max(label, s.size());

    const char* high = "▔";
    auto level = [&](Bit b, std::size_t n) {
        std::string out;
        if (color && b.is_one()) out += "\x1b[32m";
        for (std::size_t i = 0; i < n; ++i) out += b.is_one() ? high : "_";
        if (color && b.is_one()) out += "\x1b[0m";
        return out;
    };

    std::ostringstream os;
    for (const auto& s : signals) {
        os << s << std::string(label - s.size() + 1, ' ');
        Bit v = tr.initial_values.at(s);
        os << level(v, 4);
        for (std::size_t i = 0; i < times.size(); ++i) {
            Bit next = tr.value_at(s, times[i]);
            if (next != v) {
                os << (color ? "\x1b[33m|\x1b[0m" : "|");
                v = next;
            } else {
                os << level(v, 1);
            }
            os << level(v, widths[i]);
        }
        os << '\n';
    }
    if (!times.empty()) {
        os << std::string(label + 1, ' ') << "t: ";
        for (std::size_t i = 0; i < times.size(); ++i) os << (i ? ", " : "") << format_rational(times[i]);
        os << '\n';
    }
    return os.str();
}

}  // namespace hazard
