#pragma once

// Front end shared by the `hazard` executable and the CLI tests.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hazard/analyze.hpp"
#include "hazard/circuit.hpp"
#include "hazard/error.hpp"
#include "hazard/expr.hpp"
#include "hazard/oracle.hpp"
#include "hazard/report_json.hpp"
#include "hazard/trace_io.hpp"

namespace hazard::cli {

enum class Command { Analyze, Enumerate, Simulate, Check, Arith };
enum class OutputFormat { Text, Json };

inline constexpr int kExitClean = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHazard = 2;
inline constexpr int kExitAmbiguous = 3;
inline constexpr int kExitDivergence = 4;

struct RunConfig {
    Command command = Command::Analyze;
    std::string netlist_path;  // for `arith`: the expression text
    std::optional<std::string> from_bits;
    std::optional<std::string> to_bits;
    Rational switch_time = 0;
    DelayValues delays;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> vcd_path;
    EnumerationMode mode = EnumerationMode::Hamming1;
    DelayModel delay_model = DelayModel::Pure;
    std::optional<std::string> output;  // restrict to one output
    bool color = false;
};

// `sym=value`
inline std::pair<std::string, Rational> parse_delay_assignment(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("expected --delay SYMBOL=VALUE, got '" + text + "'");
    return {text.substr(0, eq), parse_rational(text.substr(eq + 1))};
}

inline bool color_from_env() {
    const char* v = std::getenv("HAZARD_COLOR");
    return v != nullptr && std::string(v) == "1";
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Stimulus require_stimulus(const Netlist& n, const RunConfig& cfg) {
    if (!cfg.from_bits || !cfg.to_bits) throw Error("this command needs --from and --to");
    return Stimulus::from_bits(n, *cfg.from_bits, *cfg.to_bits, cfg.switch_time);
}

inline std::vector<std::string> selected_outputs(const Netlist& n, const RunConfig& cfg) {
    if (cfg.output) {
        if (!n.find_output(*cfg.output)) throw UndefinedSignal("no output named '" + *cfg.output + "'");
        return {*cfg.output};
    }
    std::vector<std::string> out;
    for (const auto& o : n.outputs) out.push_back(o.name);
    if (out.empty()) throw Error("netlist declares no outputs");
    return out;
}

inline void require_all_delays(const Netlist& n, const DelayValues& delays) {
    for (const auto& sym : n.delay_symbols())
        if (!delays.count(sym)) throw MissingDelayAssignment(sym);
}

inline std::vector<std::string> signal_order(const Netlist& n) {
    std::vector<std::string> names = n.primary_inputs;
    for (const Gate* g : topo_order(n)) names.push_back(g->name);
    return names;
}

inline std::string report_line(const HazardReport& r, bool name_output) {
    if (r.classification == HazardClass::None)
        return name_output ? "no hazard on " + r.output_name : std::string("no hazard");
    std::string line = std::string(class_label(r.classification)) + " hazard on " + r.output_name + ": " +
                       r.expression_text;
    for (const auto& p : r.pulses)
        line += "; pulse [" + p.start.to_string() + ", " + p.end.to_string() + "), width " + p.width.to_string();
    return line;
}

inline int analyze(const Netlist& n, const RunConfig& cfg, std::ostream& out) {
    const Netlist bound = bind_delays(n, cfg.delays);
    const Stimulus s = require_stimulus(bound, cfg);
    const auto outputs = selected_outputs(bound, cfg);
    std::vector<HazardReport> reports;
    for (const auto& o : outputs) reports.push_back(classify(bound, s, o));

    bool hazard = false;
    for (const auto& r : reports) hazard |= r.classification != HazardClass::None;

    if (cfg.format == OutputFormat::Json) {
        if (reports.size() == 1) {
            out << to_json(reports.front()).dump(2) << '\n';
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            out << arr.dump(2) << '\n';
        }
    } else {
        for (const auto& r : reports) out << report_line(r, reports.size() > 1) << '\n';
    }
    return hazard ? kExitHazard : kExitClean;
}

inline int enumerate(const Netlist& n, const RunConfig& cfg, std::ostream& out) {
    const Netlist bound = bind_delays(n, cfg.delays);
    nlohmann::json arr = nlohmann::json::array();
    std::size_t found = 0;
    for (const auto& o : selected_outputs(bound, cfg)) {
        for (const auto& h : enumerate_transitions(bound, o, cfg.mode)) {
            ++found;
            const std::string from = Stimulus::bits(bound, h.stimulus.from_vector);
            const std::string to = Stimulus::bits(bound, h.stimulus.to_vector);
            if (cfg.format == OutputFormat::Json)
                arr.push_back({{"from", from}, {"to", to}, {"report", to_json(h.report)}});
            else
                out << from << " -> " << to << ": " << report_line(h.report, true) << '\n';
        }
    }
    if (cfg.format == OutputFormat::Json)
        out << arr.dump(2) << '\n';
    else if (found == 0)
        out << "no hazardous transitions\n";
    return found ? kExitHazard : kExitClean;
}

inline int simulate_cmd(const Netlist& n, const RunConfig& cfg, std::ostream& out) {
    require_all_delays(n, cfg.delays);
    const Stimulus s = require_stimulus(n, cfg);
    const Trace tr = hazard::simulate(n, s, cfg.delays, cfg.delay_model);
    const auto names = signal_order(n);
    if (cfg.vcd_path) {
        std::ofstream vcd(*cfg.vcd_path);
        if (!vcd) throw Error("cannot write '" + *cfg.vcd_path + "'");
        write_vcd(vcd, tr, names);
    }
    if (cfg.format == OutputFormat::Json) {
        out << to_json(tr).dump(2) << '\n';
    } else {
        out << render_ascii(tr, names, cfg.color);
        out << tr.event_count() << " event(s), settled at t=" << format_rational(tr.settle_time) << '\n';
    }
    return kExitClean;
}

inline int check(const Netlist& n, const RunConfig& cfg, std::ostream& out) {
    require_all_delays(n, cfg.delays);
    const Stimulus s = require_stimulus(n, cfg);
    const Trace tr = hazard::simulate(n, s, cfg.delays, DelayModel::Pure);
    const SignalWaveforms symbolic = propagate(n, stimulus_waveforms(n, s));
    const AgreementReport rep = trace_vs_waveform(tr, symbolic, cfg.delays);
    if (rep.all_agree()) {
        out << "agreement: all signals\n";
        return kExitClean;
    }
    for (const auto& name : rep.diverging()) {
        const auto& d = *rep.signals.at(name).first_divergence;
        out << "divergence on " << name << " at t=" << format_rational(d.time) << ": trace=" << d.trace_value.to_char()
            << " symbolic=" << d.waveform_value.to_char() << '\n';
    }
    return kExitDivergence;
}

inline int arith(const RunConfig& cfg, std::ostream& out) {
    const BoolExpr e = parse_bool_expr(cfg.netlist_path);
    const MultilinearPoly p = arithmetize(e);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j = {{"expression", to_string(e)}, {"polynomial", p.to_string()},
                            {"canonical", to_string(poly_to_bool(p))}};
        out << j.dump(2) << '\n';
    } else {
        out << "polynomial: " << p.to_string() << '\n';
        out << "canonical:  " << to_string(poly_to_bool(p)) << '\n';
    }
    return kExitClean;
}

}  // namespace detail

// Exit status: 0 clean, 1 usage/parse/validation error, 2 hazard found,
// 3 ambiguous step ordering (assign delays with --delay), 4 check divergence.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == Command::Arith) return detail::arith(cfg, out);
        const Netlist n = parse_netlist(detail::read_file(cfg.netlist_path));
        switch (cfg.command) {
            case Command::Analyze:
                return detail::analyze(n, cfg, out);
            case Command::Enumerate:
                return detail::enumerate(n, cfg, out);
            case Command::Simulate:
                return detail::simulate_cmd(n, cfg, out);
            case Command::Check:
                return detail::check(n, cfg, out);
            case Command::Arith:
                break;
        }
        return kExitUsage;
    } catch (const AmbiguousOrdering& e) {
        err << "error: " << e.what() << "\nhint: the order depends on delay values; pass --delay SYMBOL=VALUE\n";
        return kExitAmbiguous;
    } catch (const SyntaxError& e) {
        err << cfg.netlist_path << ":" << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace hazard::cli
