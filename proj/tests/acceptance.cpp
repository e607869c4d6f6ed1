// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace hazard;
using hazard::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Netlist load(const std::string& name) {
    return parse_netlist(read(std::filesystem::path(HAZARD_CIRCUITS_DIR) / name));
}

SymbolicTime T(const std::string& s) { return parse_symbolic_time(s); }

// Oracle verdict from the event trace: output toggles differ from the ideal count.
bool trace_shows_hazard(const Netlist& n, const Stimulus& s, const DelayValues& d, const std::string& out) {
    Trace tr = simulate(n, s, d);
    const std::string& driver = n.find_output(out)->driver;
    auto it = tr.events.find(driver);
    std::size_t count = it == tr.events.end() ? 0 : it->second.size();
    std::size_t ideal = tr.initial_values.at(driver) == tr.final_values.at(driver) ? 0 : 1;
    return count != ideal;
}

Netlist zero_delays(Netlist n) {
    for (auto& g : n.gates)
        for (auto& d : g.input_delays) d = SymbolicTime(0);
    return n;
}

std::string bits_of(std::uint64_t v, std::size_t k) {
    std::string s;
    for (std::size_t i = 0; i < k; ++i) s += ((v >> (k - 1 - i)) & 1U) ? '1' : '0';
    return s;
}

// --- criteria ----------------------------------------------------------------

Outcome golden_output() {
    const auto start = Clock::now();
    Netlist n = load("fig1.net");
    HazardReport r = classify(n, Stimulus::from_bits(n, "1111", "1001", Rational(5)), "Y");
    const double secs = seconds_since(start);
    if (r.expression_text != "1 - h(t-(5+2*tau)) + h(t-(5+3*tau))") return fail("expression " + r.expression_text);
    if (r.classification != HazardClass::Static1) return fail(std::string(class_key(r.classification)));
    if (r.pulses.size() != 1 || r.pulses[0].width != T("tau")) return fail("pulse width");
    if (secs >= 1.0) return fail("took " + std::to_string(secs) + " s");
    return {true, r.expression_text + ", static-1, width tau"};
}

Outcome intermediate_signals() {
    Netlist n = load("fig1.net");
    auto sig = propagate(n, stimulus_waveforms(n, Stimulus::from_bits(n, "1111", "1001", Rational(5))));
    const std::vector<std::pair<std::string, std::string>> expected{
        {"N1", "h(t-(5+tau))"}, {"A1", "1 - h(t-(5+tau))"}, {"A2", "h(t-(5+2*tau))"}};
    std::string detail;
    for (const auto& [name, text] : expected) {
        if (to_string(sig.at(name)) != text) return fail(name + " = " + to_string(sig.at(name)));
        detail += (detail.empty() ? "" : ", ") + name + " = " + text;
    }
    // the same instants, built independently
    if (sig.at("N1") != Waveform::step(T("5+tau")) || sig.at("A1") != wf_not(Waveform::step(T("5+tau"))) ||
        sig.at("A2") != Waveform::step(T("5+2*tau")))
        return fail("structural mismatch");
    return {true, detail};
}

Outcome arithmetization_soundness() {
    const auto start = Clock::now();
    Rng rng(1001);
    std::size_t checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto vars = hazard::testing::variable_names(hazard::testing::uniform(rng, 1, 6));
        BoolExpr e = hazard::testing::random_expr(rng, vars, 5);
        MultilinearPoly p = arithmetize(e);
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            // assign all six names so unused variables are harmless
            Assignment a = hazard::testing::assignment_from_mask(hazard::testing::variable_names(6), mask);
            if (poly_eval(p, a) != evaluate(e, a)) return fail("mismatch on " + to_string(e));
            ++checked;
        }
    }
    BoolExpr x = BoolExpr::var("x"), y = BoolExpr::var("y");
    MultilinearPoly lhs = arithmetize(BoolExpr::negate(BoolExpr::any_of({BoolExpr::negate(x), BoolExpr::negate(y)})));
    MultilinearPoly xy = MultilinearPoly::variable("x") * MultilinearPoly::variable("y");
    if (lhs != xy) return fail("De Morgan gives " + lhs.to_string());
    MultilinearPoly dual = arithmetize(BoolExpr::negate(BoolExpr::all_of({BoolExpr::negate(x), BoolExpr::negate(y)})));
    if (dual != arithmetize(BoolExpr::any_of({x, y}))) return fail("dual De Morgan gives " + dual.to_string());
    const double secs = seconds_since(start);
    if (secs >= 10.0) return fail("took " + std::to_string(secs) + " s");
    return {true, std::to_string(checked) + " assignments, De Morgan x*y"};
}

Outcome step_product_property() {
    Rng rng(1002);
    int instances = 0;
    while (instances < 500) {
        const int n = hazard::testing::uniform(rng, 1, 5);
        std::vector<SymbolicTime> times;
        for (int i = 0; i < n; ++i) {
            SymbolicTime t(Rational(hazard::testing::uniform(rng, 0, 12), hazard::testing::uniform(rng, 1, 3)));
            t += SymbolicTime::symbol("tau", hazard::testing::uniform(rng, 0, 3));
            if (hazard::testing::coin(rng)) t += SymbolicTime::symbol("delta", hazard::testing::uniform(rng, 0, 2));
            times.push_back(t);
        }
        bool comparable = true;
        for (const auto& a : times)
            for (const auto& b : times) comparable &= compare_times(a, b) != TimeOrder::Incomparable;
        if (!comparable) continue;
        ++instances;

        // componentwise maximum, computed from the components directly
        Rational c = times[0].constant();
        std::map<std::string, std::int64_t> coef;
        for (const auto& t : times) {
            c = std::max(c, t.constant());
            for (const auto& [s, k] : t.coefficients()) coef[s] = std::max<std::int64_t>(coef[s], k);
        }
        SymbolicTime max_time(c);
        for (const auto& [s, k] : coef) max_time += SymbolicTime::symbol(s, k);

        Waveform prod = step_product(times);
        if (prod != Waveform::step(max_time)) return fail("symbolic: " + to_string(prod) + " vs " + max_time.to_string());

        DelayValues d{{"tau", hazard::testing::random_positive_rational(rng)},
                      {"delta", hazard::testing::random_positive_rational(rng)}};
        Rational lo = times[0].evaluate(d), hi = lo;
        for (const auto& t : times) {
            lo = std::min(lo, t.evaluate(d));
            hi = std::max(hi, t.evaluate(d));
        }
        lo -= 1;
        hi += 1;
        for (int k = 0; k < 100; ++k) {
            Rational t = lo + (hi - lo) * k / 99;
            int product = 1;
            for (const auto& s : times) product *= (t - s.evaluate(d) >= 0) ? 1 : 0;
            if (wf_eval(prod, t, d).value() != product) return fail("grid mismatch at " + format_rational(t));
        }
        // the grid must also hit every step instant exactly
        for (const auto& s : times) {
            Rational t = s.evaluate(d);
            int product = 1;
            for (const auto& u : times) product *= (t - u.evaluate(d) >= 0) ? 1 : 0;
            if (wf_eval(prod, t, d).value() != product) return fail("step instant mismatch");
        }
    }
    return {true, "500 products, 100-point grid each"};
}

Outcome oracle_equivalence() {
    const auto start = Clock::now();
    Rng rng(1003);
    int symbolic_ok = 0, ambiguous = 0, checked_signals = 0;
    const hazard::testing::DelayStyle styles[] = {hazard::testing::DelayStyle::Concrete,
                                                  hazard::testing::DelayStyle::ScaledTau,
                                                  hazard::testing::DelayStyle::MixedSymbols};
    for (int i = 0; i < 200; ++i) {
        hazard::testing::RandomNetlistOptions opt;
        opt.style = styles[i % 3];
        Netlist n = parse_netlist(hazard::testing::random_netlist_text(rng, opt));
        Stimulus s = hazard::testing::random_stimulus(rng, n);
        DelayValues d = hazard::testing::random_delay_values(rng, n);
        Trace tr = simulate(n, s, d);

        SignalWaveforms symbolic;
        try {
            symbolic = propagate(n, stimulus_waveforms(n, s));
        } catch (const AmbiguousOrdering&) {
            ++ambiguous;
            symbolic.clear();
        }
        if (!symbolic.empty()) {
            auto rep = trace_vs_waveform(tr, symbolic, d);
            if (!rep.all_agree()) return fail("netlist " + std::to_string(i) + " diverges on " + rep.diverging()[0]);
            ++symbolic_ok;
            checked_signals += static_cast<int>(rep.signals.size());
        }
        // with the delays bound, propagation never hits an ambiguity
        auto bound = propagate(bind_delays(n, d), stimulus_waveforms(n, s));
        if (!trace_vs_waveform(tr, bound, d).all_agree()) return fail("bound netlist " + std::to_string(i) + " diverges");
    }
    const double secs = seconds_since(start);
    if (symbolic_ok < 100) return fail("only " + std::to_string(symbolic_ok) + " symbolic successes");
    if (secs >= 60.0) return fail("took " + std::to_string(secs) + " s");
    return {true, std::to_string(symbolic_ok) + " symbolic agreements (" + std::to_string(checked_signals) +
                      " signals), " + std::to_string(ambiguous) + " ambiguous, 200 bound agreements"};
}

Outcome classic_hazard_pair() {
    const DelayValues unit{{"tau", Rational(1)}};
    Netlist plain = load("mux.net");
    Netlist consensus = load("mux_consensus.net");
    Stimulus s = Stimulus::from_bits(plain, "111", "011", 0);  // X falls, B = C = 1

    if (!trace_shows_hazard(plain, s, unit, "Y")) return fail("oracle sees no glitch without consensus");
    if (trace_shows_hazard(consensus, s, unit, "Y")) return fail("oracle sees a glitch with consensus");

    HazardReport a = classify(plain, s, "Y");
    HazardReport b = classify(consensus, s, "Y");
    if (a.classification != HazardClass::Static1) return fail("without consensus: " + std::string(class_key(a.classification)));
    if (b.classification != HazardClass::None) return fail("with consensus: " + std::string(class_key(b.classification)));
    return {true, "static-1 " + a.expression_text + "; consensus: none"};
}

Outcome zero_delay_soundness() {
    std::size_t stimuli = 0, netlists = 0;
    auto sweep = [&](const Netlist& zn) -> std::optional<std::string> {
        ++netlists;
        const std::size_t k = zn.primary_inputs.size();
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << k); ++f)
            for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t)
                for (const auto& port : zn.outputs) {
                    ++stimuli;
                    Stimulus s = Stimulus::from_bits(zn, bits_of(f, k), bits_of(t, k), Rational(f % 3));
                    if (classify(zn, s, port.name).classification != HazardClass::None)
                        return bits_of(f, k) + "->" + bits_of(t, k) + " on " + port.name;
                }
        return std::nullopt;
    };
    for (const auto& entry : std::filesystem::directory_iterator(HAZARD_CIRCUITS_DIR)) {
        if (entry.path().extension() != ".net") continue;
        if (auto bad = sweep(zero_delays(parse_netlist(read(entry.path())))))
            return fail(entry.path().filename().string() + ": " + *bad);
    }
    Rng rng(1004);
    for (int i = 0; i < 50; ++i) {
        hazard::testing::RandomNetlistOptions opt;
        opt.max_inputs = 4;
        if (auto bad = sweep(zero_delays(parse_netlist(hazard::testing::random_netlist_text(rng, opt)))))
            return fail("random netlist " + std::to_string(i) + ": " + *bad);
    }
    return {true, std::to_string(stimuli) + " stimuli over " + std::to_string(netlists) + " netlists"};
}

Outcome boundary_semantics() {
    Netlist n = load("fig1.net");
    HazardReport r = classify(n, Stimulus::from_bits(n, "1111", "1001", Rational(5)), "Y");
    const DelayValues unit{{"tau", Rational(1)}};
    Bit at7 = wf_eval(r.waveform, Rational(7), unit);
    Bit at8 = wf_eval(r.waveform, Rational(8), unit);
    if (at7 != kZero || at8 != kOne)
        return fail(std::string("y(7) = ") + at7.to_char() + ", y(8) = " + at8.to_char());
    return {true, "y(7) = 0, y(8) = 1"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 golden output expression", golden_output},
        {"AC2 intermediate signals", intermediate_signals},
        {"AC3 arithmetization soundness", arithmetization_soundness},
        {"AC4 step product normalization", step_product_property},
        {"AC5 oracle equivalence", oracle_equivalence},
        {"AC6 classic hazard pair", classic_hazard_pair},
        {"AC7 zero-delay soundness", zero_delay_soundness},
        {"AC8 wf_eval boundary semantics", boundary_semantics},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        const auto start = Clock::now();
        try {
            o = check();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                    seconds_since(start));
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
