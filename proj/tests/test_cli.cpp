#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hazard/cli.hpp"

using namespace hazard;
using namespace hazard::cli;
namespace fs = std::filesystem;

namespace {

std::string circuit(const std::string& name) { return std::string(HAZARD_CIRCUITS_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / ("hazard_cli_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig analyze_cfg(const std::string& path, const std::string& from, const std::string& to, Rational at = 0) {
    RunConfig cfg;
    cfg.command = Command::Analyze;
    cfg.netlist_path = path;
    cfg.from_bits = from;
    cfg.to_bits = to;
    cfg.switch_time = at;
    return cfg;
}

const char* kAmbiguous = "input A\ngate N NOT A delay=2*tau\ngate O OR A N delays=3,1\noutput Y = O\n";

}  // namespace

TEST(Cli, AnalyzeFig1Text) {
    auto r = run_cfg(analyze_cfg(circuit("fig1.net"), "1111", "1001", 5));
    EXPECT_EQ(r.code, kExitHazard);
    EXPECT_EQ(r.out,
              "STATIC-1 hazard on Y: 1 - h(t-(5+2*tau)) + h(t-(5+3*tau)); pulse [5+2*tau, 5+3*tau), width tau\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, AnalyzeFig1JsonMatchesText) {
    auto cfg = analyze_cfg(circuit("fig1.net"), "1111", "1001", 5);
    cfg.format = OutputFormat::Json;
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitHazard);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["output"], "Y");
    EXPECT_EQ(j["class"], "static1");
    EXPECT_EQ(j["ideal_before"], 1);
    EXPECT_EQ(j["ideal_after"], 1);
    EXPECT_EQ(j["expression"], "1 - h(t-(5+2*tau)) + h(t-(5+3*tau))");
    ASSERT_EQ(j["pulses"].size(), 1U);
    EXPECT_EQ(j["pulses"][0]["start"], "5+2*tau");
    EXPECT_EQ(j["pulses"][0]["end"], "5+3*tau");
    EXPECT_EQ(j["pulses"][0]["width"], "tau");
    EXPECT_EQ(j["signals"]["N1"], "h(t-(5+tau))");
    EXPECT_EQ(j["signals"]["A1"], "1 - h(t-(5+tau))");
    EXPECT_EQ(j["signals"]["A2"], "h(t-(5+2*tau))");

    auto text = run_cfg(analyze_cfg(circuit("fig1.net"), "1111", "1001", 5)).out;
    EXPECT_NE(text.find(j["expression"].get<std::string>()), std::string::npos);
}

TEST(Cli, AnalyzeClean) {
    auto r = run_cfg(analyze_cfg(circuit("fig1.net"), "1111", "1111", 5));
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "no hazard\n");
}

TEST(Cli, MultipleOutputsAndSelection) {
    auto cfg = analyze_cfg(circuit("xor_chain.net"), "000", "000");
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "no hazard on P\nno hazard on Z\n");
    cfg.output = "Z";
    EXPECT_EQ(run_cfg(cfg).out, "no hazard\n");
    cfg.output = "Q";
    EXPECT_EQ(run_cfg(cfg).code, kExitUsage);
}

TEST(Cli, AmbiguousOrderingNeedsDelays) {
    auto path = write_temp("ambiguous.net", kAmbiguous);
    auto cfg = analyze_cfg(path, "1", "0");
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitAmbiguous);
    EXPECT_NE(r.err.find("at gate O"), std::string::npos);
    EXPECT_NE(r.err.find("--delay"), std::string::npos);
    cfg.delays["tau"] = Rational(1);
    r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean) << r.err;
    cfg.delays["tau"] = Rational(2);
    EXPECT_EQ(run_cfg(cfg).code, kExitHazard);
}

TEST(Cli, EnumerateFig1) {
    RunConfig cfg;
    cfg.command = Command::Enumerate;
    cfg.netlist_path = circuit("fig1.net");
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "no hazardous transitions\n");

    cfg.mode = EnumerationMode::AllPairs;
    r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitHazard);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 15);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
              "0000 -> 0011: STATIC-0 hazard on Y: h(t-2*tau) - h(t-3*tau); pulse [2*tau, 3*tau), width tau");

    cfg.format = OutputFormat::Json;
    auto j = nlohmann::json::parse(run_cfg(cfg).out);
    ASSERT_EQ(j.size(), 15U);
    EXPECT_EQ(j[14]["from"], "1111");
    EXPECT_EQ(j[14]["to"], "1001");
    EXPECT_EQ(j[14]["report"]["class"], "static1");
}

TEST(Cli, SimulateRequiresEveryDelay) {
    RunConfig cfg = analyze_cfg(circuit("fig1.net"), "1111", "1001", 5);
    cfg.command = Command::Simulate;
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("tau"), std::string::npos);

    cfg.delays["tau"] = Rational(1);
    cfg.vcd_path = (fs::temp_directory_path() / "hazard_cli_test_fig1.vcd").string();
    r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean) << r.err;
    EXPECT_NE(r.out.find("7 event(s), settled at t=8"), std::string::npos) << r.out;
    std::ifstream vcd(*cfg.vcd_path);
    std::stringstream ss;
    ss << vcd.rdbuf();
    EXPECT_NE(ss.str().find("$enddefinitions $end"), std::string::npos);
    EXPECT_NE(ss.str().find("#8\n"), std::string::npos);

    cfg.vcd_path.reset();
    cfg.format = OutputFormat::Json;
    auto j = nlohmann::json::parse(run_cfg(cfg).out);
    EXPECT_EQ(j["events"].size(), 7U);

    cfg.delays["tau"] = Rational(0);
    EXPECT_EQ(run_cfg(cfg).code, kExitUsage);
}

TEST(Cli, CheckAgreement) {
    RunConfig cfg = analyze_cfg(circuit("fig1.net"), "1111", "1001", 5);
    cfg.command = Command::Check;
    cfg.delays["tau"] = Rational(1);
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "agreement: all signals\n");
    cfg.delays.clear();
    EXPECT_EQ(run_cfg(cfg).code, kExitUsage);
}

TEST(Cli, ParseErrorsReportPosition) {
    auto path = write_temp("bad.net", "input A\n\n  gate G FOO A A\n");
    auto r = run_cfg(analyze_cfg(path, "1", "0"));
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find(path + ":3:10:"), std::string::npos) << r.err;

    EXPECT_EQ(run_cfg(analyze_cfg("/nonexistent/x.net", "1", "0")).code, kExitUsage);
    EXPECT_EQ(run_cfg(analyze_cfg(circuit("fig1.net"), "11", "1001")).code, kExitUsage);
    RunConfig no_vectors;
    no_vectors.netlist_path = circuit("fig1.net");
    EXPECT_EQ(run_cfg(no_vectors).code, kExitUsage);
}

TEST(Cli, Arith) {
    RunConfig cfg;
    cfg.command = Command::Arith;
    cfg.netlist_path = "!(!x | !y)";
    auto r = run_cfg(cfg);
    EXPECT_EQ(r.code, kExitClean);
    EXPECT_EQ(r.out, "polynomial: x*y\ncanonical:  x & y\n");
    cfg.format = OutputFormat::Json;
    auto j = nlohmann::json::parse(run_cfg(cfg).out);
    EXPECT_EQ(j["polynomial"], "x*y");
    cfg.netlist_path = "x & & y";
    EXPECT_EQ(run_cfg(cfg).code, kExitUsage);
}

TEST(Cli, DelayAssignmentsAndColor) {
    EXPECT_EQ(parse_delay_assignment("tau=3/2"), (std::pair<std::string, Rational>{"tau", Rational(3, 2)}));
    EXPECT_EQ(parse_delay_assignment("d=0.25").second, Rational(1, 4));
    EXPECT_THROW(parse_delay_assignment("tau"), Error);
    EXPECT_THROW(parse_delay_assignment("=1"), Error);
    ::setenv("HAZARD_COLOR", "1", 1);
    EXPECT_TRUE(color_from_env());
    ::setenv("HAZARD_COLOR", "0", 1);
    EXPECT_FALSE(color_from_env());
    ::unsetenv("HAZARD_COLOR");
    EXPECT_FALSE(color_from_env());
}
