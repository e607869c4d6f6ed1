#include <CLI11.hpp>

#include <iostream>

#include "hazard/cli.hpp"

namespace {

void add_stimulus_flags(CLI::App* cmd, hazard::cli::RunConfig& cfg, std::string& at) {
    cmd->add_option("--from", cfg.from_bits, "input vector before the switch, first declared input first");
    cmd->add_option("--to", cfg.to_bits, "input vector after the switch");
    cmd->add_option("--at", at, "switch time (rational)");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hazard::cli;
    RunConfig cfg;
    std::string at = "0";
    std::vector<std::string> delays;
    std::string format = "text";
    std::string mode = "hamming1";
    std::string model = "pure";

    CLI::App app{"Symbolic hazard analysis of combinational netlists"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("netlist", cfg.netlist_path, "netlist file")->required();
        cmd->add_option("--delay", delays, "delay symbol value, SYMBOL=VALUE (repeatable)");
        cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output", cfg.output, "restrict to one output");
    };

    auto* analyze = app.add_subcommand("analyze", "classify one input transition");
    common(analyze);
    add_stimulus_flags(analyze, cfg, at);

    auto* enumerate = app.add_subcommand("enumerate", "list every hazardous transition");
    common(enumerate);
    enumerate->add_option("--mode", mode, "hamming1 or all")->check(CLI::IsMember({"hamming1", "all"}));

    auto* simulate = app.add_subcommand("simulate", "event-driven simulation with concrete delays");
    common(simulate);
    add_stimulus_flags(simulate, cfg, at);
    simulate->add_option("--vcd", cfg.vcd_path, "write a VCD file");
    simulate->add_option("--model", model, "pure or inertial")->check(CLI::IsMember({"pure", "inertial"}));

    auto* check = app.add_subcommand("check", "cross-check symbolic waveforms against simulation");
    common(check);
    add_stimulus_flags(check, cfg, at);

    auto* arith = app.add_subcommand("arith", "arithmetize a Boolean expression");
    arith->add_option("expression", cfg.netlist_path, "e.g. '!(!x | !y)'")->required();
    arith->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*analyze) cfg.command = Command::Analyze;
    if (*enumerate) cfg.command = Command::Enumerate;
    if (*simulate) cfg.command = Command::Simulate;
    if (*check) cfg.command = Command::Check;
    if (*arith) cfg.command = Command::Arith;

    try {
        cfg.switch_time = hazard::parse_rational(at);
        for (const auto& d : delays) {
            auto [sym, value] = parse_delay_assignment(d);
            cfg.delays[sym] = value;
        }
    } catch (const hazard::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
    cfg.mode = mode == "all" ? hazard::EnumerationMode::AllPairs : hazard::EnumerationMode::Hamming1;
    cfg.delay_model = model == "inertial" ? hazard::DelayModel::Inertial : hazard::DelayModel::Pure;
    cfg.color = color_from_env();

    return run(cfg, std::cout, std::cerr);
}
