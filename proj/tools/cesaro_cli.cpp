// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

// cesaro run <config> | list-scenarios | emit-default-config <scenario>
// Exit status: 0 pass, 1 threshold failure, 2 usage or configuration error.

#include <cesaro/scenario.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int run(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cesaro: cannot open " << path << '\n';
        return 2;
    }
    cesaro::ScenarioConfig cfg;
    try {
        cfg = cesaro::parse_config(in);
    } catch (const cesaro::error& e) {
        std::cerr << "cesaro: " << path << ": " << e.what() << '\n';
        return 2;
    }
    if (const char* dir = std::getenv("CESARO_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        cfg.output_dir = dir;
    }
    try {
        const auto report = cesaro::run_scenario(cfg);
        cesaro::write_outputs(report, cfg.output_dir, cfg.plots);
        cesaro::write_report(std::cout, report);
        return report.passed() ? 0 : 1;
    } catch (const cesaro::error& e) {
        std::cerr << "cesaro: " << cfg.scenario << ": " << e.what() << '\n';
        return e.code() == cesaro::errc::config_parse ? 2 : 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cesaro-Nevai statistics for orthogonal polynomial recurrences"};
    app.require_subcommand(1);

    std::string config;
    auto* run_cmd = app.add_subcommand("run", "run the scenario described by a configuration file");
    run_cmd->add_option("config", config, "configuration path")->required();

    app.add_subcommand("list-scenarios", "print the scenario ids");

    std::string scenario;
    auto* emit_cmd = app.add_subcommand("emit-default-config", "print a scenario's default configuration");
    emit_cmd->add_option("scenario", scenario, "scenario id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run_cmd->parsed()) {
        return run(config);
    }
    if (emit_cmd->parsed()) {
        try {
            std::cout << cesaro::emit_default_config(scenario);
        } catch (const cesaro::error& e) {
            std::cerr << "cesaro: " << e.what() << '\n';
            return 2;
        }
        return 0;
    }
    for (const auto& s : cesaro::scenarios()) {
        std::cout << s.id << "  " << s.summary << '\n';
    }
    return 0;
}
