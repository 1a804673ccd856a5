// acobs: simulate machines, analyze observability along trajectories, and
// self-verify the closed forms.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "acobs/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Observability analysis of AC machines"};
    app.require_subcommand(1);

    std::string scenario;
    std::string output;

    auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write its trajectory");
    simulate->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    simulate->add_option("-o,--out", output, "trajectory CSV")->required();

    bool strict = false;
    std::string trajectory;
    auto* analyze = app.add_subcommand("analyze", "evaluate the rank condition along a trajectory");
    analyze->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    analyze->add_option("-o,--out", output, "report CSV")->required();
    analyze->add_option("--trajectory", trajectory, "analyze this trajectory CSV instead of integrating")
        ->check(CLI::ExistingFile);
    analyze->add_flag("--strict", strict, "exit 4 if too many samples are singular");

    std::uint64_t seed = 42;
    int n_states = 1000;
    bool mutate = false;
    auto* verify = app.add_subcommand("verify", "check closed forms against the numerical oracle");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--states", n_states, "random states per property")->check(CLI::PositiveNumber);
    verify->add_flag("--mutate", mutate, "tamper with a determinant formula (the run must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : acobs::cli::exit_code::kConfig;
    }

    if (*simulate) return acobs::cli::cmd_simulate(scenario, output, std::cout, std::cerr);
    if (*analyze) {
        std::optional<std::filesystem::path> traj;
        if (!trajectory.empty()) traj = trajectory;
        return acobs::cli::cmd_analyze(scenario, output, strict, traj, std::cout, std::cerr);
    }
    return acobs::cli::cmd_verify(seed, n_states, mutate, std::cout, std::cerr);
}
