#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "funsol/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"funsol: functional solutions of coupled divergence-form elliptic systems"};
    app.require_subcommand(1);

    std::string config_path;
    int levels = 3;

    CLI::App* solve = app.add_subcommand(
        "solve", "Run the reduction pipeline and write fields, profile and summary");
    solve->add_option("config", config_path, "problem config file")->required();

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check the pipeline against the direct fixed-point solver");
    verify->add_option("config", config_path, "problem config file")->required();

    CLI::App* converge = app.add_subcommand(
        "converge", "Re-solve at doubled resolutions and tabulate convergence orders");
    converge->add_option("config", config_path, "problem config file")->required();
    converge->add_option("--levels", levels, "number of refinement levels (default 3)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : funsol::kExitUsage;
    }

    if (solve->parsed()) return funsol::cmd_solve(config_path, std::cout, std::cerr);
    if (verify->parsed()) return funsol::cmd_verify(config_path, std::cout, std::cerr);
    return funsol::cmd_converge(config_path, levels, std::cout, std::cerr);
}
