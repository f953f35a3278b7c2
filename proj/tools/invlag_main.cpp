#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "invlag/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Lagrangian/Hamiltonian construction and verification for the "
                 "one-dimensional family m dv/dt = (-U'(x) + gamma(x) v^2)(1 - alpha2 v^2)"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::string out;
        std::string format = "csv";
    };
    Args args;

    const auto add_command = [&](const std::string& name, const std::string& help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("--config", args.config, "system + parameters config file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", args.out, "output path (default: stdout)");
        cmd->add_option("--format", args.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        return cmd;
    };

    add_command("derive", "tabulate W, G, p, L, V, K over the (x, v) grid");
    add_command("simulate", "integrate the Newton flow (optionally the Hamiltonian flows)");
    add_command("hamiltonian", "tabulate the exact (and series) Hamiltonian over (x, p)");
    add_command("invert", "momentum round-trip diagnostics v -> p -> v");
    add_command("verify", "run all residual checks and report pass/fail");
    add_command("limits", "convergence to the conservative forms as gamma, alpha2 -> 0");

    CLI11_PARSE(app, argc, argv);

    try {
        invlag::RunConfig config = invlag::load_config(args.config);
        config.command = invlag::parse_command(app.get_subcommands().front()->get_name());
        config.out_path = args.out;
        config.format = args.format == "json" ? invlag::OutputFormat::json
                                              : invlag::OutputFormat::csv;
        return invlag::run(config);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
