#pragma once

#include <stdexcept>
#include <string>

#include "invlag/system.hpp"

namespace invlag {

enum class Command { derive, simulate, hamiltonian, invert, verify, limits };
enum class OutputFormat { csv, json };

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
    int line;
};

/// One evenly spaced axis, written `lo:hi:n` in config files.
struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 21;
    bool set = false; // explicit in the config file
};

/// Everything one invocation needs: the system plus command parameters.
/// Defaults follow the 21-point x in [0,2], |v| <= 0.9/alpha convention.
struct RunConfig {
    SystemSpec spec = SystemSpec::make(1.0, 0.0, {}, {});
    Command command = Command::derive;

    AxisSpec grid_x{0.0, 2.0, 21, false};
    AxisSpec grid_v; // defaulted from alpha2 when not set
    AxisSpec grid_p{-2.0, 2.0, 21, false};

    double x0 = 0.0;
    double v0 = 0.0;
    double dt = 1e-3;
    double t_end = 10.0;
    int n_terms = 16;
    std::string mode; // command-dependent; empty = command default

    double tol_kernel_pde = 1e-10;
    double tol_invariant_pde = 1e-10;
    double tol_euler_lagrange = 1e-6;
    double tol_limit_slope = 0.2;
    double tol_roundtrip = 1e-11;

    std::string out_path; // empty: stdout
    OutputFormat format = OutputFormat::csv;
};

/// Parses a `key = value` config file (`#` starts a comment; unknown or
/// duplicate keys are errors reported with their line number).
RunConfig load_config(const std::string& path);

Command parse_command(const std::string& name);

} // namespace invlag
