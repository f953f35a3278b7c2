#pragma once

#include <string>

#include "json.hpp"

#include "invlag/dynamics.hpp"
#include "invlag/sweep.hpp"

namespace invlag {

/// One residual check: name, what it ran over, extrema and verdict.
/// pass is equivalent to max_rel <= tol (relative residuals are scaled by
/// the larger of the two compared terms, with absolute floor 1e-30).
struct ResidualReport {
    std::string name;
    std::string descriptor;
    double max_abs = 0.0;
    double max_rel = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// { name, params, max_abs, max_rel, tol, pass }
nlohmann::json to_json(const ResidualReport& report);

/// Deliberate perturbations proving each check can fail; see the
/// individual checks for what `inject` does.
enum class Fault { none, inject };

struct ResidualGrid {
    double x_lo = 0.0, x_hi = 2.0;
    int nx = 21;
    double v_lo = 0.0, v_hi = 0.0; // both 0: default to +-0.9/alpha (or +-0.9)
    int nv = 21;
};

/// Residual of the kernel transport equation v dG/dx + d(FG)/dv = 0 with
/// both terms analytic.  inject multiplies the kernel by (1 + 1e-3 v^2).
ResidualReport check_kernel_pde(const SystemSpec& spec, const ResidualGrid& grid,
                                double tol = 1e-10, Fault fault = Fault::none,
                                sweep::Exec exec = sweep::Exec::parallel);

/// Residual of v dK/dx + F dK/dv = 0 with analytic derivatives.
/// inject flips the sign of the effective-potential term of K.
ResidualReport check_invariant_pde(const SystemSpec& spec, const ResidualGrid& grid,
                                   double tol = 1e-10, Fault fault = Fault::none,
                                   sweep::Exec exec = sweep::Exec::parallel);

/// d/dt(dL/dv) = dL/dx along a recorded trajectory: 5-point time stencil
/// on the momentum samples against a central x-difference of L.
/// inject scales the momentum samples by 1.001.
ResidualReport check_euler_lagrange(const SystemSpec& spec, const NewtonTrajectory& traj,
                                    double tol = 1e-6, Fault fault = Fault::none);

/// Convergence of L, p, K to the conservative forms m v^2/2 -+ (U - U(0)),
/// m v as gamma = alpha2 = 10^-k, k = 2..8: the fitted error slope must be
/// first order within slope_tol, and the k = 0 endpoint must match to
/// machine precision (folded into max_rel so pass <=> max_rel <= tol).
/// inject scales the conservative reference values by 1.001.
ResidualReport check_limits(const SystemSpec& spec, double x, double v, double slope_tol = 0.2,
                            Fault fault = Fault::none);

} // namespace invlag
