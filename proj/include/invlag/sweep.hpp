#pragma once

#include <vector>

#include "invlag/fields.hpp"
#include "invlag/grid.hpp"
#include "invlag/inversion.hpp"

namespace invlag {
namespace sweep {

/// Grid kernels come in two interchangeable flavours: a serial reference
/// and an OpenMP row-parallel version.  Rows (fixed x) are independent and
/// each cell is computed by the identical expression, so both produce
/// bitwise-identical tables.
enum class Exec { serial, parallel };

struct DeriveRow {
    double x, v;
    DerivedFields f;
};

/// W, G, p, L, V, K over the tensor grid xs x vs (x outer, v inner).
std::vector<DeriveRow> derive_table(const SystemSpec& spec, const std::vector<double>& xs,
                                    const std::vector<double>& vs, Exec exec = Exec::parallel);

struct HamiltonianRow {
    double x, p;
    double v;      // exact inversion
    double H;      // exact Hamiltonian
    bool series_domain_ok = false;
    double H_series = 0.0;    // NaN outside x > 0, p > 0
    double discrepancy = 0.0; // H_series - H, NaN outside the domain
    double last_term = 0.0;
    int terms_used = 0;
};

struct HamiltonianTableOptions {
    bool with_series = false;
    int n_terms = 16;
};

/// Exact H (and optionally series H with per-term diagnostics) over xs x ps.
std::vector<HamiltonianRow> hamiltonian_table(const SystemSpec& spec,
                                              const std::vector<double>& xs,
                                              const std::vector<double>& ps,
                                              const HamiltonianTableOptions& opts = {},
                                              Exec exec = Exec::parallel);

struct RoundTripRow {
    double x, v;
    double p;       // momentum(x, v)
    double v_back;  // velocity_from_momentum(x, p)
    double rel_err; // |v_back - v| / max(|v|, 1e-30)
};

std::vector<RoundTripRow> roundtrip_table(const SystemSpec& spec, const std::vector<double>& xs,
                                          const std::vector<double>& vs,
                                          Exec exec = Exec::parallel);

struct ResidualExtrema {
    double max_abs = 0.0;
    double max_rel = 0.0;
};

/// Max residual of v dG/dx + d(F G)/dv over the grid, both terms analytic.
/// kernel_fault scales the kernel by (1 + kernel_fault * v^2); 0 disables
/// the fault (the undisturbed residual is identically zero in exact
/// arithmetic).
ResidualExtrema kernel_pde_extrema(const SystemSpec& spec, const std::vector<double>& xs,
                                   const std::vector<double>& vs, double kernel_fault = 0.0,
                                   Exec exec = Exec::parallel);

/// Max residual of v dK/dx + F dK/dv with analytic derivatives.
/// flip_potential negates the effective-potential term (fault injection).
ResidualExtrema invariant_pde_extrema(const SystemSpec& spec, const std::vector<double>& xs,
                                      const std::vector<double>& vs, bool flip_potential = false,
                                      Exec exec = Exec::parallel);

} // namespace sweep
} // namespace invlag
