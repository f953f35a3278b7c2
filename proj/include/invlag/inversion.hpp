#pragma once

#include <vector>

#include "invlag/fields.hpp"

namespace invlag {

/// The unique v with momentum(spec, x, v) = p and |alpha v| < 1.  The map
/// is strictly increasing in v (its derivative is the kernel G > 0), so a
/// bracketed Newton/bisection hybrid converges; when alpha2 == 0 the
/// relation is linear and solved directly.
double velocity_from_momentum(const SystemSpec& spec, double x, double p);

/// H(x,p): the constant of motion re-expressed in phase-space coordinates
/// through the exact momentum inversion.
double hamiltonian(const SystemSpec& spec, double x, double p);

/// Per-term contributions actually accumulated by a truncated series.
struct SeriesTerms {
    double value = 0.0;
    std::vector<double> terms;
};

/// Term value v^{2n+1} = (2n+1)/((n+1)!) (2 lambda x / m)^n (p/m) e^{-2 gamma x/m}
/// of the momentum-expansion inversion.  Constant-force preset only; for
/// n >= 1 the construction is meaningful only when x > 0 and p > 0.
double series_velocity_power(const SystemSpec& spec, double x, double p, int n);

/// Truncated series Hamiltonian
///   (m/2) e^{-2x(lambda alpha2 - gamma)/m} sum alpha2^n v^{2n+2}(x,p) + V(x),
/// with v^{2n+2} = [series term]^{(2n+2)/(2n+1)}.  Preset only, x > 0, p > 0.
/// Early-stops when a term contributes < 1e-15 relative.
SeriesTerms series_hamiltonian(const SystemSpec& spec, double x, double p, int n_terms = 16);

struct PhaseRate {
    double dx_dt;
    double dp_dt;
};

/// Truncated canonical rates of the series Hamiltonian (same domain).
PhaseRate hamilton_rhs_series(const SystemSpec& spec, double x, double p, int n_terms = 16);

/// Canonical rates of the exact Hamiltonian: dx/dt is the inverted
/// velocity (dH/dp collapses to v analytically); dp/dt = -dH/dx by central
/// difference with step 1e-5 * max(1, |x|).
PhaseRate hamilton_rhs_exact(const SystemSpec& spec, double x, double p);

} // namespace invlag
