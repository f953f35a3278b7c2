#pragma once

#include <functional>
#include <limits>

namespace invlag {

struct RootOptions {
    double rel_tol = 1e-13;
    int max_iter = 200;
    /// Starting point for the Newton iteration; midpoint of the bracket
    /// when NaN or outside (lo, hi).
    double initial = std::numeric_limits<double>::quiet_NaN();
};

/// Root of f on [lo, hi] for strictly monotone f with f(lo) and f(hi) of
/// opposite sign (throws std::invalid_argument otherwise).  Newton steps
/// with the supplied derivative, falling back to bisection whenever a step
/// leaves the bracket or fails to shrink it.
double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& dfdx, double lo, double hi,
                 const RootOptions& opts = {});

} // namespace invlag
