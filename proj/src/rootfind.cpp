#include "invlag/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invlag {

double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& dfdx, double lo, double hi,
                 const RootOptions& opts) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw std::invalid_argument("find_root: endpoints do not bracket a sign change");
    if (flo > 0.0) {
        std::swap(lo, hi);
        std::swap(flo, fhi);
    }
    // invariant: f(lo) < 0 < f(hi)

    double x = opts.initial;
    if (!std::isfinite(x) || !((x > lo && x < hi) || (x > hi && x < lo))) x = 0.5 * (lo + hi);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (fx < 0.0)
            lo = x;
        else
            hi = x;

        const double width = std::abs(hi - lo);
        if (width <= opts.rel_tol * std::max(std::abs(lo), std::abs(hi))) return x;

        const double d = dfdx(x);
        double next = x - fx / d;
        const bool inside = d != 0.0 && std::isfinite(next) &&
                            ((next > lo && next < hi) || (next > hi && next < lo));
        if (!inside) next = 0.5 * (lo + hi);

        if (std::abs(next - x) <= opts.rel_tol * std::max(1e-300, std::abs(next))) return next;
        x = next;
    }
    return x;
}

} // namespace invlag
