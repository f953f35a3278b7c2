#pragma once

#include <functional>
#include <stdexcept>

namespace invlag {

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 60;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Bisects the worst interval until the summed error estimate meets
/// max(abs_tol, rel_tol*|I|); throws QuadratureError otherwise.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

} // namespace invlag
