#include "invlag/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "invlag/rootfind.hpp"

namespace invlag {
namespace {

constexpr double kTermCutoff = 1e-15;

const Preset& require_preset(const SystemSpec& spec, const char* op) {
    if (!spec.preset()) {
        std::ostringstream msg;
        msg << op << ": supported for the constant-force system only";
        throw std::invalid_argument(msg.str());
    }
    return *spec.preset();
}

void require_quadrant(double x, double p, const char* op) {
    if (!(x > 0.0) || !(p > 0.0)) {
        std::ostringstream msg;
        msg << op << ": requires x > 0 and p > 0 (got x = " << x << ", p = " << p << ")";
        throw std::domain_error(msg.str());
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

double velocity_from_momentum(const SystemSpec& spec, double x, double p) {
    const double W = weight(spec, x);
    const double m = spec.mass();
    if (spec.alpha2() == 0.0) return p / (m * W); // bracket is exactly 2v
    if (p == 0.0) return 0.0;

    // Solve bracket(v) = 2p/(mW); the common weight factor is divided out.
    const double target = 2.0 * p / (m * W);
    const double vmax = spec.v_max();
    const double lo = p > 0.0 ? 0.0 : -vmax;
    const double hi = p > 0.0 ? vmax : 0.0;

    const auto f = [&](double v) { return momentum_bracket(spec.alpha2(), v) - target; };
    if (!std::isfinite(f(lo)) || !std::isfinite(f(hi))) {
        std::ostringstream msg;
        msg << "velocity_from_momentum: bracket endpoints overflow at x = " << x
            << ", p = " << p;
        throw std::range_error(msg.str());
    }

    RootOptions opts;
    opts.initial = std::clamp(0.5 * target, -0.9 * vmax, 0.9 * vmax); // bracket ~ 2v near 0
    return find_root(f, [&](double v) { return momentum_bracket_dv(spec.alpha2(), v); }, lo, hi,
                     opts);
}

double hamiltonian(const SystemSpec& spec, double x, double p) {
    return constant_of_motion(spec, x, velocity_from_momentum(spec, x, p));
}

double series_velocity_power(const SystemSpec& spec, double x, double p, int n) {
    const Preset& ps = require_preset(spec, "series_velocity_power");
    if (n < 0) throw std::invalid_argument("series_velocity_power: n must be >= 0");
    if (n >= 1) require_quadrant(x, p, "series_velocity_power");

    const double m = spec.mass();
    const double base = p / m * std::exp(-2.0 * ps.gamma_const * x / m);
    if (n == 0) return base;
    return (2.0 * n + 1.0) / factorial(n + 1) * std::pow(2.0 * ps.lambda * x / m, n) * base;
}

SeriesTerms series_hamiltonian(const SystemSpec& spec, double x, double p, int n_terms) {
    const Preset& ps = require_preset(spec, "series_hamiltonian");
    if (n_terms < 1) throw std::invalid_argument("series_hamiltonian: n_terms must be >= 1");
    require_quadrant(x, p, "series_hamiltonian");

    const double m = spec.mass();
    const double envelope = std::exp(-2.0 * x * ps.decay / m);
    const double a2 = spec.alpha2();

    SeriesTerms out;
    double sum = 0.0;
    double a2n = 1.0; // alpha2^n
    for (int n = 0; n < n_terms; ++n, a2n *= a2) {
        const double odd_power = series_velocity_power(spec, x, p, n);
        const double v_even = std::pow(odd_power, (2.0 * n + 2.0) / (2.0 * n + 1.0));
        const double term = a2n * v_even;
        if (!std::isfinite(term)) {
            std::ostringstream msg;
            msg << "series_hamiltonian: non-finite term at n = " << n;
            throw std::range_error(msg.str());
        }
        sum += term;
        out.terms.push_back(term);
        if (std::abs(term) < kTermCutoff * std::abs(sum)) break;
    }
    out.value = 0.5 * m * envelope * sum + effective_potential(spec, x);
    return out;
}

PhaseRate hamilton_rhs_series(const SystemSpec& spec, double x, double p, int n_terms) {
    const Preset& ps = require_preset(spec, "hamilton_rhs_series");
    if (n_terms < 1) throw std::invalid_argument("hamilton_rhs_series: n_terms must be >= 1");
    require_quadrant(x, p, "hamilton_rhs_series");

    const double m = spec.mass();
    const double a2 = spec.alpha2();
    const double lambda = ps.lambda;
    const double gamma = ps.gamma_const;
    const double w = 2.0 * lambda * x / m;       // recurring 2 lambda x / m
    const double eg = std::exp(-2.0 * gamma * x / m);
    const double erel = std::exp(-lambda * a2 * 2.0 * x / m);

    double sum_x = 0.0;    // velocity series
    double sum_p1 = 0.0;   // sum alpha2^n inner^{(2n+2)/(2n+1)}
    double sum_p2 = 0.0;   // sum alpha2^n/n! [-gamma w^n + lambda n w^{n-1}] inner^{1/(2n+1)}
    double a2n = 1.0;
    for (int n = 0; n < n_terms; ++n, a2n *= a2) {
        const double nfact = factorial(n);
        const double inner =
            (2.0 * n + 1.0) * p * eg / (factorial(n + 1) * m) * std::pow(w, n);
        const double root = std::pow(inner, 1.0 / (2.0 * n + 1.0));
        const double even = std::pow(inner, (2.0 * n + 2.0) / (2.0 * n + 1.0));

        sum_x += std::pow(a2 * w, n) / nfact * root;
        sum_p1 += a2n * even;
        const double poly = -gamma * std::pow(w, n) + (n > 0 ? lambda * n * std::pow(w, n - 1) : 0.0);
        sum_p2 += a2n / nfact * poly * root;
    }

    PhaseRate rate;
    rate.dx_dt = erel * sum_x;
    rate.dp_dt = std::exp(-2.0 * x * ps.decay / m) * (lambda + ps.decay * sum_p1) -
                 2.0 * p / m * erel * sum_p2;
    if (!std::isfinite(rate.dx_dt) || !std::isfinite(rate.dp_dt))
        throw std::range_error("hamilton_rhs_series: non-finite rate");
    return rate;
}

PhaseRate hamilton_rhs_exact(const SystemSpec& spec, double x, double p) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    PhaseRate rate;
    rate.dx_dt = velocity_from_momentum(spec, x, p);
    rate.dp_dt = -(hamiltonian(spec, x + h, p) - hamiltonian(spec, x - h, p)) / (2.0 * h);
    return rate;
}

} // namespace invlag
