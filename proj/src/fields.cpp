#include "invlag/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "invlag/quadrature.hpp"

namespace invlag {
namespace {

// exp(x) overflows a double just above 709.
constexpr double kMaxExponent = 700.0;
// Below this value of s = alpha2 v^2 the closed forms are 0/0-prone and the
// truncated series is accurate to well under 1e-15 relative.
constexpr double kSeriesThreshold = 1e-8;

// expm1(t)/t, series near t = 0.
double expm1_over(double t) {
    if (std::abs(t) < kSeriesThreshold) return 1.0 + t * (0.5 + t / 6.0);
    return std::expm1(t) / t;
}

} // namespace

double weight(const SystemSpec& spec, double x) {
    const double exponent = spec.log_weight()(x);
    if (std::abs(exponent) > kMaxExponent) {
        std::ostringstream msg;
        msg << "weight exponent " << exponent << " at x = " << x
            << " exceeds the representable range (|exponent| > " << kMaxExponent << ")";
        throw std::overflow_error(msg.str());
    }
    return std::exp(exponent);
}

double kernel(const SystemSpec& spec, double x, double v) {
    spec.require_velocity(v);
    const double u = 1.0 - spec.alpha2() * v * v;
    return spec.mass() * weight(spec, x) / (u * u);
}

double momentum_bracket(double alpha2, double v) {
    const double s = alpha2 * v * v;
    if (s < kSeriesThreshold)
        // sum of (2n+2)/(2n+1) s^n v, first three terms
        return v * (2.0 + s * (4.0 / 3.0 + s * (6.0 / 5.0)));
    const double alpha = std::sqrt(alpha2);
    return v / (1.0 - s) + std::atanh(alpha * v) / alpha;
}

double momentum_bracket_dv(double alpha2, double v) {
    const double u = 1.0 - alpha2 * v * v;
    return 2.0 / (u * u);
}

double momentum(const SystemSpec& spec, double x, double v) {
    spec.require_velocity(v);
    return 0.5 * spec.mass() * momentum_bracket(spec.alpha2(), v) * weight(spec, x);
}

double effective_potential(const SystemSpec& spec, double x) {
    if (spec.preset()) {
        // (m lambda / (2k)) (exp(-2 k x / m) - 1), stable through k -> 0
        // where it reduces to U(x) - U(0) = -lambda x.
        const Preset& ps = *spec.preset();
        const double t = -2.0 * ps.decay * x / spec.mass();
        return -ps.lambda * x * expm1_over(t);
    }
    if (spec.log_weight().is_zero()) // W == 1: the integral of U' is exact
        return spec.potential()(x) - spec.potential()(0.0);
    return integrate([&spec](double s) { return spec.potential_dx()(s) * weight(spec, s); }, 0.0,
                     x);
}

double lagrangian(const SystemSpec& spec, double x, double v) {
    spec.require_velocity(v);
    const double s = spec.alpha2() * v * v;
    double kinetic;
    if (s < kSeriesThreshold) {
        // (m v^2 / 2) sum s^n/(2n+1), first three terms
        kinetic = 0.5 * spec.mass() * v * v * (1.0 + s * (1.0 / 3.0 + s / 5.0));
    } else {
        const double alpha = std::sqrt(spec.alpha2());
        kinetic = 0.5 * spec.mass() * v / alpha * std::atanh(alpha * v);
    }
    return kinetic * weight(spec, x) - effective_potential(spec, x);
}

double constant_of_motion(const SystemSpec& spec, double x, double v) {
    spec.require_velocity(v);
    const double u = 1.0 - spec.alpha2() * v * v;
    return 0.5 * spec.mass() * v * v / u * weight(spec, x) + effective_potential(spec, x);
}

double lagrangian_from_kernel(const SystemSpec& spec, double x, double v) {
    spec.require_velocity(v);
    QuadratureOptions inner{1e-13, 1e-11, 60};
    const auto inner_integral = [&](double w) {
        return integrate([&](double u) { return kernel(spec, x, u); }, 0.0, w, inner);
    };
    const double twice_integrated = integrate(inner_integral, 0.0, v);
    return twice_integrated - effective_potential(spec, x);
}

DerivedFields derive_fields_given(const SystemSpec& spec, double v, double W, double V) {
    spec.require_velocity(v);
    const double m = spec.mass();
    const double s = spec.alpha2() * v * v;
    const double u = 1.0 - s;

    double kinetic;
    if (s < kSeriesThreshold) {
        kinetic = 0.5 * m * v * v * (1.0 + s * (1.0 / 3.0 + s / 5.0));
    } else {
        const double alpha = std::sqrt(spec.alpha2());
        kinetic = 0.5 * m * v / alpha * std::atanh(alpha * v);
    }

    DerivedFields f;
    f.W = W;
    f.G = m * W / (u * u);
    f.p = 0.5 * m * momentum_bracket(spec.alpha2(), v) * W;
    f.V = V;
    f.L = kinetic * W - V;
    f.K = 0.5 * m * v * v / u * W + V;
    return f;
}

DerivedFields derive_fields(const SystemSpec& spec, double x, double v) {
    return derive_fields_given(spec, v, weight(spec, x), effective_potential(spec, x));
}

} // namespace invlag
