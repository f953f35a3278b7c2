#pragma once

#include <optional>

#include "invlag/polynomial.hpp"

namespace invlag {

/// Velocities with |alpha*v| > 1 - kVelocityMargin are rejected; the
/// kernel and momentum diverge on the boundary |alpha*v| = 1.
inline constexpr double kVelocityMargin = 1e-9;

/// Lagrangian-side coordinates.
struct State {
    double x;
    double v;
};

/// Hamiltonian-side coordinates (p is the generalized momentum).
struct PhasePoint {
    double x;
    double p;
};

/// Constant-force / quadratic-drag parameters: U(x) = -lambda x,
/// gamma(x) = -gamma_const. `decay` is lambda*alpha2 - gamma_const, the
/// rate in the closed-form weight exp(-2 x decay / m).
struct Preset {
    double lambda;
    double gamma_const;
    double decay;
};

/// Problem definition for m dv/dt = (-U'(x) + gamma(x) v^2)(1 - alpha2 v^2).
/// Immutable after construction; safe to share between threads.
class SystemSpec {
public:
    /// General polynomial system. Requires mass > 0 and alpha2 >= 0.
    static SystemSpec make(double mass, double alpha2, Polynomial potential, Polynomial drag);

    /// Constant force lambda > 0 with quadratic drag gamma_const >= 0 at
    /// light speed c (alpha2 = 3/(2 c^2); c may be +inf for alpha2 = 0).
    static SystemSpec constant_force(double mass, double lambda, double gamma_const, double c);

    double mass() const { return mass_; }
    double alpha2() const { return alpha2_; }
    const Polynomial& potential() const { return potential_; }
    const Polynomial& potential_dx() const { return potential_dx_; }
    const Polynomial& drag() const { return drag_; }
    /// Antiderivative of the drag polynomial, vanishing at x = 0.
    const Polynomial& drag_antiderivative() const { return drag_anti_; }
    /// Exponent of the weight: -(2/m) (Gamma(x) - alpha2 U(x)).
    const Polynomial& log_weight() const { return log_weight_; }
    const Polynomial& log_weight_dx() const { return log_weight_dx_; }
    const std::optional<Preset>& preset() const { return preset_; }

    /// Largest admissible |v|; +inf when alpha2 == 0.
    double v_max() const { return v_max_; }
    bool in_velocity_domain(double v) const;
    /// Throws std::domain_error when |alpha*v| > 1 - kVelocityMargin.
    void require_velocity(double v) const;

private:
    SystemSpec() = default;

    double mass_ = 1.0;
    double alpha2_ = 0.0;
    double v_max_ = 0.0;
    Polynomial potential_;
    Polynomial potential_dx_;
    Polynomial drag_;
    Polynomial drag_anti_;
    Polynomial log_weight_;
    Polynomial log_weight_dx_;
    std::optional<Preset> preset_;
};

/// Acceleration (-U'(x) + gamma(x) v^2)(1 - alpha2 v^2) / m.
double force(const SystemSpec& spec, const State& s);

} // namespace invlag
