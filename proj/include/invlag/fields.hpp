#pragma once

#include "invlag/system.hpp"

namespace invlag {

/// Weight, kernel, momentum, Lagrangian, effective potential and constant
/// of motion evaluated at one (x, v).
struct DerivedFields {
    double W;
    double G;
    double p;
    double L;
    double V;
    double K;
};

/// W(x) = exp[-(2/m)(Gamma(x) - alpha2 U(x))]. Throws std::overflow_error
/// when the exponent would overflow a double.
double weight(const SystemSpec& spec, double x);

/// G(x,v) = m W(x) / (1 - alpha2 v^2)^2, the second velocity derivative of
/// the Lagrangian.
double kernel(const SystemSpec& spec, double x, double v);

/// Generalized momentum p = (m/2) [v/(1 - alpha2 v^2) + atanh(alpha v)/alpha] W(x).
double momentum(const SystemSpec& spec, double x, double v);

/// Position-only term V(x) = integral_0^x U'(s) W(s) ds of the Lagrangian;
/// closed form for the constant-force preset, exact U(x) - U(0) when the
/// weight is identically 1, adaptive quadrature otherwise.
double effective_potential(const SystemSpec& spec, double x);

/// L(x,v) = (m v / (2 alpha)) atanh(alpha v) W(x) - V(x).
double lagrangian(const SystemSpec& spec, double x, double v);

/// K(x,v) = (m v^2 / (2 (1 - alpha2 v^2))) W(x) + V(x); conserved along the flow.
double constant_of_motion(const SystemSpec& spec, double x, double v);

/// Lagrangian rebuilt by double integration of the kernel in v (nested
/// adaptive quadrature) minus V(x); agrees with `lagrangian` to quadrature
/// tolerance.
double lagrangian_from_kernel(const SystemSpec& spec, double x, double v);

/// All fields at one point; W and V are evaluated once and shared.
DerivedFields derive_fields(const SystemSpec& spec, double x, double v);

/// Same, from a precomputed W = weight(spec, x) and V = effective_potential(spec, x);
/// grid sweeps reuse these across a row of constant x.
DerivedFields derive_fields_given(const SystemSpec& spec, double v, double W, double V);

/// The velocity bracket v/(1 - alpha2 v^2) + atanh(alpha v)/alpha and its
/// v-derivative 2/(1 - alpha2 v^2)^2.  Switches to the Maclaurin series in
/// s = alpha2 v^2 (limit 2v as alpha -> 0) when s < 1e-8.
double momentum_bracket(double alpha2, double v);
double momentum_bracket_dv(double alpha2, double v);

} // namespace invlag
