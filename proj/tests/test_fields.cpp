#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "invlag/fields.hpp"
#include "invlag/grid.hpp"
#include "invlag/quadrature.hpp"

using namespace invlag;

namespace {

// m = 1, alpha2 = 1, U = 0, gamma = 0: W == 1 everywhere, V == 0
const SystemSpec unit_weight = SystemSpec::make(1.0, 1.0, {}, {});
// m = 1, conservative harmonic
const SystemSpec harmonic = SystemSpec::make(1.0, 0.0, Polynomial{0.0, 0.0, 0.5}, {});
// m = 1, lambda = 1, gamma = 0.1, alpha2 = 0.01
const SystemSpec preset = SystemSpec::constant_force(1.0, 1.0, 0.1, std::sqrt(150.0));

} // namespace

TEST_CASE("weight: zero exponent gives exactly 1") {
    CHECK(weight(harmonic, 0.37) == 1.0);
    CHECK(weight(unit_weight, -2.0) == 1.0);
}

TEST_CASE("weight: direct evaluation") {
    // exponent = -2 (0.2*1 - 0.1*(-1)) = -0.6
    const SystemSpec s = SystemSpec::make(1.0, 0.1, Polynomial{0.0, -1.0}, Polynomial{0.2});
    CHECK_REL(weight(s, 1.0), 0.5488116360940264, 1e-15);
}

TEST_CASE("weight: constant-force closed form exp(-2x(lambda alpha2 - gamma)/m)") {
    const double k = preset.preset()->decay;
    for (double x : linspace(-1.0, 3.0, 17))
        CHECK_REL(weight(preset, x), std::exp(-2.0 * x * k / preset.mass()), 1e-15);
}

TEST_CASE("weight: exponent overflow is reported") {
    const SystemSpec s = SystemSpec::make(1.0, 0.0, {}, Polynomial{1000.0});
    CHECK_THROWS_AS(weight(s, 1.0), std::overflow_error);
    CHECK_THROWS_AS(weight(s, -1.0), std::overflow_error);
}

TEST_CASE("kernel: conservative case is the bare mass") {
    const SystemSpec s = SystemSpec::make(2.5, 0.0, Polynomial{0.0, 1.0, -0.5}, {});
    CHECK(kernel(s, 0.9, 1.7) == 2.5);
}

TEST_CASE("kernel: direct evaluation") {
    CHECK_REL(kernel(unit_weight, 0.0, 0.5), 1.7777777777777777, 1e-15);
}

TEST_CASE("kernel transport equation with finite-difference d(FG)/dv") {
    // v dG/dx + d(FG)/dv = 0; dG/dx analytic, the product term by central
    // difference
    const double a = std::sqrt(preset.alpha2());
    double worst = 0.0;
    for (double x : linspace(0.0, 2.0, 9)) {
        for (double v : linspace(-0.85 / a, 0.85 / a, 11)) {
            const double dGdx = kernel(preset, x, v) * preset.log_weight_dx()(x);
            const double h = 1e-5 * std::max(1.0, std::abs(v));
            const auto fg = [&](double u) {
                return force(preset, {x, u}) * kernel(preset, x, u);
            };
            const double dFGdv = (fg(v + h) - fg(v - h)) / (2.0 * h);
            const double scale = std::max({std::abs(v * dGdx), std::abs(dFGdv), 1e-30});
            worst = std::max(worst, std::abs(v * dGdx + dFGdv) / scale);
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("momentum: conservative case is m v") {
    const SystemSpec s = SystemSpec::make(3.0, 0.0, {}, {});
    CHECK(momentum(s, 5.0, 0.7) == 3.0 * 0.7);
    CHECK(momentum(s, 5.0, 0.0) == 0.0);
}

TEST_CASE("momentum: direct evaluation and oddness") {
    CHECK_REL(momentum(unit_weight, 0.0, 0.5), 0.6079864055003608, 1e-15);
    CHECK(momentum(unit_weight, 0.3, 0.0) == 0.0);
    for (double v : linspace(0.05, 0.9, 10))
        CHECK_REL(momentum(unit_weight, 0.2, -v), -momentum(unit_weight, 0.2, v), 1e-15);
}

TEST_CASE("momentum bracket: series branch is continuous against a long-double oracle") {
    const auto oracle = [](double alpha2, double v) {
        const long double a = std::sqrt(static_cast<long double>(alpha2));
        const long double lv = v;
        return static_cast<double>(lv / (1.0L - a * a * lv * lv) + std::atanh(a * lv) / a);
    };
    // s = alpha2 v^2 slightly below and above the 1e-8 switch
    for (double v : {0.9e-4, 0.99e-4, 1.01e-4, 1.1e-4})
        CHECK_REL(momentum_bracket(1.0, v), oracle(1.0, v), 1e-14);
    for (double v : {0.9, 1.2}) // alpha2 makes s = 0.81e-8, 1.44e-8
        CHECK_REL(momentum_bracket(1e-8, v), oracle(1e-8, v), 1e-14);
}

TEST_CASE("effective potential: vanishes at the base point") {
    CHECK(effective_potential(preset, 0.0) == 0.0);
    CHECK(effective_potential(harmonic, 0.0) == 0.0);
    const SystemSpec general = SystemSpec::make(1.0, 0.05, Polynomial{0.0, -1.0}, Polynomial{-0.1});
    CHECK(effective_potential(general, 0.0) == 0.0);
}

TEST_CASE("effective potential: conservative case is U(x) - U(0)") {
    const SystemSpec s = SystemSpec::make(1.0, 0.0, Polynomial{3.0, -1.0, 0.5}, {});
    for (double x : linspace(-2.0, 2.0, 9))
        CHECK(effective_potential(s, x) == s.potential()(x) - 3.0);
}

TEST_CASE("effective potential: closed form equals quadrature") {
    // same system built with and without the preset tag; k = -0.05
    const SystemSpec closed = SystemSpec::constant_force(1.0, 1.0, 0.1, std::sqrt(30.0));
    const SystemSpec quad =
        SystemSpec::make(1.0, closed.alpha2(), Polynomial{0.0, -1.0}, Polynomial{-0.1});
    REQUIRE(closed.preset());
    REQUIRE_FALSE(quad.preset());
    // oracle: adaptive quadrature at 1e-13 against the closed form
    CHECK_REL(effective_potential(closed, 1.0), -1.0517091807564762, 1e-13);
    for (double x : linspace(-1.0, 2.0, 13))
        CHECK_REL(effective_potential(closed, x), effective_potential(quad, x), 1e-12);
}

TEST_CASE("effective potential: drag balancing the velocity correction (k -> 0)") {
    // gamma_const = lambda * alpha2 makes the closed form 0/0; the stable
    // evaluation must land on U(x) - U(0) = -lambda x
    const double c = std::sqrt(15.0); // alpha2 ~ 0.1
    const SystemSpec s = SystemSpec::constant_force(1.0, 1.0, 0.1, c);
    CHECK(std::abs(s.preset()->decay) < 1e-15);
    for (double x : {0.5, 1.0, 2.0, -1.0})
        CHECK_REL(effective_potential(s, x), -x, 1e-14);
}

TEST_CASE("lagrangian: conservative case") {
    for (double x : linspace(-1.0, 1.0, 5))
        for (double v : linspace(-2.0, 2.0, 5))
            CHECK(lagrangian(harmonic, x, v) == 0.5 * v * v - 0.5 * x * x);
}

TEST_CASE("lagrangian: direct evaluation") {
    CHECK_REL(lagrangian(unit_weight, 0.0, 0.5), 0.13732653608351372, 1e-15);
}

TEST_CASE("constant of motion: conservative total energy and direct value") {
    for (double x : linspace(-1.0, 1.0, 5))
        for (double v : linspace(-2.0, 2.0, 5))
            CHECK(constant_of_motion(harmonic, x, v) == 0.5 * v * v + 0.5 * x * x);
    CHECK_REL(constant_of_motion(unit_weight, 0.0, 0.5), 1.0 / 6.0, 1e-15);
}

TEST_CASE("Legendre relation K = v p - L") {
    CHECK_REL(0.5 * 0.6079864055003608 - 0.13732653608351372, 1.0 / 6.0, 1e-15);
    const double a = std::sqrt(preset.alpha2());
    for (double x : linspace(0.0, 2.0, 21)) {
        for (double v : linspace(-0.9 / a, 0.9 / a, 21)) {
            const DerivedFields f = derive_fields(preset, x, v);
            CHECK_REL(f.K, v * f.p - f.L, 1e-12);
        }
    }
}

TEST_CASE("constant-force closed forms on a grid") {
    // independently coded expressions for G, p, L, K of the preset system
    const double m = 1.0, lambda = 1.0, gamma = 0.1;
    const double a2 = preset.alpha2();
    const double a = std::sqrt(a2);
    const double k = lambda * a2 - gamma;
    for (double x : linspace(0.0, 2.0, 21)) {
        const double envelope = std::exp(-2.0 * x * k / m);
        const double V = m * lambda / (2.0 * k) * (std::exp(-2.0 * x * k / m) - 1.0);
        for (double v : linspace(-0.9 / a, 0.9 / a, 21)) {
            const double u = 1.0 - a2 * v * v;
            const DerivedFields f = derive_fields(preset, x, v);
            CHECK_REL(f.G, m / (u * u) * envelope, 1e-12);
            CHECK_REL(f.p, 0.5 * m * (v / u + std::atanh(a * v) / a) * envelope, 1e-12);
            CHECK_REL(f.L, 0.5 * m * v * std::atanh(a * v) / a * envelope - V, 1e-12);
            CHECK_REL(f.K, 0.5 * m * v * v / u * envelope + V, 1e-12);
        }
    }
}

TEST_CASE("parity: L and K even in v, p odd in v") {
    const double a = std::sqrt(preset.alpha2());
    for (double x : {0.0, 0.7, 2.0}) {
        for (double v : linspace(0.1, 0.9 / a, 9)) {
            CHECK_REL(lagrangian(preset, x, v), lagrangian(preset, x, -v), 1e-15);
            CHECK_REL(constant_of_motion(preset, x, v), constant_of_motion(preset, x, -v), 1e-15);
            CHECK_REL(momentum(preset, x, v), -momentum(preset, x, -v), 1e-15);
        }
    }
}

TEST_CASE("lagrangian rebuilt from the kernel") {
    SUBCASE("conservative double integral of a constant") {
        const SystemSpec s = SystemSpec::make(2.0, 0.0, {}, {});
        CHECK_REL(lagrangian_from_kernel(s, 0.3, 1.5), 0.5 * 2.0 * 1.5 * 1.5, 1e-12);
    }
    SUBCASE("agrees with the closed form") {
        const double a = std::sqrt(preset.alpha2());
        for (double x : {0.0, 0.7, 2.0})
            for (double v : linspace(-0.9 / a, 0.9 / a, 9))
                CHECK(std::abs(lagrangian_from_kernel(preset, x, v) - lagrangian(preset, x, v)) <=
                      1e-10);
    }
    SUBCASE("empty integral at v = 0") {
        CHECK(lagrangian_from_kernel(preset, 1.3, 0.0) == -effective_potential(preset, 1.3));
    }
}

TEST_CASE("finite-difference consistency of p and G against L") {
    const double a = std::sqrt(preset.alpha2());
    double worst_p = 0.0, worst_G = 0.0;
    for (double x : linspace(0.0, 2.0, 5)) {
        for (double v : linspace(-0.85 / a, 0.85 / a, 9)) {
            const double h1 = 1e-5 * std::max(1.0, std::abs(v));
            const double fd_p =
                (lagrangian(preset, x, v + h1) - lagrangian(preset, x, v - h1)) / (2.0 * h1);
            worst_p = std::max(worst_p, std::abs(fd_p - momentum(preset, x, v)) /
                                            std::max(std::abs(fd_p), 1e-30));
            const double h2 = 1e-4 * std::max(1.0, std::abs(v));
            const double fd_G = (lagrangian(preset, x, v + h2) - 2.0 * lagrangian(preset, x, v) +
                                 lagrangian(preset, x, v - h2)) /
                                (h2 * h2);
            worst_G =
                std::max(worst_G, std::abs(fd_G - kernel(preset, x, v)) / kernel(preset, x, v));
        }
    }
    CHECK(worst_p <= 1e-8);
    CHECK(worst_G <= 1e-6);
}

TEST_CASE("conservative limit is exact at gamma = alpha2 = 0") {
    const SystemSpec s = SystemSpec::make(1.25, 0.0, Polynomial{1.0, -0.5, 0.25}, {});
    for (double x : linspace(-2.0, 2.0, 9)) {
        const double shifted_U = s.potential()(x) - s.potential()(0.0);
        for (double v : linspace(-3.0, 3.0, 9)) {
            CHECK(momentum(s, x, v) == 1.25 * v);
            CHECK(lagrangian(s, x, v) == 0.5 * 1.25 * v * v - shifted_U);
            CHECK(constant_of_motion(s, x, v) == 0.5 * 1.25 * v * v + shifted_U);
        }
    }
}

TEST_CASE("fields reject out-of-domain velocities") {
    CHECK_THROWS_AS(kernel(unit_weight, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(momentum(unit_weight, 0.0, -1.0000001), std::domain_error);
    CHECK_THROWS_AS(lagrangian(unit_weight, 0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(constant_of_motion(unit_weight, 0.0, 1.5), std::domain_error);
}

TEST_CASE("G stays positive across the admissible strip") {
    const double a = std::sqrt(preset.alpha2());
    for (double x : linspace(-1.0, 3.0, 9))
        for (double v : linspace(-0.999 / a, 0.999 / a, 33))
            CHECK(kernel(preset, x, v) > 0.0);
}
