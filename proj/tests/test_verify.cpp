#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "invlag/verify.hpp"

using namespace invlag;

namespace {

const SystemSpec harmonic = SystemSpec::make(1.0, 0.0, Polynomial{0.0, 0.0, 0.5}, {});
const SystemSpec preset = SystemSpec::constant_force(1.0, 1.0, 0.1, std::sqrt(150.0));
// quadratic potential with linear drag, everything nontrivial
const SystemSpec mixed =
    SystemSpec::make(1.5, 0.04, Polynomial{0.0, 0.0, 0.5}, Polynomial{0.1, 0.05});

} // namespace

TEST_CASE("kernel transport residual") {
    SUBCASE("conservative system is zero to round-off") {
        const ResidualReport r = check_kernel_pde(harmonic, {});
        CHECK(r.pass);
        CHECK(r.max_abs <= 1e-14);
    }
    SUBCASE("preset and mixed systems pass at 1e-10") {
        for (const SystemSpec* s : {&preset, &mixed}) {
            const ResidualReport r = check_kernel_pde(*s, {});
            CHECK(r.pass);
            CHECK(r.max_rel <= 1e-10);
        }
    }
    SUBCASE("a perturbed kernel is caught") {
        const ResidualReport r = check_kernel_pde(preset, {}, 1e-10, Fault::inject);
        CHECK_FALSE(r.pass);
        CHECK(r.max_rel > 1e-4);
    }
}

TEST_CASE("constant-of-motion transport residual") {
    SUBCASE("conservative system") {
        const ResidualReport r = check_invariant_pde(harmonic, {});
        CHECK(r.pass);
        CHECK(r.max_abs <= 1e-14);
    }
    SUBCASE("preset and mixed systems pass at 1e-10") {
        for (const SystemSpec* s : {&preset, &mixed}) {
            const ResidualReport r = check_invariant_pde(*s, {});
            CHECK(r.pass);
        }
    }
    SUBCASE("flipping the potential term is caught") {
        const ResidualReport r = check_invariant_pde(preset, {}, 1e-10, Fault::inject);
        CHECK_FALSE(r.pass);
    }
}

TEST_CASE("euler-lagrange residual along trajectories") {
    SUBCASE("harmonic: dp/dt = -x") {
        const NewtonTrajectory traj = integrate_newton(harmonic, {1.0, 0.0}, 1e-3, 10.0);
        const ResidualReport r = check_euler_lagrange(harmonic, traj);
        CHECK(r.pass);
        CHECK(r.max_abs <= 1e-8);
    }
    SUBCASE("preset trajectory passes at 1e-6") {
        const NewtonTrajectory traj = integrate_newton(preset, {0.0, 0.0}, 1e-3, 10.0);
        const ResidualReport r = check_euler_lagrange(preset, traj);
        CHECK(r.pass);
        CHECK(r.max_rel <= 1e-6);
    }
    SUBCASE("the residual stays under tolerance across step sizes") {
        // the stencil contribution is below the x-difference floor here, so
        // refinement keeps the residual flat rather than shrinking it
        for (double dt : {4e-3, 2e-3, 1e-3}) {
            const NewtonTrajectory traj = integrate_newton(preset, {0.0, 0.0}, dt, 2.0);
            CHECK(check_euler_lagrange(preset, traj).max_rel <= 1e-6);
        }
    }
    SUBCASE("zero-force trajectory: both sides vanish") {
        const SystemSpec free = SystemSpec::make(1.0, 0.3, Polynomial{2.5}, {});
        const NewtonTrajectory traj = integrate_newton(free, {0.0, 1.0}, 1e-3, 2.0);
        const ResidualReport r = check_euler_lagrange(free, traj);
        CHECK(r.max_abs <= 1e-10);
    }
    SUBCASE("scaled momentum samples are caught") {
        const NewtonTrajectory traj = integrate_newton(preset, {0.0, 0.0}, 1e-3, 2.0);
        const ResidualReport r = check_euler_lagrange(preset, traj, 1e-6, Fault::inject);
        CHECK_FALSE(r.pass);
    }
    SUBCASE("too few samples") {
        NewtonTrajectory tiny;
        tiny.dt = 1e-3;
        tiny.samples = {{0.0, 0.0, 0.0}, {1e-3, 0.0, 0.0}};
        CHECK_THROWS_AS(check_euler_lagrange(preset, tiny), std::invalid_argument);
    }
}

TEST_CASE("conservative limits") {
    SUBCASE("harmonic potential family converges at first order") {
        const ResidualReport r = check_limits(harmonic, 1.0, 0.5);
        CHECK(r.pass);
        CHECK(r.max_rel <= 0.2);
    }
    SUBCASE("error ratio between k = 4 and k = 8 is about 1e4") {
        const auto err = [](int k) {
            const double eps = std::pow(10.0, -k);
            const SystemSpec member =
                SystemSpec::make(1.0, eps, Polynomial{0.0, 0.0, 0.5}, Polynomial{eps});
            return std::abs(lagrangian(member, 1.0, 0.5) - (0.5 * 0.25 - 0.5));
        };
        const double ratio = err(4) / err(8);
        CHECK(ratio >= std::pow(10.0, 3.5));
        CHECK(ratio <= std::pow(10.0, 4.5));
    }
    SUBCASE("the effective potential approaches U - U(0)") {
        for (int k : {2, 4, 6}) {
            const double eps = std::pow(10.0, -k);
            const SystemSpec member =
                SystemSpec::make(1.0, eps, Polynomial{0.0, 0.0, 0.5}, Polynomial{eps});
            CHECK(std::abs(effective_potential(member, 1.0) - 0.5) <= 10.0 * eps);
        }
    }
    SUBCASE("a biased reference is caught") {
        const ResidualReport r = check_limits(harmonic, 1.0, 0.5, 0.2, Fault::inject);
        CHECK_FALSE(r.pass);
    }
}

TEST_CASE("reports are deterministic and serialize with the agreed keys") {
    const ResidualReport a = check_kernel_pde(preset, {});
    const ResidualReport b = check_kernel_pde(preset, {});
    CHECK(to_json(a).dump() == to_json(b).dump());

    const nlohmann::json j = to_json(a);
    for (const char* key : {"name", "params", "max_abs", "max_rel", "tol", "pass"})
        CHECK(j.contains(key));
    CHECK(j["pass"].is_boolean());
    CHECK(j["name"] == "kernel-pde");
}

TEST_CASE("tolerances are caller-overridable") {
    // an absurdly tight tolerance must flip the verdict, nothing else
    const ResidualReport strict = check_kernel_pde(preset, {}, 1e-20);
    CHECK_FALSE(strict.pass);
    const ResidualReport loose = check_kernel_pde(preset, {}, 1e-10);
    CHECK(loose.pass);
    CHECK(strict.max_rel == loose.max_rel);
}
