#include "invlag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace invlag {
namespace {

constexpr std::int64_t kMaxSamples = 10'000'000;
constexpr double kDriftFloor = 1e-30;

std::int64_t step_count(double dt, double t_end) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    // truncate a trailing partial step
    const auto n = static_cast<std::int64_t>(std::floor(t_end / dt + 1e-9));
    if (n + 1 > kMaxSamples) throw std::invalid_argument("integrate: more than 1e7 samples requested");
    return n;
}

} // namespace

NewtonTrajectory integrate_newton(const SystemSpec& spec, State s0, double dt, double t_end) {
    const std::int64_t n_steps = step_count(dt, t_end);
    spec.require_velocity(s0.v);

    NewtonTrajectory traj;
    traj.dt = dt;
    traj.method = "rk4-newton";
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.samples.push_back({0.0, s0.x, s0.v});

    double x = s0.x, v = s0.v;
    for (std::int64_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        bool ok = true;
        const auto accel = [&](double xs, double vs) -> double {
            if (!spec.in_velocity_domain(vs)) {
                ok = false;
                return 0.0;
            }
            return force(spec, {xs, vs});
        };

        const double k1x = v, k1v = accel(x, v);
        const double k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const double k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const double k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
        const double xn = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        const double vn = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        if (!ok || !spec.in_velocity_domain(vn)) {
            traj.status = FlowStatus::domain_exit;
            traj.exit_time = t;
            return traj;
        }
        x = xn;
        v = vn;
        traj.samples.push_back({static_cast<double>(i + 1) * dt, x, v});
    }
    traj.exit_time = static_cast<double>(n_steps) * dt;
    return traj;
}

HamiltonTrajectory integrate_hamilton(const SystemSpec& spec, PhasePoint q0, double dt,
                                      double t_end, HamiltonMode mode) {
    const std::int64_t n_steps = step_count(dt, t_end);
    const bool series = mode.kind == HamiltonMode::Kind::series;
    if (series && !spec.preset())
        throw std::invalid_argument("integrate_hamilton: series mode requires the constant-force system");

    HamiltonTrajectory traj;
    traj.dt = dt;
    traj.method = series ? "rk4-hamilton-series" : "rk4-hamilton-exact";
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

    const auto companion_v = [&](double xs, double ps) {
        return velocity_from_momentum(spec, xs, ps);
    };
    if (series && !(q0.x > 0.0 && q0.p > 0.0))
        throw std::domain_error("integrate_hamilton: series mode requires x0 > 0 and p0 > 0");
    traj.samples.push_back({0.0, q0.x, q0.p, companion_v(q0.x, q0.p)});

    double x = q0.x, p = q0.p;
    for (std::int64_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        bool ok = true;
        const auto rate = [&](double xs, double ps) -> PhaseRate {
            if (series && !(xs > 0.0 && ps > 0.0)) {
                ok = false;
                return {0.0, 0.0};
            }
            return series ? hamilton_rhs_series(spec, xs, ps, mode.n_terms)
                          : hamilton_rhs_exact(spec, xs, ps);
        };

        const PhaseRate k1 = rate(x, p);
        const PhaseRate k2 = rate(x + 0.5 * dt * k1.dx_dt, p + 0.5 * dt * k1.dp_dt);
        const PhaseRate k3 = rate(x + 0.5 * dt * k2.dx_dt, p + 0.5 * dt * k2.dp_dt);
        const PhaseRate k4 = rate(x + dt * k3.dx_dt, p + dt * k3.dp_dt);
        const double xn = x + dt / 6.0 * (k1.dx_dt + 2.0 * k2.dx_dt + 2.0 * k3.dx_dt + k4.dx_dt);
        const double pn = p + dt / 6.0 * (k1.dp_dt + 2.0 * k2.dp_dt + 2.0 * k3.dp_dt + k4.dp_dt);

        if (!ok || (series && !(xn > 0.0 && pn > 0.0))) {
            traj.status = FlowStatus::domain_exit;
            traj.exit_time = t;
            return traj;
        }
        x = xn;
        p = pn;
        traj.samples.push_back({static_cast<double>(i + 1) * dt, x, p, companion_v(x, p)});
    }
    traj.exit_time = static_cast<double>(n_steps) * dt;
    return traj;
}

namespace {

template <typename Samples, typename XV>
DriftReport drift_over(const SystemSpec& spec, const Samples& samples, XV&& coords) {
    if (samples.empty()) throw std::invalid_argument("drift_report: empty trajectory");

    const auto kinetic_part = [&](double x, double v) {
        const double u = 1.0 - spec.alpha2() * v * v;
        return 0.5 * spec.mass() * v * v / u * weight(spec, x);
    };

    DriftReport report;
    {
        const auto [x0, v0] = coords(samples.front());
        report.K0 = constant_of_motion(spec, x0, v0);
    }
    for (const auto& s : samples) {
        const auto [x, v] = coords(s);
        report.max_abs_drift =
            std::max(report.max_abs_drift, std::abs(constant_of_motion(spec, x, v) - report.K0));
        report.scale = std::max(report.scale, std::abs(kinetic_part(x, v)));
    }
    report.rel_drift =
        report.max_abs_drift / std::max({std::abs(report.K0), report.scale, kDriftFloor});
    return report;
}

} // namespace

DriftReport drift_report(const SystemSpec& spec, const NewtonTrajectory& traj) {
    return drift_over(spec, traj.samples,
                      [](const NewtonSample& s) { return std::pair{s.x, s.v}; });
}

DriftReport drift_report(const SystemSpec& spec, const HamiltonTrajectory& traj) {
    return drift_over(spec, traj.samples,
                      [](const HamiltonSample& s) { return std::pair{s.x, s.v}; });
}

} // namespace invlag
