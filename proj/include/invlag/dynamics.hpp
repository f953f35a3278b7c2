#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invlag/inversion.hpp"

namespace invlag {

enum class FlowStatus { completed, domain_exit };

struct NewtonSample {
    double t, x, v;
};

struct HamiltonSample {
    double t, x, p, v; // v recovered from (x, p) by momentum inversion
};

/// Fixed-step trajectory; t is uniform with spacing dt and every step is
/// recorded.  On domain_exit the samples end at the last admissible state
/// and exit_time reports where integration stopped.
struct NewtonTrajectory {
    std::vector<NewtonSample> samples;
    double dt = 0.0;
    std::string method;
    FlowStatus status = FlowStatus::completed;
    double exit_time = 0.0;
};

struct HamiltonTrajectory {
    std::vector<HamiltonSample> samples;
    double dt = 0.0;
    std::string method;
    FlowStatus status = FlowStatus::completed;
    double exit_time = 0.0;
};

struct HamiltonMode {
    enum class Kind { exact, series };
    Kind kind = Kind::exact;
    int n_terms = 16;
};

/// Classical RK4 on dx/dt = v, dv/dt = F(x, v).  A stage leaving the
/// velocity domain rejects the step and stops with FlowStatus::domain_exit.
/// The interval is truncated to a whole number of steps.
NewtonTrajectory integrate_newton(const SystemSpec& spec, State s0, double dt, double t_end);

/// RK4 on the canonical rates of the exact or series Hamiltonian.  Series
/// mode additionally stops (domain_exit) when a stage leaves x > 0, p > 0.
HamiltonTrajectory integrate_hamilton(const SystemSpec& spec, PhasePoint q0, double dt,
                                      double t_end, HamiltonMode mode = {});

/// Deviation of the constant of motion along a trajectory.  The relative
/// drift is normalized by the trajectory's energy scale: K can be 0 exactly
/// (kinetic and potential parts cancel) while its constituents are large,
/// so the denominator is max(|K0|, max_t |K - V| (kinetic part), 1e-30).
struct DriftReport {
    double K0 = 0.0;
    double max_abs_drift = 0.0;
    double scale = 0.0;
    double rel_drift = 0.0;
};

DriftReport drift_report(const SystemSpec& spec, const NewtonTrajectory& traj);
DriftReport drift_report(const SystemSpec& spec, const HamiltonTrajectory& traj);

} // namespace invlag
