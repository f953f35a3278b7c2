#include "invlag/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace invlag {
namespace {

constexpr double kScaleFloor = 1e-30;
constexpr double kEndpointTol = 1e-13;

std::pair<std::vector<double>, std::vector<double>> grid_axes(const SystemSpec& spec,
                                                              const ResidualGrid& grid) {
    double v_lo = grid.v_lo, v_hi = grid.v_hi;
    if (v_lo == 0.0 && v_hi == 0.0) {
        const double vmax = spec.alpha2() > 0.0 ? 0.9 / std::sqrt(spec.alpha2()) : 0.9;
        v_lo = -vmax;
        v_hi = vmax;
    }
    return {linspace(grid.x_lo, grid.x_hi, grid.nx), linspace(v_lo, v_hi, grid.nv)};
}

std::string grid_descriptor(const std::vector<double>& xs, const std::vector<double>& vs) {
    std::ostringstream out;
    out << "grid x[" << xs.front() << "," << xs.back() << "]x" << xs.size() << " v["
        << vs.front() << "," << vs.back() << "]x" << vs.size();
    return out.str();
}

} // namespace

nlohmann::json to_json(const ResidualReport& report) {
    return {{"name", report.name},   {"params", report.descriptor}, {"max_abs", report.max_abs},
            {"max_rel", report.max_rel}, {"tol", report.tol},       {"pass", report.pass}};
}

ResidualReport check_kernel_pde(const SystemSpec& spec, const ResidualGrid& grid, double tol,
                                Fault fault, sweep::Exec exec) {
    const auto [xs, vs] = grid_axes(spec, grid);
    const double eps = fault == Fault::inject ? 1e-3 : 0.0;
    const sweep::ResidualExtrema extrema = sweep::kernel_pde_extrema(spec, xs, vs, eps, exec);
    return {"kernel-pde", grid_descriptor(xs, vs), extrema.max_abs, extrema.max_rel, tol,
            extrema.max_rel <= tol};
}

ResidualReport check_invariant_pde(const SystemSpec& spec, const ResidualGrid& grid, double tol,
                                   Fault fault, sweep::Exec exec) {
    const auto [xs, vs] = grid_axes(spec, grid);
    const sweep::ResidualExtrema extrema =
        sweep::invariant_pde_extrema(spec, xs, vs, fault == Fault::inject, exec);
    return {"invariant-pde", grid_descriptor(xs, vs), extrema.max_abs, extrema.max_rel, tol,
            extrema.max_rel <= tol};
}

ResidualReport check_euler_lagrange(const SystemSpec& spec, const NewtonTrajectory& traj,
                                    double tol, Fault fault) {
    const auto& samples = traj.samples;
    if (samples.size() < 5)
        throw std::invalid_argument("check_euler_lagrange: need at least 5 samples");

    const double bump = fault == Fault::inject ? 1.001 : 1.0;
    std::vector<double> p(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        p[i] = bump * momentum(spec, samples[i].x, samples[i].v);

    double max_abs = 0.0, max_rel = 0.0;
    const double dt = traj.dt;
    for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
        // d/dt by 5-point stencil over the recorded momentum samples
        const double dpdt =
            (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * dt);
        const double x = samples[i].x, v = samples[i].v;
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        const double dLdx = (lagrangian(spec, x + h, v) - lagrangian(spec, x - h, v)) / (2.0 * h);
        const double res = std::abs(dpdt - dLdx);
        const double scale = std::max({std::abs(dpdt), std::abs(dLdx), kScaleFloor});
        max_abs = std::max(max_abs, res);
        max_rel = std::max(max_rel, res / scale);
    }

    std::ostringstream desc;
    desc << "trajectory " << traj.method << " dt=" << dt << " samples=" << samples.size();
    return {"euler-lagrange", desc.str(), max_abs, max_rel, tol, max_rel <= tol};
}

ResidualReport check_limits(const SystemSpec& spec, double x, double v, double slope_tol,
                            Fault fault) {
    const double m = spec.mass();
    const Polynomial& U = spec.potential();
    const double bump = fault == Fault::inject ? 1.001 : 1.0;

    const double shifted_U = U(x) - U(0.0);
    const double L_ref = bump * (0.5 * m * v * v - shifted_U);
    const double p_ref = bump * (m * v);
    const double K_ref = bump * (0.5 * m * v * v + shifted_U);

    const auto errors = [&](double eps) {
        const SystemSpec member = SystemSpec::make(m, eps, U, Polynomial{eps});
        const double eL = std::abs(lagrangian(member, x, v) - L_ref) /
                          std::max(std::abs(L_ref), kScaleFloor);
        const double ep = std::abs(momentum(member, x, v) - p_ref) /
                          std::max(std::abs(p_ref), kScaleFloor);
        const double eK = std::abs(constant_of_motion(member, x, v) - K_ref) /
                          std::max(std::abs(K_ref), kScaleFloor);
        return std::array<double, 3>{eL, ep, eK};
    };

    std::vector<std::array<double, 3>> err_by_k;
    for (int k = 2; k <= 8; ++k) err_by_k.push_back(errors(std::pow(10.0, -k)));

    // fitted slope of log err against log eps for eps = 10^-k, k = 2..8
    double max_slope_dev = 0.0;
    double max_err = 0.0;
    for (std::size_t q = 0; q < 3; ++q) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int n = 0;
        for (int k = 2; k <= 8; ++k) {
            const double err = err_by_k[static_cast<std::size_t>(k - 2)][q];
            max_err = std::max(max_err, err);
            if (err < 1e-14) continue; // already at round-off; exclude from the fit
            const double lx = -k, ly = std::log10(err);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        if (n >= 2) {
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            max_slope_dev = std::max(max_slope_dev, std::abs(slope - 1.0));
        }
    }

    // exact endpoint gamma = alpha2 = 0
    const auto endpoint = errors(0.0);
    const double endpoint_err = std::max({endpoint[0], endpoint[1], endpoint[2]});

    // the machine-precision endpoint requirement is normalized into the
    // slope band so that pass <=> max_rel <= tol
    const double max_rel = std::max(max_slope_dev, endpoint_err * (slope_tol / kEndpointTol));

    std::ostringstream desc;
    desc << "limits at (x,v)=(" << x << "," << v << "), eps=10^-k k=2..8";
    return {"conservative-limits", desc.str(), max_err, max_rel, slope_tol, max_rel <= slope_tol};
}

} // namespace invlag
