#include "invlag/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace invlag {

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> pts(static_cast<std::size_t>(n));
    if (n == 1) {
        pts[0] = lo;
        return pts;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = lo + step * i;
    pts.back() = hi;
    return pts;
}

namespace sweep {
namespace {

constexpr double kScaleFloor = 1e-30;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::vector<DeriveRow> derive_table(const SystemSpec& spec, const std::vector<double>& xs,
                                    const std::vector<double>& vs, Exec exec) {
    for (double v : vs) spec.require_velocity(v);
    const auto nx = static_cast<std::int64_t>(xs.size());
    const auto nv = static_cast<std::int64_t>(vs.size());
    std::vector<DeriveRow> table(static_cast<std::size_t>(nx * nv));

    const auto row = [&](std::int64_t i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double W = weight(spec, x);
        const double V = effective_potential(spec, x);
        for (std::int64_t j = 0; j < nv; ++j) {
            const double v = vs[static_cast<std::size_t>(j)];
            table[static_cast<std::size_t>(i * nv + j)] = {x, v, derive_fields_given(spec, v, W, V)};
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    }
    return table;
}

std::vector<HamiltonianRow> hamiltonian_table(const SystemSpec& spec,
                                              const std::vector<double>& xs,
                                              const std::vector<double>& ps,
                                              const HamiltonianTableOptions& opts, Exec exec) {
    if (opts.with_series && !spec.preset())
        throw std::invalid_argument("hamiltonian_table: series columns require the constant-force system");
    const auto nx = static_cast<std::int64_t>(xs.size());
    const auto np = static_cast<std::int64_t>(ps.size());
    std::vector<HamiltonianRow> table(static_cast<std::size_t>(nx * np));

    const auto row = [&](std::int64_t i) {
        const double x = xs[static_cast<std::size_t>(i)];
        for (std::int64_t j = 0; j < np; ++j) {
            const double p = ps[static_cast<std::size_t>(j)];
            HamiltonianRow& cell = table[static_cast<std::size_t>(i * np + j)];
            cell.x = x;
            cell.p = p;
            cell.v = velocity_from_momentum(spec, x, p);
            cell.H = constant_of_motion(spec, x, cell.v);
            if (!opts.with_series) continue;
            cell.series_domain_ok = x > 0.0 && p > 0.0;
            if (cell.series_domain_ok) {
                const SeriesTerms series = series_hamiltonian(spec, x, p, opts.n_terms);
                cell.H_series = series.value;
                cell.discrepancy = series.value - cell.H;
                cell.last_term = series.terms.back();
                cell.terms_used = static_cast<int>(series.terms.size());
            } else {
                cell.H_series = kNaN;
                cell.discrepancy = kNaN;
                cell.last_term = kNaN;
                cell.terms_used = 0;
            }
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    }
    return table;
}

std::vector<RoundTripRow> roundtrip_table(const SystemSpec& spec, const std::vector<double>& xs,
                                          const std::vector<double>& vs, Exec exec) {
    for (double v : vs) spec.require_velocity(v);
    const auto nx = static_cast<std::int64_t>(xs.size());
    const auto nv = static_cast<std::int64_t>(vs.size());
    std::vector<RoundTripRow> table(static_cast<std::size_t>(nx * nv));

    const auto row = [&](std::int64_t i) {
        const double x = xs[static_cast<std::size_t>(i)];
        for (std::int64_t j = 0; j < nv; ++j) {
            const double v = vs[static_cast<std::size_t>(j)];
            RoundTripRow& cell = table[static_cast<std::size_t>(i * nv + j)];
            cell.x = x;
            cell.v = v;
            cell.p = momentum(spec, x, v);
            cell.v_back = velocity_from_momentum(spec, x, cell.p);
            cell.rel_err = std::abs(cell.v_back - v) / std::max(std::abs(v), kScaleFloor);
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    }
    return table;
}

ResidualExtrema kernel_pde_extrema(const SystemSpec& spec, const std::vector<double>& xs,
                                   const std::vector<double>& vs, double kernel_fault,
                                   Exec exec) {
    for (double v : vs) spec.require_velocity(v);
    const auto nx = static_cast<std::int64_t>(xs.size());
    const double a2 = spec.alpha2();
    const double m = spec.mass();

    double max_abs = 0.0, max_rel = 0.0;

    const auto row = [&](std::int64_t i, double& row_abs, double& row_rel) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double W = weight(spec, x);
        const double log_w_dx = spec.log_weight_dx()(x);
        const double gamma_x = spec.drag()(x);
        const double u_dx = spec.potential_dx()(x);
        for (double v : vs) {
            const double u = 1.0 - a2 * v * v;
            const double G = m * W / (u * u);
            // v dG/dx and d(FG)/dv, both closed-form for polynomial U, gamma
            double term_a = v * G * log_w_dx;
            double term_b = 2.0 * v * W * (gamma_x - a2 * u_dx) / (u * u);
            if (kernel_fault != 0.0) {
                const double bump = 1.0 + kernel_fault * v * v;
                const double F = (-u_dx + gamma_x * v * v) * u / m;
                term_b = term_b * bump + 2.0 * kernel_fault * v * F * G;
                term_a *= bump;
            }
            const double res = std::abs(term_a + term_b);
            const double scale = std::max({std::abs(term_a), std::abs(term_b), kScaleFloor});
            row_abs = std::max(row_abs, res);
            row_rel = std::max(row_rel, res / scale);
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(max : max_abs, max_rel)
        for (std::int64_t i = 0; i < nx; ++i) row(i, max_abs, max_rel);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i, max_abs, max_rel);
    }
    return {max_abs, max_rel};
}

ResidualExtrema invariant_pde_extrema(const SystemSpec& spec, const std::vector<double>& xs,
                                      const std::vector<double>& vs, bool flip_potential,
                                      Exec exec) {
    for (double v : vs) spec.require_velocity(v);
    const auto nx = static_cast<std::int64_t>(xs.size());
    const double a2 = spec.alpha2();
    const double m = spec.mass();
    const double sign = flip_potential ? -1.0 : 1.0;

    double max_abs = 0.0, max_rel = 0.0;

    const auto row = [&](std::int64_t i, double& row_abs, double& row_rel) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double W = weight(spec, x);
        const double log_w_dx = spec.log_weight_dx()(x);
        const double gamma_x = spec.drag()(x);
        const double u_dx = spec.potential_dx()(x);
        for (double v : vs) {
            const double u = 1.0 - a2 * v * v;
            const double kinetic = 0.5 * m * v * v / u * W;
            // dK/dx = kinetic * dlogW/dx + sign * U' W,  dK/dv = m W v / u^2
            const double k_dx = kinetic * log_w_dx + sign * u_dx * W;
            const double k_dv = m * W * v / (u * u);
            const double F = (-u_dx + gamma_x * v * v) * u / m;
            const double term_a = v * k_dx;
            const double term_b = F * k_dv;
            const double res = std::abs(term_a + term_b);
            const double scale = std::max({std::abs(term_a), std::abs(term_b), kScaleFloor});
            row_abs = std::max(row_abs, res);
            row_rel = std::max(row_rel, res / scale);
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(max : max_abs, max_rel)
        for (std::int64_t i = 0; i < nx; ++i) row(i, max_abs, max_rel);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i, max_abs, max_rel);
    }
    return {max_abs, max_rel};
}

} // namespace sweep
} // namespace invlag
