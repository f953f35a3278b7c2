#include "invlag/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "invlag/dynamics.hpp"
#include "invlag/sweep.hpp"
#include "invlag/verify.hpp"

namespace invlag {
namespace {

using nlohmann::json;

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string csv_row(std::initializer_list<double> values) {
    std::string row;
    bool first = true;
    for (double v : values) {
        if (!first) row += ',';
        row += format_double(v);
        first = false;
    }
    return row;
}

json drift_json(const DriftReport& drift) {
    return {{"K0", drift.K0},
            {"max_abs_drift", drift.max_abs_drift},
            {"scale", drift.scale},
            {"rel_drift", drift.rel_drift}};
}

void write_newton_csv(std::ostream& out, const SystemSpec& spec, const NewtonTrajectory& traj) {
    out << "t,x,v,p,K\n";
    for (const NewtonSample& s : traj.samples) {
        const double p = momentum(spec, s.x, s.v);
        const double K = constant_of_motion(spec, s.x, s.v);
        out << csv_row({s.t, s.x, s.v, p, K}) << "\n";
    }
}

void write_hamilton_csv(std::ostream& out, const SystemSpec& spec,
                        const HamiltonTrajectory& traj) {
    out << "t,x,p,v,H\n";
    for (const HamiltonSample& s : traj.samples) {
        const double H = constant_of_motion(spec, s.x, s.v);
        out << csv_row({s.t, s.x, s.p, s.v, H}) << "\n";
    }
}

json newton_json(const SystemSpec& spec, const NewtonTrajectory& traj) {
    json samples = json::array();
    for (const NewtonSample& s : traj.samples)
        samples.push_back({{"t", s.t},
                           {"x", s.x},
                           {"v", s.v},
                           {"p", momentum(spec, s.x, s.v)},
                           {"K", constant_of_motion(spec, s.x, s.v)}});
    return {{"method", traj.method},
            {"dt", traj.dt},
            {"status", traj.status == FlowStatus::completed ? "completed" : "domain-exit"},
            {"exit_time", traj.exit_time},
            {"samples", samples}};
}

json hamilton_json(const SystemSpec& spec, const HamiltonTrajectory& traj) {
    json samples = json::array();
    for (const HamiltonSample& s : traj.samples)
        samples.push_back({{"t", s.t},
                           {"x", s.x},
                           {"p", s.p},
                           {"v", s.v},
                           {"H", constant_of_motion(spec, s.x, s.v)}});
    return {{"method", traj.method},
            {"dt", traj.dt},
            {"status", traj.status == FlowStatus::completed ? "completed" : "domain-exit"},
            {"exit_time", traj.exit_time},
            {"samples", samples}};
}

std::string sibling_path(const std::string& base, const std::string& tag) {
    if (base.empty()) return base;
    const std::size_t dot = base.find_last_of('.');
    if (dot == std::string::npos || base.find('/', dot) != std::string::npos)
        return base + "." + tag;
    return base.substr(0, dot) + "." + tag + base.substr(dot);
}

void require_domain_axis(const SystemSpec& spec, const AxisSpec& axis) {
    spec.require_velocity(axis.lo);
    spec.require_velocity(axis.hi);
}

int run_derive(const RunConfig& config) {
    require_domain_axis(config.spec, config.grid_v);
    const auto xs = linspace(config.grid_x.lo, config.grid_x.hi, config.grid_x.n);
    const auto vs = linspace(config.grid_v.lo, config.grid_v.hi, config.grid_v.n);
    const auto table = sweep::derive_table(config.spec, xs, vs);

    Output out(config.out_path);
    if (config.format == OutputFormat::csv) {
        out.stream() << "x,v,W,G,p,L,V,K\n";
        for (const sweep::DeriveRow& r : table)
            out.stream() << csv_row({r.x, r.v, r.f.W, r.f.G, r.f.p, r.f.L, r.f.V, r.f.K})
                         << "\n";
    } else {
        json rows = json::array();
        for (const sweep::DeriveRow& r : table)
            rows.push_back({{"x", r.x},
                            {"v", r.v},
                            {"W", r.f.W},
                            {"G", r.f.G},
                            {"p", r.f.p},
                            {"L", r.f.L},
                            {"V", r.f.V},
                            {"K", r.f.K}});
        out.stream() << rows.dump(2) << "\n";
    }
    return 0;
}

int run_simulate(const RunConfig& config) {
    std::string mode = config.mode.empty() ? "newton" : config.mode;
    const bool with_exact = mode == "exact" || mode == "all";
    const bool with_series = mode == "series" || mode == "all";
    if (mode != "newton" && !with_exact && !with_series)
        throw std::invalid_argument("simulate: mode must be newton, exact, series or all");

    if ((with_exact || with_series) && config.format == OutputFormat::csv &&
        config.out_path.empty())
        throw std::invalid_argument(
            "simulate: --out is required when the Hamiltonian flows are requested (each flow "
            "gets its own CSV)");

    const NewtonTrajectory traj =
        integrate_newton(config.spec, {config.x0, config.v0}, config.dt, config.t_end);
    const DriftReport drift = drift_report(config.spec, traj);

    json summary = {{"command", "simulate"},
                    {"method", traj.method},
                    {"status", traj.status == FlowStatus::completed ? "completed" : "domain-exit"},
                    {"exit_time", traj.exit_time},
                    {"drift", drift_json(drift)}};

    int status = traj.status == FlowStatus::completed ? 0 : 1;

    HamiltonTrajectory exact_traj, series_traj;
    if (with_exact || with_series) {
        const double p0 = momentum(config.spec, config.x0, config.v0);
        if (with_exact) {
            exact_traj = integrate_hamilton(config.spec, {config.x0, p0}, config.dt,
                                            config.t_end, {HamiltonMode::Kind::exact});
            summary["hamilton_exact_status"] =
                exact_traj.status == FlowStatus::completed ? "completed" : "domain-exit";
            if (exact_traj.status != FlowStatus::completed) status = 1;
        }
        if (with_series) {
            series_traj =
                integrate_hamilton(config.spec, {config.x0, p0}, config.dt, config.t_end,
                                   {HamiltonMode::Kind::series, config.n_terms});
            summary["hamilton_series_status"] =
                series_traj.status == FlowStatus::completed ? "completed" : "domain-exit";
            if (series_traj.status != FlowStatus::completed) status = 1;
        }
    }

    if (config.format == OutputFormat::csv) {
        Output out(config.out_path);
        write_newton_csv(out.stream(), config.spec, traj);
        if (with_exact) {
            Output extra(sibling_path(config.out_path, "hamilton_exact"));
            write_hamilton_csv(extra.stream(), config.spec, exact_traj);
        }
        if (with_series) {
            Output extra(sibling_path(config.out_path, "hamilton_series"));
            write_hamilton_csv(extra.stream(), config.spec, series_traj);
        }
    } else {
        json doc = {{"newton", newton_json(config.spec, traj)}, {"drift", drift_json(drift)}};
        if (with_exact) doc["hamilton_exact"] = hamilton_json(config.spec, exact_traj);
        if (with_series) doc["hamilton_series"] = hamilton_json(config.spec, series_traj);
        Output out(config.out_path);
        out.stream() << doc.dump(2) << "\n";
    }

    std::cout << summary.dump() << "\n";
    return status;
}

int run_hamiltonian(const RunConfig& config) {
    std::string mode = config.mode;
    if (mode.empty()) mode = config.spec.preset() ? "both" : "exact";
    if (mode != "exact" && mode != "series" && mode != "both")
        throw std::invalid_argument("hamiltonian: mode must be exact, series or both");
    const bool with_series = mode != "exact";
    if (with_series && !config.spec.preset())
        throw std::invalid_argument(
            "hamiltonian: series mode requires preset = constant-force");

    const auto xs = linspace(config.grid_x.lo, config.grid_x.hi, config.grid_x.n);
    const auto ps = linspace(config.grid_p.lo, config.grid_p.hi, config.grid_p.n);
    const auto table = sweep::hamiltonian_table(config.spec, xs, ps,
                                                {with_series, config.n_terms});

    Output out(config.out_path);
    if (config.format == OutputFormat::csv) {
        if (!with_series) {
            out.stream() << "x,p,v,H\n";
            for (const sweep::HamiltonianRow& r : table)
                out.stream() << csv_row({r.x, r.p, r.v, r.H}) << "\n";
        } else {
            out.stream() << "x,p,v,H,H_series,terms,last_term,discrepancy,flag\n";
            for (const sweep::HamiltonianRow& r : table) {
                out.stream() << csv_row({r.x, r.p, r.v, r.H, r.H_series}) << ","
                             << r.terms_used << "," << format_double(r.last_term) << ","
                             << format_double(r.discrepancy) << ","
                             << (r.series_domain_ok ? "ok" : "outside-series-domain") << "\n";
            }
        }
    } else {
        json rows = json::array();
        for (const sweep::HamiltonianRow& r : table) {
            json row = {{"x", r.x}, {"p", r.p}, {"v", r.v}, {"H", r.H}};
            if (with_series) {
                row["flag"] = r.series_domain_ok ? "ok" : "outside-series-domain";
                if (r.series_domain_ok) {
                    row["H_series"] = r.H_series;
                    row["terms"] = r.terms_used;
                    row["last_term"] = r.last_term;
                    row["discrepancy"] = r.discrepancy;
                }
            }
            rows.push_back(row);
        }
        out.stream() << rows.dump(2) << "\n";
    }
    return 0;
}

int run_invert(const RunConfig& config) {
    require_domain_axis(config.spec, config.grid_v);
    const auto xs = linspace(config.grid_x.lo, config.grid_x.hi, config.grid_x.n);
    const auto vs = linspace(config.grid_v.lo, config.grid_v.hi, config.grid_v.n);
    const auto table = sweep::roundtrip_table(config.spec, xs, vs);

    double max_rel = 0.0;
    for (const sweep::RoundTripRow& r : table) max_rel = std::max(max_rel, r.rel_err);

    Output out(config.out_path);
    if (config.format == OutputFormat::csv) {
        out.stream() << "x,v,p,v_back,rel_err\n";
        for (const sweep::RoundTripRow& r : table)
            out.stream() << csv_row({r.x, r.v, r.p, r.v_back, r.rel_err}) << "\n";
    } else {
        json rows = json::array();
        for (const sweep::RoundTripRow& r : table)
            rows.push_back({{"x", r.x},
                            {"v", r.v},
                            {"p", r.p},
                            {"v_back", r.v_back},
                            {"rel_err", r.rel_err}});
        out.stream() << rows.dump(2) << "\n";
    }

    const bool pass = max_rel <= config.tol_roundtrip;
    json summary = {{"command", "invert"},
                    {"max_rel", max_rel},
                    {"tol", config.tol_roundtrip},
                    {"pass", pass}};
    std::cout << summary.dump() << "\n";
    return pass ? 0 : 1;
}

std::pair<double, double> limits_point(const RunConfig& config) {
    const double x = 0.5 * (config.grid_x.lo + config.grid_x.hi);
    const double v = 0.5 * config.grid_v.hi;
    return {x, v};
}

int run_verify(const RunConfig& config) {
    ResidualGrid grid{config.grid_x.lo, config.grid_x.hi, config.grid_x.n,
                      config.grid_v.lo, config.grid_v.hi, config.grid_v.n};

    const NewtonTrajectory traj =
        integrate_newton(config.spec, {config.x0, config.v0}, config.dt, config.t_end);
    const auto [x_ref, v_ref] = limits_point(config);

    std::vector<ResidualReport> reports;
    reports.push_back(check_kernel_pde(config.spec, grid, config.tol_kernel_pde));
    reports.push_back(check_invariant_pde(config.spec, grid, config.tol_invariant_pde));
    reports.push_back(check_euler_lagrange(config.spec, traj, config.tol_euler_lagrange));
    reports.push_back(check_limits(config.spec, x_ref, v_ref, config.tol_limit_slope));

    json doc = json::array();
    bool all_pass = true;
    for (const ResidualReport& r : reports) {
        doc.push_back(to_json(r));
        all_pass = all_pass && r.pass;
    }

    Output out(config.out_path);
    out.stream() << doc.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_limits(const RunConfig& config) {
    const auto [x_ref, v_ref] = limits_point(config);
    const ResidualReport report =
        check_limits(config.spec, x_ref, v_ref, config.tol_limit_slope);

    Output out(config.out_path);
    if (config.format == OutputFormat::csv) {
        // convergence table of the three limit errors
        out.stream() << "k,eps,err_L,err_p,err_K\n";
        const double m = config.spec.mass();
        const Polynomial& U = config.spec.potential();
        const double shifted_U = U(x_ref) - U(0.0);
        const double L_ref = 0.5 * m * v_ref * v_ref - shifted_U;
        const double p_ref = m * v_ref;
        const double K_ref = 0.5 * m * v_ref * v_ref + shifted_U;
        for (int k = 2; k <= 8; ++k) {
            const double eps = std::pow(10.0, -k);
            const SystemSpec member = SystemSpec::make(m, eps, U, Polynomial{eps});
            const double eL = std::abs(lagrangian(member, x_ref, v_ref) - L_ref) /
                              std::max(std::abs(L_ref), 1e-30);
            const double ep = std::abs(momentum(member, x_ref, v_ref) - p_ref) /
                              std::max(std::abs(p_ref), 1e-30);
            const double eK = std::abs(constant_of_motion(member, x_ref, v_ref) - K_ref) /
                              std::max(std::abs(K_ref), 1e-30);
            out.stream() << k << "," << csv_row({eps, eL, ep, eK}) << "\n";
        }
    } else {
        out.stream() << to_json(report).dump(2) << "\n";
    }
    std::cout << to_json(report).dump() << "\n";
    return report.pass ? 0 : 1;
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int run(const RunConfig& config) {
    switch (config.command) {
        case Command::derive: return run_derive(config);
        case Command::simulate: return run_simulate(config);
        case Command::hamiltonian: return run_hamiltonian(config);
        case Command::invert: return run_invert(config);
        case Command::verify: return run_verify(config);
        case Command::limits: return run_limits(config);
    }
    return 2;
}

} // namespace invlag
