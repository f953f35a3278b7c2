// Timing comparison of the serial reference grid kernels against the
// OpenMP versions.  Usage: invlag_bench [nx] [nv]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "invlag/sweep.hpp"

using invlag::SystemSpec;
using invlag::linspace;
namespace sweep = invlag::sweep;

namespace {

double time_ms(const std::function<void()>& work) {
    const auto t0 = std::chrono::steady_clock::now();
    work();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    const int nx = argc > 1 ? std::atoi(argv[1]) : 600;
    const int nv = argc > 2 ? std::atoi(argv[2]) : 600;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif
    std::printf("grid: %d x %d\n\n", nx, nv);

    const SystemSpec preset = SystemSpec::constant_force(1.0, 1.0, 0.1, std::sqrt(150.0));
    const auto xs = linspace(0.0, 2.0, nx);
    const auto vs = linspace(-0.9 / std::sqrt(preset.alpha2()), 0.9 / std::sqrt(preset.alpha2()), nv);
    const auto ps = linspace(-2.0, 2.0, nv);

    {
        std::vector<sweep::DeriveRow> a, b;
        const double ts = time_ms([&] { a = sweep::derive_table(preset, xs, vs, sweep::Exec::serial); });
        const double tp = time_ms([&] { b = sweep::derive_table(preset, xs, vs, sweep::Exec::parallel); });
        report("derive_table", ts, tp);
        if (a.size() != b.size() || a[1].f.K != b[1].f.K) std::printf("  MISMATCH!\n");
    }
    {
        sweep::ResidualExtrema a{}, b{};
        const double ts = time_ms([&] { a = sweep::kernel_pde_extrema(preset, xs, vs, 0.0, sweep::Exec::serial); });
        const double tp = time_ms([&] { b = sweep::kernel_pde_extrema(preset, xs, vs, 0.0, sweep::Exec::parallel); });
        report("kernel_pde_extrema", ts, tp);
        if (a.max_rel != b.max_rel) std::printf("  MISMATCH!\n");
    }
    {
        std::vector<sweep::RoundTripRow> a, b;
        const double ts = time_ms([&] { a = sweep::roundtrip_table(preset, xs, vs, sweep::Exec::serial); });
        const double tp = time_ms([&] { b = sweep::roundtrip_table(preset, xs, vs, sweep::Exec::parallel); });
        report("roundtrip_table", ts, tp);
        if (a.back().v_back != b.back().v_back) std::printf("  MISMATCH!\n");
    }
    {
        std::vector<sweep::HamiltonianRow> a, b;
        const double ts = time_ms([&] { a = sweep::hamiltonian_table(preset, xs, ps, {}, sweep::Exec::serial); });
        const double tp = time_ms([&] { b = sweep::hamiltonian_table(preset, xs, ps, {}, sweep::Exec::parallel); });
        report("hamiltonian_table", ts, tp);
        if (a.back().H != b.back().H) std::printf("  MISMATCH!\n");
    }
    return 0;
}
