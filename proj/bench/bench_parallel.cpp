// Serial vs OpenMP timings for the three parallel kernels, with a check
// that both paths return identical numbers.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "ptthermo/exact_spectrum.hpp"
#include "ptthermo/spectrum.hpp"
#include "ptthermo/thermo.hpp"

using namespace ptthermo;

namespace {

double seconds(const std::function<void()>& f, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial,
                parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
    bool all_same = true;

    {
        const auto p = OscillatorParams::pt(1, 2.0);
        std::vector<EigenResult> a, b;
        const double ts = seconds([&] { a = eigenvalues_serial(p, 30); }, 1);
        const double tp = seconds([&] { b = eigenvalues(p, 30); }, 1);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].energy == b[i].energy;
        report("eigenvalues -x^4 n<=30", ts, tp, same);
        all_same = all_same && same;
    }
    {
        const auto p = OscillatorParams::pt(1, 1.0);
        const auto src = wkb_source(p, 2);
        const auto grid = temperature_grid(0.05, 500.0, 2000);
        std::vector<ThermoPoint> a, b;
        const double ts = seconds([&] { a = thermo_sweep_serial(src, grid); }, 3);
        const double tp = seconds([&] { b = thermo_sweep(src, grid); }, 3);
        bool same = true;
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].Z == b[i].Z && a[i].C == b[i].C;
        report("thermo_sweep 2000 points", ts, tp, same);
        all_same = all_same && same;
    }
    {
        const auto p = OscillatorParams::pt(2, 3.0);
        std::vector<EnergyLevel> a, b;
        const double ts = seconds([&] { a = wkb_levels_serial(p, 200000, 2); }, 5);
        const double tp = seconds([&] { b = wkb_levels(p, 200000, 2); }, 5);
        bool same = true;
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].energy == b[i].energy;
        report("wkb_levels n<=200000", ts, tp, same);
        all_same = all_same && same;
    }
    return all_same ? 0 : 1;
}
