#include "ptthermo/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptthermo/classical_contour.hpp"
#include "ptthermo/exact_spectrum.hpp"
#include "ptthermo/special_functions.hpp"
#include "ptthermo/spectrum.hpp"
#include "ptthermo/thermo.hpp"

namespace ptthermo {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Rounds to the number of decimals shown in a reference table.
double round_to(double v, int decimals) {
    const double s = std::pow(10.0, decimals);
    return std::round(v * s) / s;
}

struct Reference {
    int n;
    double value;
    int decimals;
};

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        passed = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome quartic_levels() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    const auto p = OscillatorParams::hermitian(4.0);
    const Reference wkb1[] = {{0, 0.86714532, 8}, {1, 3.75191992, 8}, {10, 50.2401523, 7},
                              {50, 407.868707, 6}, {100, 1020.986417, 6}};
    const Reference wkb2[] = {{0, 0.98982129, 8}, {1, 3.81089637, 8}, {10, 50.2562691, 7},
                              {50, 407.874363, 6}, {100, 1020.989992, 6}};
    const Reference exact[] = {{0, 1.06036209, 8}, {1, 3.79967303, 8}, {10, 50.2562545, 7},
                               {50, 407.874363, 6}, {100, 1020.989992, 6}};
    double worst_wkb = 0.0;
    for (int order = 1; order <= 2; ++order) {
        for (const auto& row : order == 1 ? wkb1 : wkb2) {
            const double e = wkb_energy(p, row.n, order).energy;
            const double dev = std::abs(round_to(e, row.decimals) - row.value);
            worst_wkb = std::max(worst_wkb, dev);
            if (dev > 1e-6 + 1e-12)
                o.fail("WKB" + std::to_string(order) + " n=" + std::to_string(row.n) + " = " +
                       fmt("%.10g", e));
        }
    }
    std::vector<int> ns;
    for (const auto& row : exact) ns.push_back(row.n);
    const auto levels = eigenvalues_for(p, ns);
    double worst_exact = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double rel = std::abs(levels[i].energy - exact[i].value) / exact[i].value;
        worst_exact = std::max(worst_exact, rel);
        if (rel > 1e-5 || !levels[i].converged)
            o.fail("exact n=" + std::to_string(ns[i]) + " = " + fmt("%.10g", levels[i].energy));
    }
    const double secs = elapsed(t0);
    if (secs > 60.0) o.fail("runtime " + fmt("%.1f s", secs));
    o.note("max WKB deviation " + fmt("%.2g", worst_wkb) + ", max exact rel. deviation " +
           fmt("%.2g", worst_exact));
    return o;
}

Outcome wrong_sign_quartic_levels() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    const auto p = OscillatorParams::pt(1, 2.0);
    const double wkb2[] = {1.47388, 6.00261, 11.8023, 18.4588};
    const double exact[] = {1.4771, 6.0033, 11.8023, 18.4590};
    const auto levels = eigenvalues(p, 3);
    double worst_wkb = 0.0, worst_exact = 0.0;
    for (int n = 0; n < 4; ++n) {
        const double w = wkb_energy(p, n, 2).energy;
        worst_wkb = std::max(worst_wkb, std::abs(w - wkb2[n]));
        if (std::abs(w - wkb2[n]) > 1e-4)
            o.fail("WKB2 n=" + std::to_string(n) + " = " + fmt("%.8g", w));
        const double d = std::abs(levels[n].energy - exact[n]);
        worst_exact = std::max(worst_exact, d);
        if (d > 1e-3 || !levels[n].converged)
            o.fail("exact n=" + std::to_string(n) + " = " + fmt("%.8g", levels[n].energy));
    }
    const double secs = elapsed(t0);
    if (secs > 60.0) o.fail("runtime " + fmt("%.1f s", secs));
    o.note("max WKB2 deviation " + fmt("%.2g", worst_wkb) + ", max exact deviation " +
           fmt("%.2g", worst_exact));
    return o;
}

Outcome high_temperature_heat() {
    Outcome o;
    const std::pair<int, double> configs[] = {{1, 0.0}, {1, 1.0}, {1, 2.0}, {1, 4.0}, {2, 2.0}};
    for (const auto& [M, eps] : configs) {
        const auto p = OscillatorParams::pt(M, eps);
        const double target = 0.5 + 1.0 / p.N();
        const double T = 100.0 * characteristic_temperature(p).theta;
        const double C = partition_function(wkb_source(p, 2), T).C;
        const double ratio = C / target;
        if (ratio < 0.99 || ratio > 1.01) o.fail(p.label() + ": C/C_cl = " + fmt("%.6f", ratio));
        o.note(p.label() + " " + fmt("%.5f", ratio));
    }
    return o;
}

Outcome factorization() {
    Outcome o;
    const std::pair<int, int> configs[] = {{1, 3}, {1, 4}, {1, 6}, {2, 6}};
    for (const auto& [M, N] : configs) {
        const auto p = OscillatorParams::pt(M, N - 2.0 * M);
        const double ratio =
            classical_z_by_rays(p, 1.0, pt_contour(p)) / hermitian_classical_partition(p.N(), 1.0);
        const double expected = std::sin(M * kPi / N);
        const double rel = std::abs(ratio - expected) / expected;
        if (rel > 1e-8) o.fail(p.label() + ": ratio " + fmt("%.12g", ratio));
        o.note("M=" + std::to_string(M) + " N=" + std::to_string(N) + " " + fmt("%.2g", rel));
    }
    return o;
}

Outcome quartic_chain() {
    Outcome o;
    const auto p = OscillatorParams::pt(1, 2.0);
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
        const double h = quartic_hermitian_z(1.0 / beta, false);
        const double closed =
            std::sin(kPi / 4.0) * std::tgamma(1.25) / (std::sqrt(kPi) * std::pow(beta, 0.75));
        const double ray = classical_z_by_rays(p, 1.0 / beta, pt_contour(p));
        const double d = std::max({std::abs(h - closed) / closed, std::abs(ray - closed) / closed,
                                   std::abs(h - ray) / closed});
        worst = std::max(worst, d);
        if (d > 1e-8) o.fail("beta=" + fmt("%g", beta) + " spread " + fmt("%.2g", d));
    }
    o.note("max pairwise rel. difference " + fmt("%.2g", worst));
    return o;
}

Outcome harmonic_closed_form() {
    Outcome o;
    const auto p = OscillatorParams::pt(1, 0.0);
    const double theta = characteristic_temperature(p).theta;
    if (std::abs(theta - 2.0) > 1e-12) o.fail("Theta = " + fmt("%.17g", theta));
    double worst = 0.0;
    for (double T : {0.1, 1.0, 3.0, 50.0}) {
        const double z = classical_partition_closed_form(p, T);
        worst = std::max(worst, std::abs(z - 0.5 * T) / (0.5 * T));
    }
    if (worst > 1e-12) o.fail("Z_cl deviates from T/2 by " + fmt("%.2g", worst));
    o.note("Theta - 2 = " + fmt("%.2g", theta - 2.0) + ", max |Z_cl/(T/2) - 1| = " +
           fmt("%.2g", worst));
    return o;
}

// First temperature on `grid` where C reaches `level`, refined by bisection.
double crossing_temperature(const SpectrumSource& src, const std::vector<double>& grid,
                            const std::vector<ThermoPoint>& pts, double level) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i - 1].C < level && pts[i].C >= level) {
            double lo = grid[i - 1], hi = grid[i];
            for (int it = 0; it < 60; ++it) {
                const double mid = std::sqrt(lo * hi);
                (partition_function(src, mid).C < level ? lo : hi) = mid;
            }
            return std::sqrt(lo * hi);
        }
    }
    throw std::runtime_error("C never reaches half its classical value on the grid");
}

Outcome curve_properties() {
    Outcome o;
    for (double N : {3.0, 4.0, 6.0, 10.0}) {
        const auto pt = OscillatorParams::pt(1, N - 2.0);
        const auto herm = OscillatorParams::hermitian(N);
        const double c_cl = 0.5 + 1.0 / N;
        double t_half[2] = {0.0, 0.0};
        int k = 0;
        for (const auto& p : {pt, herm}) {
            const double theta = characteristic_temperature(p).theta;
            const auto src = wkb_source(p, 2);
            const auto grid = temperature_grid(theta / 100.0, 500.0 * theta, 300);
            const auto pts = thermo_sweep(src, grid);
            for (const auto& q : pts)
                if (q.S < 0.0 || q.C < 0.0) o.fail(p.label() + ": negative S or C at T=" + fmt("%g", q.T));
            if (pts.front().C > 1e-8) o.fail(p.label() + ": C(Theta/100) = " + fmt("%.3g", pts.front().C));
            // Least-squares slope of S against ln T over [50Θ, 500Θ].
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int m = 0;
            for (const auto& q : pts) {
                if (q.T < 50.0 * theta * (1 - 1e-12)) continue;
                const double x = std::log(q.T);
                sx += x, sy += q.S, sxx += x * x, sxy += x * q.S, ++m;
            }
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            if (std::abs(slope / c_cl - 1.0) > 0.02)
                o.fail(p.label() + ": entropy slope " + fmt("%.5f", slope));
            t_half[k++] = crossing_temperature(src, grid, pts, 0.5 * c_cl);
        }
        if (!(t_half[0] > t_half[1]))
            o.fail("N=" + fmt("%g", N) + ": PT half-heat temperature " + fmt("%.4g", t_half[0]) +
                   " not above |x|^N " + fmt("%.4g", t_half[1]));
        o.note("N=" + fmt("%g", N) + " T_half " + fmt("%.4g", t_half[0]) + " vs " +
               fmt("%.4g", t_half[1]));
    }
    return o;
}

Outcome schottky_decay() {
    Outcome o;
    const auto p = OscillatorParams::pt(1, 2.0);
    std::vector<double> low;
    for (const auto& r : eigenvalues(p, 9)) low.push_back(r.energy);
    const double gap = low[1] - low[0];
    const auto src = hybrid_source(p, low);
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double T = gap / 30.0 + i * (gap / 15.0 - gap / 30.0) / 10.0;
        const double C = partition_function(src, T).C;
        const double r = C / schottky_heat(T, gap);
        worst = std::max(worst, std::abs(r - 1.0));
    }
    if (worst > 0.10) o.fail("max |C/Schottky - 1| = " + fmt("%.3g", worst));
    o.note("gap " + fmt("%.8g", gap) + ", max |C/Schottky - 1| = " + fmt("%.2g", worst));
    return o;
}

Outcome wkb_convergence() {
    Outcome o;
    std::vector<int> ns;
    for (int n = 10; n <= 50; ++n) ns.push_back(n);
    for (const auto& p : {OscillatorParams::hermitian(4.0), OscillatorParams::pt(1, 2.0)}) {
        const auto levels = eigenvalues_for(p, ns);
        double worst = 0.0;
        for (const auto& r : levels) {
            const double rel = std::abs(r.energy - wkb_energy(p, r.n, 2).energy) / r.energy;
            worst = std::max(worst, rel);
            if (rel >= 1e-4 || !r.converged)
                o.fail(p.label() + " n=" + std::to_string(r.n) + " rel " + fmt("%.2g", rel));
        }
        o.note(p.label() + " max rel " + fmt("%.2g", worst));
    }
    return o;
}

struct Entry {
    const char* name;
    Outcome (*run)();
};

constexpr Entry kEntries[kCriterionCount] = {
    {"|x|^4 levels, WKB and exact", quartic_levels},
    {"-x^4 levels, WKB2 and exact", wrong_sign_quartic_levels},
    {"high-temperature specific heat", high_temperature_heat},
    {"classical factorization sin(M pi/N)", factorization},
    {"wrong-sign quartic equivalence chain", quartic_chain},
    {"harmonic closed form", harmonic_closed_form},
    {"thermodynamic curve properties", curve_properties},
    {"Schottky decay with exact gap", schottky_decay},
    {"exact vs WKB2 for n in [10, 50]", wkb_convergence},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
    const Entry& e = kEntries[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = e.run();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& ex) {
        r.passed = false;
        r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = elapsed(t0);
    return r;
}

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "%s  [%d] %s (%.2f s): ", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds);
    return head + r.detail;
}

}  // namespace ptthermo
