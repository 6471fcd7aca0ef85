#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ptthermo/errors.hpp"
#include "ptthermo/exact_spectrum.hpp"
#include "ptthermo/spectrum.hpp"
#include "ptthermo/thermo.hpp"

using namespace ptthermo;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SpectrumSource harmonic_list(std::size_t count) {
    std::vector<double> levels;
    for (std::size_t n = 0; n < count; ++n) levels.push_back(2.0 * n + 1.0);
    return list_source(levels, 2.0, 1.0, "2n+1");
}

const OscillatorParams kMatrix[] = {OscillatorParams::pt(1, 0.0), OscillatorParams::pt(1, 1.0),
                                    OscillatorParams::pt(1, 2.0), OscillatorParams::pt(1, 4.0),
                                    OscillatorParams::pt(2, 2.0)};

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("harmonic levels reproduce the geometric series") {
    const auto pt = partition_function(harmonic_list(2000), 1.0);
    CHECK(pt.Z == Approx(std::exp(-1.0) / (1.0 - std::exp(-2.0))).epsilon(1e-12));
    for (double T : {0.05, 0.3, 1.0, 7.0, 40.0}) {
        const auto a = partition_function(harmonic_list(100000), T);
        const auto b = harmonic_exact(T);
        CHECK(a.log_Z == Approx(b.log_Z).epsilon(1e-10));
        CHECK(a.U == Approx(b.U).epsilon(1e-9));
        CHECK(std::abs(a.S - b.S) <= 1e-9 * std::max(1.0, b.S));
        CHECK(std::abs(a.C - b.C) <= 1e-9 * std::max(1.0, b.C));
    }
}

TEST_CASE("thermodynamic identities hold pointwise") {
    for (const auto& p : kMatrix) {
        const auto src = wkb_source(p, 2);
        for (double T : temperature_grid(0.02, 300.0, 25)) {
            const auto q = partition_function(src, T);
            CHECK(q.F == Approx(-T * std::log(q.Z)).epsilon(1e-12));
            CHECK(q.U == Approx(q.F + T * q.S).epsilon(1e-10).scale(1e-8));
            CHECK(q.C >= 0.0);
            CHECK(q.S >= 0.0);
        }
    }
}

TEST_CASE("high-temperature specific heat approaches 1/2 + 1/N") {
    for (const auto& p : kMatrix) {
        const double theta = characteristic_temperature(p).theta;
        for (double k : {50.0, 200.0}) {
            const double C = partition_function(wkb_source(p, 2), k * theta).C;
            CHECK(C / (0.5 + 1.0 / p.N()) == Approx(1.0).epsilon(0.01));
        }
    }
    const auto p = OscillatorParams::pt(1, 1.0);
    const double C = partition_function(wkb_source(p, 2), 500.0).C;
    CHECK(C == Approx(5.0 / 6.0).epsilon(1e-3));
}

TEST_CASE("low-temperature limit") {
    const auto h = OscillatorParams::pt(1, 0.0);
    const double theta = characteristic_temperature(h).theta;
    const auto cold = partition_function(wkb_source(h, 2), theta / 100.0);
    CHECK(cold.S < 1e-3);
    CHECK(cold.C < 1e-3);
    for (const auto& p : kMatrix) {
        const double th = characteristic_temperature(p).theta;
        const auto grid = temperature_grid(th / 400.0, th / 20.0, 30);
        const auto pts = thermo_sweep(wkb_source(p, 2), grid);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].C >= pts[i - 1].C);
            CHECK(pts[i].S >= pts[i - 1].S);
        }
        CHECK(pts.front().C < 1e-6);
    }
}

TEST_CASE("Schottky decay: the spectral gap beats Theta") {
    const auto p = OscillatorParams::pt(1, 2.0);
    std::vector<double> low;
    for (const auto& r : eigenvalues(p, 5)) low.push_back(r.energy);
    const double gap = low[1] - low[0];
    const double theta = characteristic_temperature(p).theta;
    const auto src = hybrid_source(p, low);
    for (double T : {gap / 30.0, gap / 20.0, gap / 15.0}) {
        const double C = partition_function(src, T).C;
        CHECK(C / schottky_heat(T, gap) == Approx(1.0).epsilon(1e-3));
        // With Θ in place of the gap the estimate is off by orders of magnitude.
        CHECK(std::abs(std::log(C / schottky_heat(T, theta))) > 1.0);
    }
    CHECK(gap == Approx(4.526).epsilon(1e-3));
}

TEST_CASE("characteristic temperature") {
    CHECK(characteristic_temperature(OscillatorParams::pt(1, 0.0)).theta == Approx(2.0).epsilon(1e-13));
    const double expect = std::pow(std::tgamma(1.75) * std::sqrt(kPi) /
                                       (std::sin(kPi / 4.0) * std::tgamma(1.25)),
                                   4.0 / 3.0);
    CHECK(characteristic_temperature(OscillatorParams::pt(1, 2.0)).theta == Approx(expect).epsilon(1e-13));
    CHECK(characteristic_temperature(OscillatorParams::pt(1, 8.0)).theta >
          characteristic_temperature(OscillatorParams::pt(1, 1.0)).theta);
    // Θ is comparable to the first gap as an order of magnitude.
    const double theta = characteristic_temperature(OscillatorParams::pt(1, 2.0)).theta;
    CHECK(theta / 4.526 > 0.3);
    CHECK(theta / 4.526 < 3.0);
}

TEST_CASE("classical closed forms") {
    const auto h = OscillatorParams::pt(1, 0.0);
    for (double T : {0.5, 3.0, 10.0}) CHECK(classical_partition_closed_form(h, T) == Approx(T / 2.0).epsilon(1e-13));
    CHECK(classical_partition_closed_form(OscillatorParams::pt(1, 2.0), 1.0) ==
          Approx(std::sin(kPi / 4.0) * std::tgamma(1.25) / std::sqrt(kPi)).epsilon(1e-13));
    CHECK(hermitian_classical_partition(4.0, 2.0) ==
          Approx(std::tgamma(1.25) * std::pow(2.0, 0.75) / std::sqrt(kPi)).epsilon(1e-13));
    for (const auto& p : kMatrix) {
        for (double T : {0.1, 1.0, 25.0}) {
            CHECK(classical_partition_closed_form(p, T) ==
                  Approx(p.sin_factor() * hermitian_classical_partition(p.N(), T)).epsilon(1e-12));
        }
    }
    // The Hermitian reference has no sine factor.
    const auto h6 = OscillatorParams::hermitian(6.0);
    CHECK(classical_partition_closed_form(h6, 2.0) == Approx(hermitian_classical_partition(6.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("classical entropy and heat") {
    CHECK(classical_entropy_and_heat(OscillatorParams::pt(1, 0.0), 1.0).C == 1.0);
    CHECK(classical_entropy_and_heat(OscillatorParams::pt(1, 1.0), 1.0).C == Approx(5.0 / 6.0));
    for (const auto& p : kMatrix) {
        const double dS = classical_entropy_and_heat(p, 7.0).S - classical_entropy_and_heat(p, 2.0).S;
        CHECK(dS == Approx((0.5 + 1.0 / p.N()) * std::log(3.5)).epsilon(1e-13));
        // The quantum entropy approaches the classical one at high T.
        const double T = 300.0 * characteristic_temperature(p).theta;
        CHECK(partition_function(wkb_source(p, 2), T).S ==
              Approx(classical_entropy_and_heat(p, T).S).epsilon(1e-3));
    }
}

TEST_CASE("semiclassical sum") {
    const auto q = OscillatorParams::pt(1, 2.0);
    const double th = characteristic_temperature(q).theta;
    CHECK(semiclassical_sum(q, 100 * th) == Approx(classical_partition_closed_form(q, 100 * th)).epsilon(0.01));
    CHECK(semiclassical_sum(OscillatorParams::pt(1, 0.0), 200.0) == Approx(100.0).epsilon(0.01));
    CHECK(std::abs(semiclassical_sum(q, th / 10) / classical_partition_closed_form(q, th / 10) - 1.0) > 0.5);
}

TEST_CASE("tail bound accuracy is independent of the grid point") {
    // Tightening the tolerance changes nothing beyond it.
    const auto src = wkb_source(OscillatorParams::pt(1, 1.0), 2);
    ThermoOptions tight;
    tight.tail_tol = 1e-14;
    for (double T : {0.1, 10.0, 1000.0}) {
        const auto a = partition_function(src, T);
        const auto b = partition_function(src, T, tight);
        CHECK(a.Z == Approx(b.Z).epsilon(2e-10));
        CHECK(a.C == Approx(b.C).epsilon(1e-9));
        CHECK(b.levels_used >= a.levels_used);
    }
}

TEST_CASE("sweep ordering and serial reference") {
    const auto src = wkb_source(OscillatorParams::pt(2, 1.0), 2);
    auto grid = temperature_grid(0.05, 80.0, 64);
    std::reverse(grid.begin(), grid.end());
    const auto a = thermo_sweep(src, grid), b = thermo_sweep_serial(src, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].T == grid[i]);
        CHECK(a[i].Z == b[i].Z);
        CHECK(a[i].C == b[i].C);
    }
}

TEST_CASE("temperature grids") {
    const auto g = temperature_grid(0.05, 50.0, 200);
    CHECK(g.size() == 200);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 50.0);
    CHECK(g[1] / g[0] == Approx(g[100] / g[99]).epsilon(1e-12));
    const auto l = temperature_grid(1.0, 3.0, 5, GridSpacing::Linear);
    CHECK(l[2] == Approx(2.0));
    CHECK_THROWS_AS(temperature_grid(2.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(temperature_grid(0.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(temperature_grid(0.1, 1.0, 1), DomainError);
}

TEST_CASE("errors") {
    const auto src = wkb_source(OscillatorParams::pt(1, 1.0), 2);
    CHECK_THROWS_AS(partition_function(src, 0.0), DomainError);
    CHECK_THROWS_AS(partition_function(src, -1.0), DomainError);
    ThermoOptions capped;
    capped.hard_cap = 10;
    CHECK_THROWS_AS(partition_function(src, 100.0, capped), TruncationError);
    CHECK_THROWS_AS(partition_function(harmonic_list(5), 100.0), TruncationError);
    CHECK_THROWS_AS(list_source({}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(wkb_source(OscillatorParams::pt(1, 1.0), 3), DomainError);
}

}  // TEST_SUITE
