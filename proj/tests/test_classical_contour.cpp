#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ptthermo/classical_contour.hpp"
#include "ptthermo/errors.hpp"
#include "ptthermo/thermo.hpp"

using namespace ptthermo;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Z along a ray pair at θ (right) whose potential on the unit ray is
// e^{iφ}, φ = επ/2 - Nθ:  Re[e^{-iθ} Γ(1+1/N) (β e^{iφ})^{-1/N}] / √(πβ).
double ray_pair_oracle(const OscillatorParams& p, double T, double theta) {
    const double beta = 1.0 / T, N = p.N();
    const double phi = p.epsilon * kPi / 2.0 - N * theta;
    const cplx val = std::polar(1.0, -theta) * std::tgamma(1.0 + 1.0 / N) *
                     std::pow(beta, -1.0 / N) * std::polar(1.0, -phi / N);
    return val.real() / std::sqrt(kPi * beta);
}

}  // namespace

TEST_SUITE("classical_contour") {

TEST_CASE("wedge geometry for N = 3, 4 and 6") {
    SUBCASE("ix^3: an edge lies on the real axis") {
        const auto ws = wedge_set(OscillatorParams::pt(1, 1.0));
        CHECK(ws.real_axis_on_boundary);
        CHECK_FALSE(ws.real_axis_viable);
        CHECK(is_forbidden(OscillatorParams::pt(1, 1.0), 0.0));
    }
    SUBCASE("-x^4: the real axis is forbidden") {
        const auto ws = wedge_set(OscillatorParams::pt(1, 2.0));
        CHECK_FALSE(ws.real_axis_viable);
        CHECK_FALSE(ws.real_axis_on_boundary);
        bool covers = false;
        for (const auto& iv : ws.forbidden) covers = covers || iv.contains(0.0);
        CHECK(covers);
    }
    SUBCASE("x^2(ix)^4: [pi/12, pi/4] forbidden, real axis and pi/3 allowed") {
        const auto ws = wedge_set(OscillatorParams::pt(1, 4.0));
        CHECK(ws.real_axis_viable);
        bool found = false;
        for (const auto& iv : ws.forbidden)
            if (std::abs(iv.lo - kPi / 12.0) < 1e-12 && std::abs(iv.hi - kPi / 4.0) < 1e-12) found = true;
        CHECK(found);
        bool center = false;
        for (double c : ws.allowed_centers) center = center || std::abs(c - kPi / 3.0) < 1e-12;
        CHECK(center);
        CHECK(std::abs(ws.allowed_centers.front()) < 1e-12);
    }
}

TEST_CASE("forbidden intervals match is_forbidden and come in PT pairs") {
    for (const auto& p : {OscillatorParams::pt(1, 1.0), OscillatorParams::pt(1, 4.0),
                          OscillatorParams::pt(2, 2.0), OscillatorParams::pt(1, 2.5),
                          OscillatorParams::hermitian(5.0)}) {
        const auto ws = wedge_set(p);
        double total = 0.0;
        for (const auto& iv : ws.forbidden) {
            total += iv.hi - iv.lo;
            // Mirror image θ -> π - θ of an interior point is forbidden too.
            const double mid = 0.5 * (iv.lo + iv.hi);
            CHECK(is_forbidden(p, kPi - mid));
        }
        // Sampled classification agrees with the interval list.
        const int samples = 20000;
        int forbidden = 0;
        for (int i = 0; i < samples; ++i) {
            const double theta = -kPi + (i + 0.5) * 2.0 * kPi / samples;
            bool listed = false;
            for (const auto& iv : ws.forbidden) listed = listed || iv.contains(theta);
            CHECK(listed == is_forbidden(p, theta));
            forbidden += listed;
        }
        CHECK(total == Approx(2.0 * kPi * forbidden / samples).epsilon(1e-3));
        if (!p.hermitian_reference && std::floor(p.N()) == p.N()) {
            // Integer N: N wedges of opening π/N, one possibly split at ±π.
            CHECK(total == Approx(kPi).epsilon(1e-12));
            const bool wraps = ws.forbidden.front().lo == -kPi && ws.forbidden.back().hi == kPi;
            CHECK(ws.forbidden.size() - (wraps ? 1 : 0) == static_cast<std::size_t>(p.N()));
        }
    }
}

TEST_CASE("wedge condition is the convergence criterion") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ang(-kPi, kPi), eps(0.0, 6.0);
    std::uniform_int_distribution<int> em(1, 3);
    int checked = 0;
    while (checked < 100) {
        const auto p = OscillatorParams::pt(em(rng), eps(rng));
        const double theta = ang(rng);
        // Skip directions too close to an edge to decide at finite r.
        if (std::abs(std::cos(p.N() * (kPi / 2 - theta) - p.M * kPi)) < 1e-3) continue;
        const cplx dir = std::polar(1.0, -theta);
        // e^{-βRe V} decays outward iff Re V grows.
        const double near = p.potential(10.0 * dir).real();
        const double far = p.potential(20.0 * dir).real();
        if (is_forbidden(p, theta)) CHECK(far < near);
        else CHECK(far > near);
        ++checked;
    }
}

TEST_CASE("V is real and positive along allowed-wedge centres") {
    for (const auto& p : {OscillatorParams::pt(1, 1.0), OscillatorParams::pt(1, 4.0),
                          OscillatorParams::pt(2, 2.0), OscillatorParams::pt(3, 1.5)}) {
        for (double c : wedge_set(p).allowed_centers) {
            for (double r : {0.3, 1.0, 4.0}) {
                const cplx v = p.potential(r * std::polar(1.0, -c));
                CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
                CHECK(v.real() > 0.0);
            }
        }
    }
}

TEST_CASE("ray quadrature reproduces the sine factor") {
    const std::pair<int, int> mn[] = {{1, 3}, {1, 4}, {1, 6}, {2, 6}};
    for (const auto& [M, N] : mn) {
        const auto p = OscillatorParams::pt(M, N - 2.0 * M);
        for (double T : {0.5, 1.0, 4.0}) {
            const double ratio = classical_z_by_rays(p, T, pt_contour(p)) / hermitian_classical_partition(N, T);
            CHECK(ratio == Approx(std::sin(M * kPi / N)).epsilon(1e-8));
        }
    }
    const auto x6 = OscillatorParams::pt(3, 0.0);
    CHECK(classical_z_by_rays(x6, 1.0, RayContour{0.0}) / hermitian_classical_partition(6.0, 1.0) ==
          Approx(1.0).epsilon(1e-8));
    const auto h = OscillatorParams::hermitian(5.0);
    CHECK(classical_z_by_rays(h, 2.0, pt_contour(h)) == Approx(hermitian_classical_partition(5.0, 2.0)).epsilon(1e-8));
}

TEST_CASE("off-centre rays against the analytic ray integral") {
    const auto p = OscillatorParams::pt(1, 4.0);
    for (double d : {-0.12, -0.05, 0.07, 0.1}) {
        const double theta = kPi / 3.0 + d;
        CHECK(classical_z_by_rays(p, 1.3, RayContour{theta}) ==
              Approx(ray_pair_oracle(p, 1.3, theta)).epsilon(1e-9));
    }
    const auto q = OscillatorParams::pt(1, 2.0);
    CHECK(classical_z_by_rays(q, 0.7, RayContour{kPi / 4.0 + 0.2}) ==
          Approx(ray_pair_oracle(q, 0.7, kPi / 4.0 + 0.2)).epsilon(1e-9));
}

TEST_CASE("contour independence within a wedge") {
    const auto p = OscillatorParams::pt(1, 4.0);
    for (double d : {-kPi / 24.0, kPi / 24.0}) {
        const auto r = contour_independence_check(p, 1.0, RayContour{kPi / 3.0}, RayContour{kPi / 3.0 + d});
        CHECK(r.relative_difference <= 1e-8);
    }
    const auto same = contour_independence_check(p, 1.0, RayContour{kPi / 3.0}, RayContour{kPi / 3.0});
    CHECK(same.relative_difference == 0.0);
    // The real axis sits in another wedge system: refused, and the two
    // values differ by the factor 1/2.
    CHECK_FALSE(same_wedge_system(p, 0.0, kPi / 3.0));
    CHECK_THROWS_AS(contour_independence_check(p, 1.0, RayContour{0.0}, RayContour{kPi / 3.0}), ContourError);
    CHECK(classical_z_by_rays(p, 1.0, RayContour{kPi / 3.0}) / classical_z_by_rays(p, 1.0, RayContour{0.0}) ==
          Approx(0.5).epsilon(1e-8));
}

TEST_CASE("forbidden contours are rejected") {
    CHECK_THROWS_AS(classical_z_by_rays(OscillatorParams::pt(1, 2.0), 1.0, RayContour{0.0}), ContourError);
    CHECK_THROWS_AS(classical_z_by_rays(OscillatorParams::pt(1, 1.0), 1.0, RayContour{0.0}), ContourError);
    CHECK_THROWS_AS(classical_z_by_rays(OscillatorParams::hermitian(4.0), 1.0, RayContour{0.2}), ContourError);
    CHECK_THROWS_AS(classical_z_by_rays(OscillatorParams::pt(1, 1.0), 0.0, pt_contour(OscillatorParams::pt(1, 1.0))),
                    DomainError);
}

TEST_CASE("quartic phase-space integral") {
    const double closed = std::sin(kPi / 4.0) * std::tgamma(1.25) / std::sqrt(kPi);
    CHECK(quartic_hermitian_z(1.0, false) == Approx(closed).epsilon(1e-10));
    CHECK(quartic_hermitian_z(1.0, false) ==
          Approx(classical_partition_closed_form(OscillatorParams::pt(1, 2.0), 1.0)).epsilon(1e-8));
    for (double beta : {0.25, 1.0, 3.0})
        CHECK(quartic_hermitian_z(1.0 / beta, false) / quartic_hermitian_z(1.0 / (2 * beta), false) ==
              Approx(std::pow(2.0, 0.75)).epsilon(1e-10));
    // General α: Γ(5/4) 4^{1/4} α^{-1/4} / (√π β^{3/4}).
    for (double alpha : {1.0, 5.0, 16.0, 40.0})
        CHECK(quartic_hermitian_z(0.8, false, alpha) ==
              Approx(std::tgamma(1.25) * std::pow(4.0 / alpha, 0.25) * std::pow(0.8, 0.75) / std::sqrt(kPi))
                  .epsilon(1e-10));
}

TEST_CASE("quartic integral with the anomaly term against Gauss-Kronrod") {
    for (double T : {0.3, 1.0, 5.0}) {
        const double beta = 1.0 / T, alpha = kQuarticAlpha;
        auto f = [&](double p) { return std::exp(-beta * (p * p * p * p / (4 * alpha) - p / 2)); };
        const double ip = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 15, 1e-13);
        const double ref = std::sqrt(kPi / (beta * alpha)) * ip / (2 * kPi);
        CHECK(quartic_hermitian_z(T, true) == Approx(ref).epsilon(1e-9));
    }
    // The ħ-order term stops mattering at high temperature.
    CHECK(quartic_hermitian_z(1e6, true) / quartic_hermitian_z(1e6, false) == Approx(1.0).epsilon(1e-3));
    CHECK(quartic_hermitian_z(1.0, true) / quartic_hermitian_z(1.0, false) > 1.05);
}

TEST_CASE("quartic canonical map") {
    for (double x : {-3.0, -0.4, 0.0, 0.9, 5.0}) {
        for (double p : {-2.0, 0.0, 1.5}) {
            CHECK(std::abs(quartic_canonical_jacobian(x, p) - 1.0) < 1e-8);
            // Without the anomaly H is p_z² - z⁴ in the new variables.
            const cplx z = quartic_z(x), pz = quartic_pz(x, p);
            CHECK(std::abs(quartic_H(x, p, false) - (pz * pz - z * z * z * z)) < 1e-10 * (1 + std::abs(pz * pz)));
        }
    }
    double worst = 0.0;
    for (double x = -1e4; x <= 1e4; x += 0.37) {
        const cplx pz = quartic_pz(x, 1.0);
        worst = std::max(worst, std::abs(std::arg(pz)));
    }
    CHECK(worst < kPi / 4.0);
    CHECK(worst > 0.99 * kPi / 4.0);
}

TEST_CASE("parametric contour") {
    const double alpha = kQuarticAlpha;
    const double x0[] = {0.0}, p0[] = {0.0};
    const auto s0 = quartic_parametric_contour(x0, p0);
    CHECK(std::abs(s0[0].xi - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(s0[0].H) < 1e-12);
    const double p1[] = {std::sqrt(2.0 * alpha)};
    const auto s1 = quartic_parametric_contour(x0, p1);
    CHECK(std::abs(s1[0].xi) < 1e-14);
    // On the contour H(ξ, π) is the real Hermitian form h(x, p).
    const double xs[] = {-1.0, 0.3, 2.0}, ps[] = {-3.0, 0.5, 4.0};
    for (const auto& s : quartic_parametric_contour(xs, ps))
        CHECK(std::abs(s.H - quartic_h(s.x, s.p, true)) < 1e-10 * (1.0 + std::abs(s.H)));

    std::vector<double> xg, pg;
    for (int i = -3000; i <= 3000; ++i) xg.push_back(i * 0.005);
    for (int i = -2000; i <= 2000; ++i) pg.push_back(i * 0.01);
    const auto samples = quartic_parametric_contour(xg, pg);
    double imag = 1.0;
    const double z = parametric_contour_z(samples, xg, pg, 1.0, &imag);
    CHECK(z == Approx(quartic_hermitian_z(1.0, true)).epsilon(1e-6));
    CHECK(std::abs(imag) < 1e-12);
    CHECK_THROWS_AS(parametric_contour_z(samples, xg, std::span(pg).first(10), 1.0), DomainError);
}

}  // TEST_SUITE
