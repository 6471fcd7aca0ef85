#include "ptthermo/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "ptthermo/errors.hpp"
#include "ptthermo/special_functions.hpp"

namespace ptthermo {

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::WKB1: return "WKB1";
        case Method::WKB2: return "WKB2";
        case Method::Exact: return "Exact";
    }
    return "?";
}

double wkb_exponent(const OscillatorParams& params) {
    const double N = params.N();
    return 2.0 * N / (N + 2.0);
}

double wkb_prefactor(const OscillatorParams& params) {
    params.validate();
    const double N = params.N();
    const double base = gamma(1.5 + 1.0 / N) * std::sqrt(std::numbers::pi) /
                        (params.sin_factor() * gamma(1.0 + 1.0 / N));
    return std::pow(base, wkb_exponent(params));
}

double wkb2_correction(const OscillatorParams& params, int n) {
    const double N = params.N();
    const double pi = std::numbers::pi;
    const double s = params.sin_factor();
    const double half = n + 0.5;
    // cot(π/2) vanishes; keep the harmonic case exact.
    const double cot = (N == 2.0) ? 0.0 : 1.0 / std::tan(pi / N);
    return 1.0 + N * (N - 1.0) * s * s * cot / (3.0 * pi * half * half * (N + 2.0) * (N + 2.0));
}

EnergyLevel wkb_energy(const OscillatorParams& params, int n, int order) {
    if (n < 0) throw DomainError("wkb_energy: n must be >= 0");
    if (order != 1 && order != 2) throw DomainError("wkb_energy: order must be 1 or 2");
    double e = wkb_prefactor(params) * std::pow(n + 0.5, wkb_exponent(params));
    if (order == 2) e *= wkb2_correction(params, n);
    return {n, e, order == 1 ? Method::WKB1 : Method::WKB2};
}

double wkb_action_integral(const OscillatorParams& params, double E, const QuadOptions& quad) {
    params.validate();
    if (!(E > 0.0)) throw DomainError("wkb_action_integral: energy must be positive");
    const double N = params.N();
    auto integrand = [N](double u) {
        // 1 - (1-u²)^N without cancellation at small u.
        const double gap = -std::expm1(N * std::log1p(-u * u));
        return 2.0 * u * std::sqrt(gap);
    };
    const double integral = integrate(integrand, 0.0, 1.0, quad).value;
    return 2.0 * params.sin_factor() * std::pow(E, 0.5 + 1.0 / N) * integral;
}

std::vector<EnergyLevel> wkb_levels(const OscillatorParams& params, int n_max, int order) {
    if (n_max < 0) throw DomainError("wkb_levels: n_max must be >= 0");
    // Evaluate once outside the parallel region so validation errors
    // propagate from the calling thread.
    (void)wkb_energy(params, 0, order);
    std::vector<EnergyLevel> out(static_cast<std::size_t>(n_max) + 1);
#pragma omp parallel for schedule(static)
    for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = wkb_energy(params, n, order);
    return out;
}

std::vector<EnergyLevel> wkb_levels_serial(const OscillatorParams& params, int n_max,
                                           int order) {
    if (n_max < 0) throw DomainError("wkb_levels: n_max must be >= 0");
    std::vector<EnergyLevel> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(wkb_energy(params, n, order));
    return out;
}

}  // namespace ptthermo
