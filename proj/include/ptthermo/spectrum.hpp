#pragma once

#include <vector>

#include "ptthermo/oscillator.hpp"
#include "ptthermo/quadrature.hpp"

namespace ptthermo {

enum class Method { WKB1, WKB2, Exact };

const char* method_name(Method m) noexcept;

struct EnergyLevel {
    int n = 0;
    double energy = 0.0;
    Method method = Method::WKB1;
};

/// Leading-order WKB scale: E_n^{(1)} = prefactor · (n + 1/2)^{exponent}
/// with exponent = 2N/(N+2).
double wkb_prefactor(const OscillatorParams& params);
double wkb_exponent(const OscillatorParams& params);

/// Second-order correction factor 1 + N(N-1) sin²(Mπ/N) cot(π/N) /
/// [3π (n+1/2)² (N+2)²].
double wkb2_correction(const OscillatorParams& params, int n);

/// order 1 or 2. Throws DomainError for n < 0 or an invalid order.
EnergyLevel wkb_energy(const OscillatorParams& params, int n, int order);

/// 2 sin(Mπ/N) E^{1/2+1/N} ∫₀¹ √(1 - s^N) ds by adaptive quadrature
/// (s = 1 - u² removes the square-root edge).
double wkb_action_integral(const OscillatorParams& params, double E,
                           const QuadOptions& quad = {});

/// WKB levels 0..n_max, computed on all OpenMP threads.
std::vector<EnergyLevel> wkb_levels(const OscillatorParams& params, int n_max, int order);
/// Single-threaded reference for wkb_levels.
std::vector<EnergyLevel> wkb_levels_serial(const OscillatorParams& params, int n_max,
                                           int order);

}  // namespace ptthermo
