#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ptthermo/oscillator.hpp"

namespace ptthermo {

/// Immutable level sequence E_0 <= E_1 <= ... plus a lower growth envelope
/// E_n >= prefactor · (n + 1/2)^exponent (exponent >= 1) used to bound the
/// neglected tail of the partition sums.
struct SpectrumSource {
    std::function<double(std::size_t)> level;
    double growth_prefactor = 0.0;
    double growth_exponent = 1.0;
    /// Number of levels the source can provide.
    std::size_t size = static_cast<std::size_t>(-1);
    std::string name;
};

/// WKB levels of the given order (1 or 2).
SpectrumSource wkb_source(const OscillatorParams& params, int order);
/// Explicit list of levels; the envelope must be supplied by the caller.
SpectrumSource list_source(std::vector<double> levels, double growth_prefactor,
                           double growth_exponent, std::string name = "list");
/// `low` for the first low.size() levels, WKB2 above.
SpectrumSource hybrid_source(const OscillatorParams& params, std::vector<double> low);

struct ThermoOptions {
    /// Tail bound relative to each retained sum.
    double tail_tol = 1e-10;
    std::size_t hard_cap = 50'000'000;
};

struct ThermoPoint {
    double T = 0.0;
    double beta = 0.0;
    double Z = 0.0;
    double log_Z = 0.0;
    double F = 0.0;
    double S = 0.0;
    double U = 0.0;
    double C = 0.0;
    std::size_t levels_used = 0;
};

/// Z = Σ e^{-E_n/T} and the derived F, S, U, C from the moment sums of the
/// same truncated series (no numerical differentiation). Summation stops at
/// the first n whose integral tail bound for Σ E^k e^{-βE}, k = 0, 1, 2, is
/// below tail_tol times the partial sum.
/// Throws DomainError for T <= 0 and TruncationError at the hard cap or when
/// a finite source runs out first.
ThermoPoint partition_function(const SpectrumSource& source, double T,
                               const ThermoOptions& opt = {});

/// partition_function over a temperature grid on all OpenMP threads; the
/// output order follows `temperatures`.
std::vector<ThermoPoint> thermo_sweep(const SpectrumSource& source,
                                      std::span<const double> temperatures,
                                      const ThermoOptions& opt = {});
/// Single-threaded reference for thermo_sweep.
std::vector<ThermoPoint> thermo_sweep_serial(const SpectrumSource& source,
                                             std::span<const double> temperatures,
                                             const ThermoOptions& opt = {});

enum class GridSpacing { Log, Linear };

/// `points` temperatures from t_min to t_max inclusive.
std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points,
                                     GridSpacing spacing = GridSpacing::Log);

struct CharacteristicTemperature {
    double theta = 0.0;
};

/// Θ = [Γ(3/2+1/N) √π / (sin(Mπ/N) Γ(1+1/N))]^{2N/(N+2)}; the Hermitian
/// reference omits the sine.
CharacteristicTemperature characteristic_temperature(const OscillatorParams& params);

/// Z_cl = Γ(3/2+1/N) (T/Θ)^{1/2+1/N}.
double classical_partition_closed_form(const OscillatorParams& params, double T);

/// Q_cl(N, T) = Γ(1+1/N) T^{1/2+1/N} / √π, the classical partition function
/// of p² + |x|^N.
double hermitian_classical_partition(double N, double T);

struct ClassicalThermo {
    double S = 0.0;
    double C = 0.0;
};

/// S = (1/2+1/N)[ln(T/Θ) + 1] + ln Γ(3/2+1/N), C = 1/2 + 1/N.
ClassicalThermo classical_entropy_and_heat(const OscillatorParams& params, double T);

/// Σ_n exp(-β E_0 (2n+1)^{2N/(N+2)}) with E_0 the leading WKB ground level.
double semiclassical_sum(const OscillatorParams& params, double T,
                         const ThermoOptions& opt = {});

/// Two-level low-temperature heat capacity (gap/T)² e^{-gap/T}. Pass the
/// spectral gap E_1 - E_0, or Θ for the cruder estimate.
double schottky_heat(double T, double gap);

/// Closed-form harmonic oscillator (levels 2n+1) thermodynamics.
ThermoPoint harmonic_exact(double T);

}  // namespace ptthermo
