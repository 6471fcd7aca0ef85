#include "ptthermo/thermo.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <string>

#include "ptthermo/errors.hpp"
#include "ptthermo/special_functions.hpp"
#include "ptthermo/spectrum.hpp"

namespace ptthermo {
namespace {

// ∫_a^∞ E(m)^k e^{-β(E(m) - shift)} dm for the envelope E(m) = c (m+1/2)^γ,
// bounded by the tangent of the convex exponent at m = a. Valid for
// E(a) > k/β; returns +inf otherwise.
double tail_bound(double c, double g, double a, double beta, double shift, int k) {
    const double ea = c * std::pow(a + 0.5, g);
    const double rate = beta - k / ea;
    if (!(rate > 0.0)) return INFINITY;
    const double slope = c * g * std::pow(a + 0.5, g - 1.0);
    return std::pow(ea, k) * std::exp(-beta * (ea - shift)) / (rate * slope);
}

template <class Body>
void run_parallel(std::size_t count, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

SpectrumSource wkb_source(const OscillatorParams& params, int order) {
    params.validate();
    (void)wkb_energy(params, 0, order);
    SpectrumSource s;
    s.level = [params, order](std::size_t n) {
        return wkb_energy(params, static_cast<int>(n), order).energy;
    };
    // WKB1 is the envelope itself; the WKB2 factor is >= 1 for N >= 2.
    s.growth_prefactor = wkb_prefactor(params);
    s.growth_exponent = wkb_exponent(params);
    s.name = std::string(order == 1 ? "WKB1 " : "WKB2 ") + params.label();
    return s;
}

SpectrumSource list_source(std::vector<double> levels, double growth_prefactor,
                           double growth_exponent, std::string name) {
    if (levels.empty()) throw DomainError("list_source: empty level list");
    if (!(growth_prefactor > 0.0) || !(growth_exponent >= 1.0))
        throw DomainError("list_source: envelope needs prefactor > 0 and exponent >= 1");
    auto shared = std::make_shared<const std::vector<double>>(std::move(levels));
    SpectrumSource s;
    s.size = shared->size();
    s.level = [shared](std::size_t n) { return (*shared)[n]; };
    s.growth_prefactor = growth_prefactor;
    s.growth_exponent = growth_exponent;
    s.name = std::move(name);
    return s;
}

SpectrumSource hybrid_source(const OscillatorParams& params, std::vector<double> low) {
    SpectrumSource s = wkb_source(params, 2);
    auto shared = std::make_shared<const std::vector<double>>(std::move(low));
    auto wkb = s.level;
    s.level = [shared, wkb](std::size_t n) { return n < shared->size() ? (*shared)[n] : wkb(n); };
    s.name = "exact+WKB2 " + params.label();
    return s;
}

ThermoPoint partition_function(const SpectrumSource& source, double T, const ThermoOptions& opt) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("partition_function: temperature must be positive");
    if (!(opt.tail_tol > 0.0)) throw DomainError("partition_function: tail_tol must be > 0");
    const double beta = 1.0 / T;
    const double c = source.growth_prefactor;
    const double g = source.growth_exponent;

    std::vector<double> shifted;  // E_n - E_0
    std::vector<double> weight;   // e^{-β(E_n - E_0)}
    const double e0 = source.level(0);
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;  // Σ E^k e^{-β(E - E_0)}
    for (std::size_t n = 0;; ++n) {
        if (n >= opt.hard_cap)
            throw TruncationError("partition_function: hard cap of " +
                                  std::to_string(opt.hard_cap) + " levels reached at T = " +
                                  std::to_string(T));
        if (n >= source.size)
            throw TruncationError("partition_function: source '" + source.name +
                                  "' exhausted before the tail bound was met at T = " +
                                  std::to_string(T));
        const double e = n == 0 ? e0 : source.level(n);
        const double w = std::exp(-beta * (e - e0));
        shifted.push_back(e - e0);
        weight.push_back(w);
        p0 += w;
        p1 += e * w;
        p2 += e * e * w;

        const double a = static_cast<double>(n);
        if (tail_bound(c, g, a, beta, e0, 0) <= opt.tail_tol * p0 &&
            tail_bound(c, g, a, beta, e0, 1) <= opt.tail_tol * std::abs(p1) &&
            tail_bound(c, g, a, beta, e0, 2) <= opt.tail_tol * p2)
            break;
    }

    double z_shifted = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        z_shifted += weight[i];
        mean += shifted[i] * weight[i];
    }
    mean /= z_shifted;
    double var = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        const double d = shifted[i] - mean;
        var += d * d * weight[i];
    }
    var /= z_shifted;

    ThermoPoint pt;
    pt.T = T;
    pt.beta = beta;
    pt.log_Z = -beta * e0 + std::log(z_shifted);
    pt.Z = std::exp(pt.log_Z);
    pt.F = -T * pt.log_Z;
    pt.U = e0 + mean;
    pt.S = beta * mean + std::log(z_shifted);
    pt.C = beta * beta * var;
    pt.levels_used = weight.size();
    return pt;
}

std::vector<ThermoPoint> thermo_sweep(const SpectrumSource& source,
                                      std::span<const double> temperatures,
                                      const ThermoOptions& opt) {
    std::vector<ThermoPoint> out(temperatures.size());
    run_parallel(temperatures.size(),
                 [&](std::size_t i) { out[i] = partition_function(source, temperatures[i], opt); });
    return out;
}

std::vector<ThermoPoint> thermo_sweep_serial(const SpectrumSource& source,
                                             std::span<const double> temperatures,
                                             const ThermoOptions& opt) {
    std::vector<ThermoPoint> out;
    out.reserve(temperatures.size());
    for (double T : temperatures) out.push_back(partition_function(source, T, opt));
    return out;
}

std::vector<double> temperature_grid(double t_min, double t_max, std::size_t points,
                                     GridSpacing spacing) {
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw DomainError("temperature_grid: need 0 < t_min < t_max");
    if (points < 2) throw DomainError("temperature_grid: need at least 2 points");
    std::vector<double> out(points);
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / last;
        out[i] = spacing == GridSpacing::Log
                     ? std::exp(std::log(t_min) + f * (std::log(t_max) - std::log(t_min)))
                     : t_min + f * (t_max - t_min);
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

CharacteristicTemperature characteristic_temperature(const OscillatorParams& params) {
    // Θ coincides with the leading WKB prefactor: E_n^{(1)} = Θ (n+1/2)^{2N/(N+2)}.
    return {wkb_prefactor(params)};
}

double classical_partition_closed_form(const OscillatorParams& params, double T) {
    if (!(T > 0.0)) throw DomainError("classical_partition_closed_form: T must be positive");
    const double N = params.N();
    const double theta = characteristic_temperature(params).theta;
    return gamma(1.5 + 1.0 / N) * std::pow(T / theta, 0.5 + 1.0 / N);
}

double hermitian_classical_partition(double N, double T) {
    if (!(T > 0.0)) throw DomainError("hermitian_classical_partition: T must be positive");
    if (!(N > 0.0)) throw DomainError("hermitian_classical_partition: N must be positive");
    return gamma(1.0 + 1.0 / N) * std::pow(T, 0.5 + 1.0 / N) / std::sqrt(std::numbers::pi);
}

ClassicalThermo classical_entropy_and_heat(const OscillatorParams& params, double T) {
    if (!(T > 0.0)) throw DomainError("classical_entropy_and_heat: T must be positive");
    const double N = params.N();
    const double k = 0.5 + 1.0 / N;
    const double theta = characteristic_temperature(params).theta;
    return {k * (std::log(T / theta) + 1.0) + log_gamma(1.5 + 1.0 / N), k};
}

double semiclassical_sum(const OscillatorParams& params, double T, const ThermoOptions& opt) {
    return partition_function(wkb_source(params, 1), T, opt).Z;
}

double schottky_heat(double T, double gap) {
    if (!(T > 0.0)) throw DomainError("schottky_heat: T must be positive");
    const double x = gap / T;
    return x * x * std::exp(-x);
}

ThermoPoint harmonic_exact(double T) {
    if (!(T > 0.0)) throw DomainError("harmonic_exact: T must be positive");
    const double beta = 1.0 / T;
    const double x = 2.0 * beta;
    const double q = std::exp(-x);
    ThermoPoint pt;
    pt.T = T;
    pt.beta = beta;
    pt.log_Z = -beta - std::log(-std::expm1(-x));
    pt.Z = std::exp(pt.log_Z);
    pt.F = -T * pt.log_Z;
    pt.U = 1.0 + 2.0 * q / (-std::expm1(-x));
    pt.S = beta * pt.U + pt.log_Z;
    pt.C = x * x * q / (std::expm1(-x) * std::expm1(-x));
    return pt;
}

}  // namespace ptthermo
