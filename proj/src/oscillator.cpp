#include "ptthermo/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ptthermo/errors.hpp"

namespace ptthermo {

OscillatorParams OscillatorParams::pt(int M, double epsilon) {
    OscillatorParams p{M, epsilon, false};
    p.validate();
    return p;
}

OscillatorParams OscillatorParams::hermitian(double N) {
    if (!(N >= 2.0) || !std::isfinite(N))
        throw DomainError("hermitian reference requires finite N >= 2");
    OscillatorParams p{1, N - 2.0, true};
    p.validate();
    return p;
}

double OscillatorParams::sin_factor() const noexcept {
    if (hermitian_reference) return 1.0;
    return std::sin(M * std::numbers::pi / N());
}

void OscillatorParams::validate() const {
    if (M < 1) throw DomainError("OscillatorParams: M must be >= 1");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw DomainError("OscillatorParams: epsilon must be finite and >= 0");
}

cplx OscillatorParams::potential(cplx x) const {
    if (hermitian_reference) return std::pow(std::abs(x), N());
    if (x == cplx{}) return cplx{};
    cplx x2 = x * x;
    cplx v = x2;
    for (int k = 1; k < M; ++k) v *= x2;
    if (epsilon != 0.0) v *= std::exp(epsilon * std::log(cplx{0.0, 1.0} * x));
    return v;
}

std::string OscillatorParams::label() const {
    std::ostringstream os;
    if (hermitian_reference)
        os << "|x|^" << N();
    else
        os << "x^" << 2 * M << "(ix)^" << epsilon;
    return os.str();
}

TurningPoints turning_points(const OscillatorParams& params, double E) {
    params.validate();
    if (!(E > 0.0)) throw DomainError("turning_points: energy must be positive");
    const double N = params.N();
    const double radius = std::pow(E, 1.0 / N);
    if (params.hermitian_reference) return {cplx{radius, 0.0}, cplx{-radius, 0.0}, E};
    const double pi = std::numbers::pi;
    const double ratio = params.M / N;
    return {std::polar(radius, -pi * (0.5 - ratio)), std::polar(radius, -pi * (0.5 + ratio)),
            E};
}

}  // namespace ptthermo
