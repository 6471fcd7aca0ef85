#pragma once

#include <complex>
#include <string>

namespace ptthermo {

using cplx = std::complex<double>;

/// H = p² + x^{2M} (ix)^ε, total exponent N = 2M + ε.
///
/// With `hermitian_reference` set the potential is |x|^N instead: the
/// sin(Mπ/N) factors drop out of every closed form, and M, ε only enter
/// through N.
struct OscillatorParams {
    int M = 1;
    double epsilon = 0.0;
    bool hermitian_reference = false;

    /// Validated PT-symmetric member of the family.
    static OscillatorParams pt(int M, double epsilon);
    /// Hermitian comparison potential |x|^N (stored as M = 1, ε = N - 2).
    static OscillatorParams hermitian(double N);

    double N() const noexcept { return 2.0 * M + epsilon; }

    /// sin(Mπ/N), or 1 for the Hermitian reference.
    double sin_factor() const noexcept;

    /// Throws DomainError unless M >= 1, ε >= 0 (both finite).
    void validate() const;

    /// V(x). The PT potential uses the principal branch of log(ix), so the
    /// cut lies on the positive imaginary axis and V(-conj x) = conj V(x).
    /// The Hermitian reference evaluates |x|^N (meaningful on the real
    /// axis only).
    cplx potential(cplx x) const;

    std::string label() const;
};

/// Complex turning points x_± solving V(x) = E.
struct TurningPoints {
    cplx x_plus;
    cplx x_minus;
    double energy = 0.0;
};

/// x_± = E^{1/N} exp(-iπ(1/2 ∓ M/N)); real ±E^{1/N} for the Hermitian
/// reference. Throws DomainError for E <= 0.
TurningPoints turning_points(const OscillatorParams& params, double E);

}  // namespace ptthermo
