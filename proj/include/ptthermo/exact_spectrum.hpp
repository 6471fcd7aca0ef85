#pragma once

// Shooting-method eigenvalues of -ψ'' + V(x)ψ = Eψ with ψ → 0 at both ends
// of a PT-symmetric complex contour (or the real axis for |x|^N).

#include <span>
#include <vector>

#include "ptthermo/ode.hpp"
#include "ptthermo/oscillator.hpp"

namespace ptthermo {

enum class RaySide { Left, Right };

/// Ray x = r·direction(), r in [0, r_max]. The right ray is r e^{-iθ}
/// (θ measured downward from the positive real axis); the left ray is its
/// PT image -conj(r e^{-iθ}).
struct RaySpec {
    double theta = 0.0;
    double r_max = 0.0;
    RaySide side = RaySide::Right;

    cplx direction() const;
};

/// State returned at the origin by integrate_ray; `dpsi` is dψ/dr along the
/// ray (r growing outward).
struct ShootingState {
    cplx psi;
    cplx dpsi;
    double r = 0.0;
    double log_scale = 0.0;
};

/// Angle below the real axis of the right quantum Stokes wedge centre,
/// επ/(2(N+2)). Zero for the Hermitian reference.
double quantum_wedge_center(const OscillatorParams& params);
/// Half opening angle π/(N+2) of each quantum Stokes wedge.
double quantum_wedge_half_opening(const OscillatorParams& params);
/// arg of the right turning point, measured downward: π(1/2 - M/N).
double turning_ray_angle(const OscillatorParams& params);

/// Re ∫ √(e^{-2iθ}(V(r e^{-iθ}) - E)) dr from |x_±| = E^{1/N} to r_max:
/// the WKB decay exponent of the subdominant solution along the ray.
double decay_exponent(const OscillatorParams& params, double E, double theta, double r_max);

/// Smallest radius (within 0.1%) with decay_exponent >= target.
double choose_r_max(const OscillatorParams& params, double E, double theta, double target);

/// Integrates inward from ray.r_max to the origin with the decaying WKB
/// initial condition ψ = 1, dψ/dr = -κψ. Throws ShootingError when r_max
/// does not reach the configured decay exponent.
ShootingState integrate_ray(const OscillatorParams& params, double E, const RaySpec& ray,
                            const IntegratorOptions& opt = {});

/// Depth y₀ (at E = 1) of the matching point x₀ = -i y₀ E^{1/N} on the
/// negative imaginary axis. It is chosen so that the straight segment from
/// x₀ to x_+ carries a real WKB phase, which keeps the two local solutions
/// of comparable size between the turning points. Zero when ε = 0.
double matching_point_depth(const OscillatorParams& params);

/// Right-hand shooting path at energy E: the ray through x_+ truncated at
/// r_max, then the segment x_+ -> x₀. The left path is its PT mirror.
std::vector<PathSegment> shooting_path(const OscillatorParams& params, double E,
                                       const IntegratorOptions& opt = {},
                                       double r_max_scale = 1.0);

struct MatchingValue {
    /// Real part of the normalised Wronskian
    /// (ψ_L ψ_R' - ψ_R ψ_L') / (|ψ_L||ψ_R'| + |ψ_R||ψ_L'|); zero at eigenvalues.
    double value = 0.0;
    /// Imaginary part of the same quantity (zero by PT symmetry).
    double imag = 0.0;
};

/// Matching function at energy E. Left and right solutions are integrated
/// independently. For the Hermitian reference it is 2ψ(0)ψ'(0)/norm² from a
/// single real-axis integration (left solution by parity).
MatchingValue matching_function(const OscillatorParams& params, double E,
                                const IntegratorOptions& opt = {}, double r_max_scale = 1.0);

struct EigenOptions {
    /// Relative energy tolerance of the root finder.
    double root_tol = 1e-8;
    int max_iter = 200;
    /// Multiplies every automatically chosen truncation radius.
    double r_max_scale = 1.0;
    IntegratorOptions integrator{};
};

struct EigenResult {
    int n = 0;
    double energy = 0.0;
    /// |f(E)| / |E f'(E)| at the returned root: relative Newton step estimate.
    double wronskian_residual = 0.0;
    /// |Im W| / (normalisation) at the root; PT symmetry makes this ~0.
    double imag_ratio = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// n-th eigenvalue, bracketed by the midpoints between neighbouring WKB2
/// levels and refined by Illinois regula falsi (bisection safeguarded).
/// Hermitian reference: root of ψ'(0) for even n and ψ(0) for odd n.
/// Throws RootError when the bracket carries no sign change.
EigenResult eigenvalue(const OscillatorParams& params, int n, const EigenOptions& opt = {});

/// Eigenvalues 0..n_max, one OpenMP task per level.
std::vector<EigenResult> eigenvalues(const OscillatorParams& params, int n_max,
                                     const EigenOptions& opt = {});
/// Single-threaded reference for eigenvalues().
std::vector<EigenResult> eigenvalues_serial(const OscillatorParams& params, int n_max,
                                            const EigenOptions& opt = {});
/// Eigenvalues for an arbitrary list of quantum numbers, in input order.
std::vector<EigenResult> eigenvalues_for(const OscillatorParams& params,
                                         std::span<const int> levels,
                                         const EigenOptions& opt = {});

/// Number of sign changes of the matching function on a grid from a quarter
/// of the WKB ground state up to E (eight samples per local WKB gap).
int count_eigenvalues_below(const OscillatorParams& params, double E,
                            const EigenOptions& opt = {});

}  // namespace ptthermo
