#pragma once

// Classical (high-temperature) partition function as a complex-contour
// integral: forbidden/allowed wedges of e^{-βV}, two-ray contours, and the
// wrong-sign quartic mapped to its Hermitian equivalent.

#include <span>
#include <vector>

#include "ptthermo/oscillator.hpp"
#include "ptthermo/quadrature.hpp"

namespace ptthermo {

// Angles θ parametrise x = r e^{-iθ} (positive below the real axis). Wedge
// classification uses the branch of V continuous on θ ∈ [-π/2, 3π/2), i.e.
// with the cut on the positive imaginary axis; reported angles are mapped
// into (-π, π]. For |x|^N the right half-plane continues x^N and the left
// half-plane (-x)^N.

struct AngularInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

struct WedgeSet {
    OscillatorParams params;
    /// Closed forbidden intervals (boundaries count as forbidden).
    std::vector<AngularInterval> forbidden;
    /// Directions on which V is real and positive, nearest the real axis first.
    std::vector<double> allowed_centers;
    bool real_axis_viable = false;
    /// True when a forbidden-wedge edge lies on the real axis.
    bool real_axis_on_boundary = false;
};

/// cos[N(π/2 - θ) - Mπ] <= 0.
bool is_forbidden(const OscillatorParams& params, double theta);

WedgeSet wedge_set(const OscillatorParams& params);

/// Two rays through the origin: from ∞·e^{-iθ_L} into 0, then out to
/// ∞·e^{-iθ_R}, with θ_L = π - θ_R the PT mirror.
struct RayContour {
    double theta_right = 0.0;
    double theta_left() const;
};

/// Contour through the centres of the allowed wedges adjacent to the
/// turning points, θ_R = π/2 - Mπ/N (the real axis for |x|^N).
RayContour pt_contour(const OscillatorParams& params);

/// Throws ContourError unless both rays lie strictly inside allowed wedges.
void validate_contour(const OscillatorParams& params, const RayContour& contour);

/// True when θ_a and θ_b (right rays) lie in the same allowed wedge, so the
/// two contours deform into each other without crossing forbidden sectors.
bool same_wedge_system(const OscillatorParams& params, double theta_a, double theta_b);

/// (1/(2√(πβ))) Re ∫_contour e^{-βV(x)} dx by adaptive quadrature on each
/// ray, truncated where Re βV reaches 40.
double classical_z_by_rays(const OscillatorParams& params, double T, const RayContour& contour,
                           const QuadOptions& quad = {});

struct ContourComparison {
    double z_a = 0.0;
    double z_b = 0.0;
    double relative_difference = 0.0;
};

/// |Z_a - Z_b| / Z_a. Throws ContourError if the contours sit in different
/// wedge systems (those legitimately disagree).
ContourComparison contour_independence_check(const OscillatorParams& params, double T,
                                             const RayContour& a, const RayContour& b,
                                             const QuadOptions& quad = {});

// --- Wrong-sign quartic, H = p² - x⁴ -------------------------------------

inline constexpr double kQuarticAlpha = 16.0;

/// h(x,p) = p⁴/(4α) - p/2 + αx², the anomaly term -p/2 optional.
double quartic_h(double x, double p, bool include_anomaly, double alpha = kQuarticAlpha);

/// H(x,p) = ½{1+ix, p²} - p/2 - α(1+ix)² with classical variables, so the
/// symmetrised product is just (1+ix)p². Complex arguments allowed.
cplx quartic_H(cplx x, cplx p, bool include_anomaly = true, double alpha = kQuarticAlpha);

/// z = -2i√(1+ix), p_z = p√(1+ix).
cplx quartic_z(double x);
cplx quartic_pz(double x, double p);

/// Jacobian determinant ∂(z, p_z)/∂(x, p) by central differences.
cplx quartic_canonical_jacobian(double x, double p, double step = 1e-5);

/// (1/2π) ∫∫ e^{-βh(x,p)} dx dp: Gaussian x-integral in closed form, the
/// p-integral by adaptive quadrature truncated where the exponent reaches 40.
double quartic_hermitian_z(double T, bool include_anomaly, double alpha = kQuarticAlpha,
                           const QuadOptions& quad = {});

struct ParametricSample {
    double x = 0.0;
    double p = 0.0;
    cplx xi;
    cplx pi;
    cplx H;
};

/// ξ = x + i(1 - p²/(2α)), π = p, and H(ξ, π), on the tensor grid
/// x_grid × p_grid (row-major in p, then x).
std::vector<ParametricSample> quartic_parametric_contour(std::span<const double> x_grid,
                                                         std::span<const double> p_grid,
                                                         double alpha = kQuarticAlpha);

/// Trapezoidal (1/2π) Σ e^{-βH(ξ,π)} Δx Δp over samples from
/// quartic_parametric_contour on uniform grids. Returns the real part; the
/// imaginary part is written to *imag when non-null.
double parametric_contour_z(std::span<const ParametricSample> samples,
                            std::span<const double> x_grid, std::span<const double> p_grid,
                            double T, double* imag = nullptr);

}  // namespace ptthermo
