#include "ptthermo/classical_contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ptthermo/errors.hpp"

namespace ptthermo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;
constexpr double kTruncationExponent = 40.0;

// Effective M: the Hermitian reference |x|^N behaves like M = N/2, ε = 0.
double effective_m(const OscillatorParams& p) {
    return p.hermitian_reference ? 0.5 * p.N() : static_cast<double>(p.M);
}

// Representative of θ in the continuity domain [-π/2, 3π/2).
double to_natural(double theta) {
    double t = std::fmod(theta + 0.5 * kPi, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t - 0.5 * kPi;
}

// Representative in (-π, π].
double to_reported(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t > kPi) t -= 2.0 * kPi;
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

// N(π/2 - θ) - Mπ on the natural branch. |x|^N is not analytic, so each
// half-plane uses the continuation of its own half-axis, x^N or (-x)^N.
double phase(const OscillatorParams& p, double theta) {
    double t = to_natural(theta);
    if (p.hermitian_reference && t > 0.5 * kPi) t = kPi - t;
    return p.N() * (0.5 * kPi - t) - effective_m(p) * kPi;
}

double distance_from_real_axis(double theta) {
    const double a = std::abs(theta);
    return std::min(a, kPi - a);
}

void push_reported(std::vector<AngularInterval>& out, double lo, double hi) {
    // lo, hi lie in [-π/2, 3π/2]; split where the interval crosses θ = π.
    if (hi <= kPi) {
        out.push_back({lo, hi});
    } else if (lo > kPi) {
        out.push_back({lo - 2.0 * kPi, hi - 2.0 * kPi});
    } else {
        out.push_back({lo, kPi});
        out.push_back({-kPi, hi - 2.0 * kPi});
    }
}

cplx ray_integral(const OscillatorParams& params, double beta, double theta,
                  const QuadOptions& quad) {
    const cplx dir = std::polar(1.0, -theta);
    const double re_unit = params.potential(dir).real();  // Re V at r = 1
    const double r_max = std::pow(kTruncationExponent / (beta * re_unit), 1.0 / params.N());
    auto f = [&](double r) { return std::exp(-beta * params.potential(r * dir)) * dir; };
    return integrate(f, 0.0, r_max, quad).value;
}

}  // namespace

bool is_forbidden(const OscillatorParams& params, double theta) {
    return std::cos(phase(params, theta)) <= kBoundaryTol;
}

WedgeSet wedge_set(const OscillatorParams& params) {
    params.validate();
    const double N = params.N();
    const double m = effective_m(params);
    WedgeSet ws;
    ws.params = params;

    // Forbidden: phase ∈ [π/2 + 2πj, 3π/2 + 2πj]. The Hermitian reference
    // is built from the right half-plane and its mirror image θ -> π - θ.
    const bool mirror = params.hermitian_reference;
    const int span = static_cast<int>(std::ceil(N)) + 4;
    const double lo_dom = -0.5 * kPi, hi_dom = mirror ? 0.5 * kPi : 1.5 * kPi;
    for (int j = -span; j <= span; ++j) {
        double lo = 0.5 * kPi - (m + 1.5 + 2.0 * j) * kPi / N;
        double hi = 0.5 * kPi - (m + 0.5 + 2.0 * j) * kPi / N;
        lo = std::max(lo, lo_dom);
        hi = std::min(hi, hi_dom);
        if (lo < hi) {
            push_reported(ws.forbidden, lo, hi);
            if (mirror) push_reported(ws.forbidden, kPi - hi, kPi - lo);
        }
    }
    std::sort(ws.forbidden.begin(), ws.forbidden.end(),
              [](const AngularInterval& a, const AngularInterval& b) { return a.lo < b.lo; });
    // A wedge straddling the cut at θ = -π/2 comes out as two touching pieces.
    std::vector<AngularInterval> merged;
    for (const auto& iv : ws.forbidden) {
        if (!merged.empty() && iv.lo <= merged.back().hi + kBoundaryTol)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    ws.forbidden = std::move(merged);

    // Centres: phase = 2πk, where V is real and positive on the ray.
    for (int k = -span; k <= span; ++k) {
        const double theta = 0.5 * kPi - (m + 2.0 * k) * kPi / N;
        if (theta < lo_dom || theta > hi_dom || (!mirror && theta == hi_dom)) continue;
        ws.allowed_centers.push_back(to_reported(theta));
        if (mirror) ws.allowed_centers.push_back(to_reported(kPi - theta));
    }
    std::sort(ws.allowed_centers.begin(), ws.allowed_centers.end(), [](double a, double b) {
        const double da = distance_from_real_axis(a), db = distance_from_real_axis(b);
        return da != db ? da < db : std::abs(a) < std::abs(b);
    });
    ws.allowed_centers.erase(std::unique(ws.allowed_centers.begin(), ws.allowed_centers.end(),
                                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                             ws.allowed_centers.end());

    ws.real_axis_viable = !is_forbidden(params, 0.0) && !is_forbidden(params, kPi);
    ws.real_axis_on_boundary = std::abs(std::cos(phase(params, 0.0))) <= kBoundaryTol ||
                               std::abs(std::cos(phase(params, kPi))) <= kBoundaryTol;
    return ws;
}

double RayContour::theta_left() const { return kPi - theta_right; }

RayContour pt_contour(const OscillatorParams& params) {
    params.validate();
    if (params.hermitian_reference) return {0.0};
    return {0.5 * kPi - params.M * kPi / params.N()};
}

void validate_contour(const OscillatorParams& params, const RayContour& contour) {
    if (params.hermitian_reference && contour.theta_right != 0.0)
        throw ContourError("|x|^N is only defined on the real axis");
    if (is_forbidden(params, contour.theta_right) || is_forbidden(params, contour.theta_left()))
        throw ContourError("ray at theta = " + std::to_string(contour.theta_right) +
                           " does not lie strictly inside an allowed wedge of " + params.label());
}

bool same_wedge_system(const OscillatorParams& params, double theta_a, double theta_b) {
    if (is_forbidden(params, theta_a) || is_forbidden(params, theta_b)) return false;
    const double ka = std::round(phase(params, theta_a) / (2.0 * kPi));
    const double kb = std::round(phase(params, theta_b) / (2.0 * kPi));
    return ka == kb;
}

double classical_z_by_rays(const OscillatorParams& params, double T, const RayContour& contour,
                           const QuadOptions& quad) {
    params.validate();
    if (!(T > 0.0)) throw DomainError("classical_z_by_rays: T must be positive");
    validate_contour(params, contour);
    const double beta = 1.0 / T;
    // The left ray is traversed inward, hence the minus sign.
    const cplx total = ray_integral(params, beta, contour.theta_right, quad) -
                       ray_integral(params, beta, contour.theta_left(), quad);
    return total.real() / (2.0 * std::sqrt(kPi * beta));
}

ContourComparison contour_independence_check(const OscillatorParams& params, double T,
                                             const RayContour& a, const RayContour& b,
                                             const QuadOptions& quad) {
    if (!same_wedge_system(params, a.theta_right, b.theta_right))
        throw ContourError("contours at theta = " + std::to_string(a.theta_right) + " and " +
                           std::to_string(b.theta_right) +
                           " are separated by a forbidden wedge");
    ContourComparison out;
    out.z_a = classical_z_by_rays(params, T, a, quad);
    out.z_b = classical_z_by_rays(params, T, b, quad);
    out.relative_difference = std::abs(out.z_a - out.z_b) / std::abs(out.z_a);
    return out;
}

double quartic_h(double x, double p, bool include_anomaly, double alpha) {
    const double p2 = p * p;
    return p2 * p2 / (4.0 * alpha) - (include_anomaly ? 0.5 * p : 0.0) + alpha * x * x;
}

cplx quartic_H(cplx x, cplx p, bool include_anomaly, double alpha) {
    const cplx g = 1.0 + cplx{0.0, 1.0} * x;
    return g * p * p - (include_anomaly ? 0.5 * p : cplx{}) - alpha * g * g;
}

cplx quartic_z(double x) { return cplx{0.0, -2.0} * std::sqrt(cplx{1.0, x}); }

cplx quartic_pz(double x, double p) { return p * std::sqrt(cplx{1.0, x}); }

cplx quartic_canonical_jacobian(double x, double p, double step) {
    const cplx zx = (quartic_z(x + step) - quartic_z(x - step)) / (2.0 * step);
    const cplx zp{0.0, 0.0};
    const cplx pzx = (quartic_pz(x + step, p) - quartic_pz(x - step, p)) / (2.0 * step);
    const cplx pzp = (quartic_pz(x, p + step) - quartic_pz(x, p - step)) / (2.0 * step);
    return zx * pzp - zp * pzx;
}

double quartic_hermitian_z(double T, bool include_anomaly, double alpha,
                           const QuadOptions& quad) {
    if (!(T > 0.0)) throw DomainError("quartic_hermitian_z: T must be positive");
    if (!(alpha > 0.0)) throw DomainError("quartic_hermitian_z: alpha must be positive");
    const double beta = 1.0 / T;
    auto exponent = [&](double p) { return beta * quartic_h(0.0, p, include_anomaly, alpha); };

    // Exponent is convex in p with its minimum at p* = (α)^{1/3} (or 0).
    const double p_star = include_anomaly ? std::cbrt(alpha) : 0.0;
    auto cutoff = [&](double direction) {
        double lo = p_star, hi = p_star + direction;
        while (exponent(hi) < kTruncationExponent) hi = p_star + 2.0 * (hi - p_star);
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-14 * (1.0 + std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (exponent(mid) < kTruncationExponent ? lo : hi) = mid;
        }
        return hi;
    };
    const double p_lo = cutoff(-1.0), p_hi = cutoff(1.0);
    auto f = [&](double p) { return std::exp(-exponent(p)); };
    const double ip =
        integrate(f, p_lo, p_star, quad).value + integrate(f, p_star, p_hi, quad).value;
    const double ix = std::sqrt(kPi / (beta * alpha));
    return ix * ip / (2.0 * kPi);
}

std::vector<ParametricSample> quartic_parametric_contour(std::span<const double> x_grid,
                                                         std::span<const double> p_grid,
                                                         double alpha) {
    std::vector<ParametricSample> out;
    out.reserve(x_grid.size() * p_grid.size());
    for (double p : p_grid) {
        for (double x : x_grid) {
            ParametricSample s;
            s.x = x;
            s.p = p;
            s.xi = cplx{x, 1.0 - p * p / (2.0 * alpha)};
            s.pi = p;
            s.H = quartic_H(s.xi, s.pi, true, alpha);
            out.push_back(s);
        }
    }
    return out;
}

namespace {
std::vector<double> trapezoid_weights(std::span<const double> grid) {
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double h = grid[i + 1] - grid[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}
}  // namespace

double parametric_contour_z(std::span<const ParametricSample> samples,
                            std::span<const double> x_grid, std::span<const double> p_grid,
                            double T, double* imag) {
    if (!(T > 0.0)) throw DomainError("parametric_contour_z: T must be positive");
    if (samples.size() != x_grid.size() * p_grid.size())
        throw DomainError("parametric_contour_z: sample count does not match the grids");
    const double beta = 1.0 / T;
    const auto wx = trapezoid_weights(x_grid);
    const auto wp = trapezoid_weights(p_grid);
    cplx total{};
    for (std::size_t j = 0; j < p_grid.size(); ++j)
        for (std::size_t i = 0; i < x_grid.size(); ++i)
            total += wx[i] * wp[j] * std::exp(-beta * samples[j * x_grid.size() + i].H);
    total /= 2.0 * kPi;
    if (imag) *imag = total.imag();
    return total.real();
}

}  // namespace ptthermo
