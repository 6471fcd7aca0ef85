#include "ptthermo/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "ptthermo/errors.hpp"
#include "ptthermo/quadrature.hpp"
#include "ptthermo/spectrum.hpp"

namespace ptthermo {
namespace {

constexpr double kPi = std::numbers::pi;

PotentialFn potential_of(const OscillatorParams& params) {
    return [params](cplx x) { return params.potential(x); };
}

// Decaying initial condition at the far end of a path whose first segment
// points inward along u: dψ/dt = κψ with Re κ >= 0.
PathState decaying_start(const OscillatorParams& params, double E, const PathSegment& first) {
    const cplx u = (first.end - first.start) / std::abs(first.end - first.start);
    const cplx kappa = std::sqrt(u * u * (params.potential(first.start) - E));
    PathState s;
    s.psi = 1.0;
    s.dpsi_dx = kappa / u;
    return s;
}

// Imaginary part of ∫_{x0}^{x_+} √(1 - V) dx along the straight segment, at
// E = 1. The branch of the square root is continued along the path.
double segment_phase_imag(const OscillatorParams& params, double y) {
    const TurningPoints tp = turning_points(params, 1.0);
    const cplx x0{0.0, -y};
    const cplx delta = tp.x_plus - x0;
    constexpr int kSamples = 600;
    const double dw = 1.0 / kSamples;
    cplx total{};
    cplx previous{};
    bool first = true;
    // t = 1 - w² maps the square-root edge at x_+ to a smooth zero.
    for (int k = kSamples - 1; k >= 0; --k) {
        const double w = (k + 0.5) * dw;
        const double t = 1.0 - w * w;
        cplx root = std::sqrt(1.0 - params.potential(x0 + t * delta));
        if (!first && std::abs(root - previous) > std::abs(root + previous)) root = -root;
        previous = root;
        first = false;
        total += root * delta * (2.0 * w * dw);
    }
    return total.imag();
}

struct RootBracket {
    double lo;
    double hi;
};

RootBracket wkb_bracket(const OscillatorParams& params, int n) {
    const double e = wkb_energy(params, n, 2).energy;
    const double above = wkb_energy(params, n + 1, 2).energy;
    const double below = n == 0 ? 0.0 : wkb_energy(params, n - 1, 2).energy;
    return {0.5 * (below + e), 0.5 * (e + above)};
}

// Hermitian reference: state at the origin from a single right-hand ray.
struct OriginValues {
    cplx psi;
    cplx dpsi_dx;
};

OriginValues hermitian_origin(const OscillatorParams& params, double E,
                              const IntegratorOptions& opt, double r_max_scale) {
    const double r_max = r_max_scale * choose_r_max(params, E, 0.0, opt.decay_exponent);
    const ShootingState st = integrate_ray(params, E, RaySpec{0.0, r_max, RaySide::Right}, opt);
    return {st.psi, st.dpsi};
}

double hermitian_norm(const OriginValues& v, double E) {
    return std::hypot(std::abs(v.psi) * std::sqrt(E), std::abs(v.dpsi_dx));
}

// Root function used for level n: parity-selected for |x|^N, Wronskian
// otherwise.
double level_function(const OscillatorParams& params, int n, double E, const EigenOptions& opt,
                      double* imag_out) {
    if (params.hermitian_reference) {
        const OriginValues v = hermitian_origin(params, E, opt.integrator, opt.r_max_scale);
        const double norm = hermitian_norm(v, E);
        if (imag_out)
            *imag_out = std::max(std::abs(v.psi.imag()) * std::sqrt(E),
                                 std::abs(v.dpsi_dx.imag())) / norm;
        return (n % 2 == 0) ? v.dpsi_dx.real() / norm : v.psi.real() * std::sqrt(E) / norm;
    }
    const MatchingValue m = matching_function(params, E, opt.integrator, opt.r_max_scale);
    if (imag_out) *imag_out = std::abs(m.imag);
    return m.value;
}

template <class Body>
void run_parallel(int count, Body&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

cplx RaySpec::direction() const {
    const cplx right = std::polar(1.0, -theta);
    return side == RaySide::Right ? right : -std::conj(right);
}

double quantum_wedge_center(const OscillatorParams& params) {
    params.validate();
    if (params.hermitian_reference) return 0.0;
    return params.epsilon * kPi / (2.0 * (params.N() + 2.0));
}

double quantum_wedge_half_opening(const OscillatorParams& params) {
    return kPi / (params.N() + 2.0);
}

double turning_ray_angle(const OscillatorParams& params) {
    if (params.hermitian_reference) return 0.0;
    return kPi * (0.5 - params.M / params.N());
}

double decay_exponent(const OscillatorParams& params, double E, double theta, double r_max) {
    const double r_turn = std::pow(E, 1.0 / params.N());
    if (r_max <= r_turn) return 0.0;
    const cplx dir = std::polar(1.0, -theta);
    auto rate = [&](double r) {
        return std::sqrt(dir * dir * (params.potential(r * dir) - E)).real();
    };
    QuadOptions q;
    q.rel_tol = 1e-8;
    return integrate(rate, r_turn, r_max, q).value;
}

double choose_r_max(const OscillatorParams& params, double E, double theta, double target) {
    if (!(E > 0.0)) throw DomainError("choose_r_max: energy must be positive");
    const double r_turn = std::pow(E, 1.0 / params.N());
    double lo = r_turn;
    double hi = 1.5 * r_turn;
    int guard = 0;
    while (decay_exponent(params, E, theta, hi) < target) {
        lo = hi;
        hi *= 1.5;
        if (++guard > 200)
            throw ShootingError("choose_r_max: ray never reaches the decay exponent; "
                                "is it outside the Stokes wedge?");
    }
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        (decay_exponent(params, E, theta, mid) < target ? lo : hi) = mid;
    }
    return hi;
}

ShootingState integrate_ray(const OscillatorParams& params, double E, const RaySpec& ray,
                            const IntegratorOptions& opt) {
    params.validate();
    if (!(E > 0.0)) throw DomainError("integrate_ray: energy must be positive");
    if (!(ray.r_max > 0.0)) throw DomainError("integrate_ray: r_max must be positive");
    const double exponent = decay_exponent(params, E, ray.theta, ray.r_max);
    if (exponent < opt.decay_exponent)
        throw ShootingError("integrate_ray: r_max = " + std::to_string(ray.r_max) +
                            " reaches decay exponent " + std::to_string(exponent) +
                            " < " + std::to_string(opt.decay_exponent));
    const cplx dir = ray.direction();
    const PathSegment seg{ray.r_max * dir, cplx{}};
    const PathState end = integrate_path(potential_of(params), E, std::span(&seg, 1),
                                         decaying_start(params, E, seg), opt);
    return {end.psi, end.dpsi_dx * dir, 0.0, end.log_scale};
}

double matching_point_depth(const OscillatorParams& params) {
    params.validate();
    if (params.hermitian_reference || params.epsilon == 0.0) return 0.0;
    constexpr int kScan = 96;
    const double y_max = 1.0;  // |x_+| at E = 1
    double y_prev = 1e-3;
    double f_prev = segment_phase_imag(params, y_prev);
    for (int k = 1; k <= kScan; ++k) {
        const double y = y_max * k / kScan;
        const double f = segment_phase_imag(params, y);
        if ((f_prev < 0.0) != (f < 0.0)) {
            double lo = y_prev, hi = y, flo = f_prev;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = segment_phase_imag(params, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        y_prev = y;
        f_prev = f;
    }
    throw ShootingError("matching_point_depth: no real-phase segment found for " +
                        params.label());
}

std::vector<PathSegment> shooting_path(const OscillatorParams& params, double E,
                                       const IntegratorOptions& opt, double r_max_scale) {
    params.validate();
    if (!(E > 0.0)) throw DomainError("shooting_path: energy must be positive");
    const double theta = turning_ray_angle(params);
    const double r_max = r_max_scale * choose_r_max(params, E, theta, opt.decay_exponent);
    const TurningPoints tp = turning_points(params, E);
    const cplx x0{0.0, -matching_point_depth(params) * std::pow(E, 1.0 / params.N())};
    return {{std::polar(r_max, -theta), tp.x_plus}, {tp.x_plus, x0}};
}

MatchingValue matching_function(const OscillatorParams& params, double E,
                                const IntegratorOptions& opt, double r_max_scale) {
    if (params.hermitian_reference) {
        const OriginValues v = hermitian_origin(params, E, opt, r_max_scale);
        const double norm = hermitian_norm(v, E);
        const cplx w = 2.0 * v.psi * v.dpsi_dx * std::sqrt(E) / (norm * norm);
        return {w.real(), w.imag()};
    }
    const auto right = shooting_path(params, E, opt, r_max_scale);
    std::vector<PathSegment> left;
    left.reserve(right.size());
    for (const auto& s : right) left.push_back({-std::conj(s.start), -std::conj(s.end)});

    const auto V = potential_of(params);
    const PathState r = integrate_path(V, E, right, decaying_start(params, E, right.front()), opt);
    const PathState l = integrate_path(V, E, left, decaying_start(params, E, left.front()), opt);
    const cplx w = l.psi * r.dpsi_dx - r.psi * l.dpsi_dx;
    const double norm =
        std::abs(l.psi) * std::abs(r.dpsi_dx) + std::abs(r.psi) * std::abs(l.dpsi_dx);
    return {w.real() / norm, w.imag() / norm};
}

EigenResult eigenvalue(const OscillatorParams& params, int n, const EigenOptions& opt) {
    params.validate();
    if (n < 0) throw DomainError("eigenvalue: n must be >= 0");
    const RootBracket br = wkb_bracket(params, n);
    double a = br.lo, b = br.hi;
    auto f = [&](double E) { return level_function(params, n, E, opt, nullptr); };
    double fa = f(a), fb = f(b);
    if ((fa < 0.0) == (fb < 0.0))
        throw RootError("eigenvalue: no sign change for n = " + std::to_string(n) + " on [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]",
                        a, b);

    // Illinois regula falsi; g* are the (possibly halved) weights, f* the
    // true function values kept for the slope estimate.
    double ga = fa, gb = fb;
    int retained = 0;
    double c = a, fc = fa, c_prev = b;
    EigenResult res;
    res.n = n;
    for (int it = 1; it <= opt.max_iter; ++it) {
        res.iterations = it;
        c = (a * gb - b * ga) / (gb - ga);
        // Fall back to bisection if the secant point leaves the bracket or
        // the bracket is shrinking slowly.
        if (!(c > a && c < b) || (it % 8 == 0)) c = 0.5 * (a + b);
        fc = f(c);
        if (fc == 0.0) {
            a = b = c;
            break;
        }
        if ((fc < 0.0) == (fb < 0.0)) {
            b = c;
            fb = gb = fc;
            if (retained == -1) ga *= 0.5;
            retained = -1;
        } else {
            a = c;
            fa = ga = fc;
            if (retained == 1) gb *= 0.5;
            retained = 1;
        }
        const double scale = std::abs(c);
        if (b - a <= opt.root_tol * scale || std::abs(c - c_prev) <= 0.25 * opt.root_tol * scale)
            break;
        c_prev = c;
    }

    double imag = 0.0;
    res.energy = c;
    const double fval = level_function(params, n, c, opt, &imag);
    const double slope = (b > a) ? (fb - fa) / (b - a) : 0.0;
    res.wronskian_residual =
        slope != 0.0 ? std::abs(fval / (slope * c)) : (fval == 0.0 ? 0.0 : 1.0);
    res.imag_ratio = imag;
    res.converged = res.iterations < opt.max_iter && res.wronskian_residual <= opt.root_tol;
    if (res.iterations >= opt.max_iter)
        throw RootError("eigenvalue: no convergence for n = " + std::to_string(n), a, b);
    return res;
}

std::vector<EigenResult> eigenvalues(const OscillatorParams& params, int n_max,
                                     const EigenOptions& opt) {
    if (n_max < 0) throw DomainError("eigenvalues: n_max must be >= 0");
    params.validate();
    std::vector<EigenResult> out(static_cast<std::size_t>(n_max) + 1);
    run_parallel(n_max + 1,
                 [&](int n) { out[static_cast<std::size_t>(n)] = eigenvalue(params, n, opt); });
    return out;
}

std::vector<EigenResult> eigenvalues_serial(const OscillatorParams& params, int n_max,
                                            const EigenOptions& opt) {
    if (n_max < 0) throw DomainError("eigenvalues: n_max must be >= 0");
    std::vector<EigenResult> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(eigenvalue(params, n, opt));
    return out;
}

std::vector<EigenResult> eigenvalues_for(const OscillatorParams& params,
                                         std::span<const int> levels, const EigenOptions& opt) {
    params.validate();
    std::vector<EigenResult> out(levels.size());
    run_parallel(static_cast<int>(levels.size()), [&](int i) {
        out[static_cast<std::size_t>(i)] = eigenvalue(params, levels[static_cast<std::size_t>(i)], opt);
    });
    return out;
}

int count_eigenvalues_below(const OscillatorParams& params, double E, const EigenOptions& opt) {
    params.validate();
    const double start = 0.25 * wkb_energy(params, 0, 2).energy;
    if (!(E > start)) return 0;
    auto sample = [&](double e) {
        return matching_function(params, e, opt.integrator, opt.r_max_scale).value;
    };
    int count = 0;
    double e = start;
    double f_prev = sample(e);
    int n = 0;
    while (e < E) {
        // Local gap from the WKB levels around the current energy.
        while (wkb_energy(params, n + 1, 2).energy < e) ++n;
        const double gap = wkb_energy(params, n + 1, 2).energy - wkb_energy(params, n, 2).energy;
        e = std::min(E, e + gap / 8.0);
        const double f = sample(e);
        if ((f < 0.0) != (f_prev < 0.0)) ++count;
        f_prev = f;
    }
    return count;
}

}  // namespace ptthermo
