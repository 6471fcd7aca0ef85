#include "ptthermo/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ptthermo/errors.hpp"

namespace ptthermo {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kRenormHigh = 1e100;
constexpr double kRenormLow = 1e-100;

struct Vec2 {
    cplx a, b;
    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator*(double s) const { return {a * s, b * s}; }
};

void renormalize(Vec2& y, double& log_scale) {
    const double mag = std::max(std::abs(y.a), std::abs(y.b));
    if (mag > kRenormHigh || (mag < kRenormLow && mag > 0.0)) {
        y = y * (1.0 / mag);
        log_scale += std::log(mag);
    }
}

}  // namespace

PathState integrate_path(const PotentialFn& potential, double E,
                         std::span<const PathSegment> segments, PathState state,
                         const IntegratorOptions& opt) {
    for (const auto& seg : segments) {
        const cplx delta = seg.end - seg.start;
        const double length = std::abs(delta);
        if (length == 0.0) continue;
        const cplx u = delta / length;
        const cplx u2 = u * u;

        // y = (ψ, dψ/dt) with t the arc length along the segment.
        auto rhs = [&](double t, const Vec2& y) -> Vec2 {
            const cplx x = seg.start + u * t;
            return {y.b, u2 * (potential(x) - E) * y.a};
        };

        Vec2 y{state.psi, state.dpsi_dx * u};
        double t = 0.0;
        double scale_q = std::sqrt(1.0 + std::abs(potential(seg.start) - E));
        double h = std::min(length, 0.05 / scale_q);
        Vec2 k1 = rhs(t, y);

        while (t < length) {
            if (state.steps++ >= opt.max_steps)
                throw ShootingError("integrate_path: step budget exhausted");
            bool last = false;
            if (t + h >= length) {
                h = length - t;
                last = true;
            }
            const Vec2 k2 = rhs(t + c2 * h, y + k1 * (a21 * h));
            const Vec2 k3 = rhs(t + c3 * h, y + (k1 * a31 + k2 * a32) * h);
            const Vec2 k4 = rhs(t + c4 * h, y + (k1 * a41 + k2 * a42 + k3 * a43) * h);
            const Vec2 k5 =
                rhs(t + c5 * h, y + (k1 * a51 + k2 * a52 + k3 * a53 + k4 * a54) * h);
            const Vec2 k6 = rhs(t + h, y + (k1 * a61 + k2 * a62 + k3 * a63 + k4 * a64 +
                                            k5 * a65) * h);
            const Vec2 ynew = y + (k1 * b1 + k3 * b3 + k4 * b4 + k5 * b5 + k6 * b6) * h;
            const Vec2 k7 = rhs(t + h, ynew);
            const Vec2 err =
                (k1 * e1 + k3 * e3 + k4 * e4 + k5 * e5 + k6 * e6 + k7 * e7) * h;

            // Weighted norm: ψ' is measured against the local wavenumber.
            const double q = scale_q;
            const double size = std::max({std::abs(y.a), std::abs(y.b) / q, std::abs(ynew.a),
                                          std::abs(ynew.b) / q});
            const double errn =
                std::max(std::abs(err.a), std::abs(err.b) / q) / (opt.rtol * size);
            if (!std::isfinite(errn))
                throw ShootingError("integrate_path: non-finite state at E = " +
                                    std::to_string(E));

            if (errn <= 1.0) {
                t = last ? length : t + h;
                y = ynew;
                k1 = k7;
                const double before = state.log_scale;
                renormalize(y, state.log_scale);
                if (state.log_scale != before) k1 = rhs(t, y);
                scale_q = std::sqrt(1.0 + std::abs(potential(seg.start + u * t) - E));
            }
            const double factor =
                errn == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(errn, -0.2), 0.2, 5.0);
            h *= (errn <= 1.0) ? factor : std::min(factor, 1.0);
            if (h < 1e-15 * std::max(1.0, length))
                throw ShootingError("integrate_path: step size underflow at E = " +
                                    std::to_string(E));
        }
        state.psi = y.a;
        state.dpsi_dx = y.b / u;
    }
    return state;
}

}  // namespace ptthermo
