#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "ptthermo/oscillator.hpp"

namespace ptthermo {

using PotentialFn = std::function<cplx(cplx)>;

struct IntegratorOptions {
    /// Local relative error per step (Dormand-Prince 5(4) embedded estimate).
    double rtol = 1e-11;
    /// Required WKB decay exponent between the turning point and the
    /// truncation radius.
    double decay_exponent = 35.0;
    std::size_t max_steps = 5'000'000;
};

/// Straight piece of a complex integration path, traversed start -> end.
struct PathSegment {
    cplx start;
    cplx end;
};

/// Wavefunction at a point of the path. The stored magnitude is kept within
/// [1e-100, 1e100]; the factored-out size is exp(log_scale).
struct PathState {
    cplx psi{1.0, 0.0};
    cplx dpsi_dx{0.0, 0.0};
    double log_scale = 0.0;
    std::size_t steps = 0;
};

/// Integrates -ψ'' + V(x)ψ = Eψ along consecutive straight segments,
/// starting from `initial` at segments.front().start.
/// Throws ShootingError on step-size underflow, step budget exhaustion or
/// non-finite values.
PathState integrate_path(const PotentialFn& potential, double E,
                         std::span<const PathSegment> segments, PathState initial,
                         const IntegratorOptions& opt = {});

}  // namespace ptthermo
