#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on finite intervals.
// The integrand may return double or std::complex<double>.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ptthermo/errors.hpp"

namespace ptthermo {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Kronrod abscissae on [0, 1); odd indices are the embedded Gauss nodes.
inline constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class T, class F>
Segment<T> gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kKronrodW[7];
    T gauss = fc * kGaussW[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodX[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        kronrod += (f1 + f2) * kKronrodW[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kGaussW[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// ∫_a^b f(x) dx. Throws QuadratureError (carrying the achieved error
/// estimate) when the interval budget runs out before the tolerance is met.
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {})
    -> QuadResult<decltype(f(a))> {
    using T = decltype(f(a));
    QuadResult<T> result;
    if (a == b) return result;

    std::priority_queue<detail::Segment<T>> heap;
    heap.push(detail::gauss_kronrod_15<T>(f, a, b));
    result.evaluations = 15;
    T total = heap.top().value;
    double error = heap.top().error;

    auto done = [&] { return error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!done()) {
        if (heap.size() >= opt.max_intervals)
            throw QuadratureError("integrate: interval budget exhausted, achieved error " +
                                      std::to_string(error),
                                  error);
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw QuadratureError("integrate: interval collapsed, achieved error " +
                                      std::to_string(error),
                                  error);
        auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    total = T{};
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    result.value = total;
    result.error = error;
    return result;
}

}  // namespace ptthermo
