#pragma once

// Independent reference computations for the unit tests.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Lowest `count` eigenvalues of -d²/dx² + V(x) on [-L, L] with Dirichlet
// ends: second-order finite differences on n and 2n interior points,
// Richardson-extrapolated to O(h⁴).
inline std::vector<double> finite_difference_levels(const std::function<double(double)>& V,
                                                    double L, int n, int count) {
    auto solve = [&](int m) {
        const double h = 2.0 * L / (m + 1);
        Eigen::VectorXd diag(m), sub(m - 1);
        for (int i = 0; i < m; ++i) diag[i] = 2.0 / (h * h) + V(-L + (i + 1) * h);
        sub.setConstant(-1.0 / (h * h));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    };
    const Eigen::VectorXd coarse = solve(n);
    const Eigen::VectorXd fine = solve(2 * n + 1);  // exactly half the spacing
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back((4.0 * fine[k] - coarse[k]) / 3.0);
    return out;
}

// ∫₀¹ √(1 - s^N) ds = Γ(1+1/N) Γ(3/2) / Γ(3/2+1/N).
inline double action_integral_closed_form(double N) {
    return std::tgamma(1.0 + 1.0 / N) * std::tgamma(1.5) / std::tgamma(1.5 + 1.0 / N);
}

}  // namespace oracle
