#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ptthermo/errors.hpp"
#include "ptthermo/special_functions.hpp"

using namespace ptthermo;

TEST_SUITE("special_functions") {

TEST_CASE("log_gamma is exactly zero at 1 and 2") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
}

TEST_CASE("half-integer and integer values") {
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK(ptthermo::gamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-13));
    CHECK(ptthermo::gamma(3.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(ptthermo::gamma(0.5) * ptthermo::gamma(0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("ptthermo::gamma(1.25) matches the Euler integral by quadrature") {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double ref =
        integrator.integrate([](double t) { return std::pow(t, 0.25) * std::exp(-t); }, 0.0,
                             std::numeric_limits<double>::infinity());  // = Γ(5/4)
    CHECK(ptthermo::gamma(1.25) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("recurrence ptthermo::gamma(x+1) = x ptthermo::gamma(x)") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(0.5, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        const double lhs = ptthermo::gamma(x + 1.0), rhs = x * ptthermo::gamma(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("agrees with std::lgamma across (0, 200]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_x(std::log(1e-3), std::log(200.0));
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double x = std::exp(log_x(rng));
        const double ref = std::lgamma(x);
        worst = std::max(worst, std::abs(log_gamma(x) - ref) / std::max(1.0, std::abs(ref)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
    CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(ptthermo::gamma(-0.0), DomainError);
}

TEST_CASE("fault injection shifts ln Gamma and restores it") {
    const double clean = log_gamma(2.5);
    {
        testing::ScopedLogGammaSkew fault(0.25);
        CHECK(log_gamma(2.5) == doctest::Approx(clean + 0.25 * 2.5).epsilon(1e-15));
        CHECK(ptthermo::gamma(2.5) == doctest::Approx(std::exp(clean + 0.25 * 2.5)).epsilon(1e-13));
    }
    CHECK(log_gamma(2.5) == clean);
    CHECK(testing::log_gamma_skew() == 0.0);
}

}  // TEST_SUITE
