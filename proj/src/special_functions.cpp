#include "ptthermo/special_functions.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <string>

#include "ptthermo/errors.hpp"

namespace ptthermo {
namespace {

std::atomic<double> g_log_gamma_skew{0.0};

constexpr double kLanczosG = 671.0 / 128.0;
constexpr std::array<double, 14> kLanczosCoeff = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

double lanczos_log_gamma(double x) {
    double tmp = x + kLanczosG;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double series = 0.999999999999997092;
    double y = x;
    for (double c : kLanczosCoeff) series += c / ++y;
    return tmp + std::log(kSqrtTwoPi * series / x);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma: argument must be positive and finite, got " +
                          std::to_string(x));
    double value;
    if (x == 1.0 || x == 2.0) {
        value = 0.0;
    } else if (x < 0.5) {
        // The series loses relative accuracy close to the pole.
        value = lanczos_log_gamma(x + 1.0) - std::log(x);
    } else {
        value = lanczos_log_gamma(x);
    }
    return value + g_log_gamma_skew.load(std::memory_order_relaxed) * x;
}

double gamma(double x) { return std::exp(log_gamma(x)); }

namespace testing {
void set_log_gamma_skew(double slope) noexcept {
    g_log_gamma_skew.store(slope, std::memory_order_relaxed);
}
double log_gamma_skew() noexcept {
    return g_log_gamma_skew.load(std::memory_order_relaxed);
}
}  // namespace testing

}  // namespace ptthermo
