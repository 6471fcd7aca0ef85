#pragma once

namespace ptthermo {

/// ln Γ(x) for x > 0, Lanczos approximation (g = 671/128, 14 terms).
/// Throws DomainError for x <= 0 or non-finite x.
double log_gamma(double x);

/// Γ(x) for x > 0.
double gamma(double x);

namespace testing {

// Fault injection for the validation harness: adds `slope`·x to every
// log_gamma(x) result. A constant shift would cancel in the ratios of Γ
// values that the closed forms use; a linear one does not. Zero restores normal
// behaviour. Not intended for production use.
void set_log_gamma_skew(double slope) noexcept;
double log_gamma_skew() noexcept;

class ScopedLogGammaSkew {
public:
    explicit ScopedLogGammaSkew(double slope) noexcept
        : previous_(log_gamma_skew()) {
        set_log_gamma_skew(slope);
    }
    ~ScopedLogGammaSkew() { set_log_gamma_skew(previous_); }
    ScopedLogGammaSkew(const ScopedLogGammaSkew&) = delete;
    ScopedLogGammaSkew& operator=(const ScopedLogGammaSkew&) = delete;

private:
    double previous_;
};

}  // namespace testing
}  // namespace ptthermo
