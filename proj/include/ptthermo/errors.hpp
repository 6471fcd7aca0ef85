#pragma once

#include <stdexcept>
#include <string>

namespace ptthermo {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature stopped before meeting its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// ODE integration along a shooting path failed (step underflow, overflow,
/// truncation radius too small).
class ShootingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalue search failed: no sign change in the seeded bracket, or the
/// root finder ran out of iterations.
class RootError : public std::runtime_error {
public:
    RootError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Partition sum hit the hard level cap before the tail bound was met.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration contour rejected (ray in a forbidden wedge, or two contours
/// that cannot be deformed into each other).
class ContourError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ptthermo
