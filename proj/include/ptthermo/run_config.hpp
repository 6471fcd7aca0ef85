#pragma once

// Settings shared by the command-line subcommands. Precedence, lowest
// first: built-in defaults, PTTHERMO_* environment variables, a key=value
// config file, explicit flags.

#include <optional>
#include <string>
#include <vector>

#include "ptthermo/oscillator.hpp"
#include "ptthermo/thermo.hpp"

namespace ptthermo {

enum class MethodSelector { WKB1, WKB2, Exact, All };
enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string subcommand;
    int M = 1;
    double epsilon = 0.0;
    bool hermitian = false;
    /// Exponent of |x|^N; defaults to 2M + ε when unset.
    std::optional<double> N;
    int n_max = 10;
    /// Explicit quantum numbers; overrides n_max when non-empty.
    std::vector<int> n_list;
    double t_min = 0.05;
    double t_max = 50.0;
    int points = 200;
    GridSpacing spacing = GridSpacing::Log;
    /// Unset: all methods for `spectrum`, WKB2 levels for `thermo`.
    std::optional<MethodSelector> method;
    /// Unset: CSV for tables, JSON for the classical report.
    std::optional<OutputFormat> format;
    double tail_tol = 1e-10;
    double quad_tol = 1e-10;
    double root_tol = 1e-8;
    /// Empty means stdout.
    std::string out;
    bool compare_hermitian = false;
    double T = 1.0;
    std::optional<double> theta;
    bool quartic_check = false;
    bool json = false;
    bool inject_gamma_fault = false;

    /// Oscillator selected by M, ε, and the Hermitian switch.
    OscillatorParams params() const;
    /// Throws DomainError on non-positive tolerances, t_min >= t_max, or
    /// fewer than two grid points.
    void validate() const;
};

/// Defaults with tolerance overrides from PTTHERMO_TAIL_TOL,
/// PTTHERMO_QUAD_TOL and PTTHERMO_ROOT_TOL.
RunConfig config_from_environment();

/// Sets one field by its long-option name (e.g. "tail-tol" or "tail_tol").
/// Throws DomainError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads key=value lines; blank lines and lines starting with '#' are
/// skipped. Throws DomainError if the file cannot be read.
void load_config_file(RunConfig& config, const std::string& path);

MethodSelector parse_method(const std::string& s);
GridSpacing parse_spacing(const std::string& s);
OutputFormat parse_format(const std::string& s);

}  // namespace ptthermo
