#include "ptthermo/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ptthermo/errors.hpp"

namespace ptthermo {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(x))
        throw DomainError("config: '" + key + "' expects a number, got '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw DomainError("config: '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw DomainError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

OscillatorParams RunConfig::params() const {
    if (hermitian) return OscillatorParams::hermitian(N.value_or(2.0 * M + epsilon));
    return OscillatorParams::pt(M, epsilon);
}

void RunConfig::validate() const {
    if (!(tail_tol > 0.0) || !(quad_tol > 0.0) || !(root_tol > 0.0))
        throw DomainError("tolerances must be positive");
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("need 0 < tmin < tmax");
    if (points < 2) throw DomainError("need at least 2 temperature points");
    if (n_max < 0) throw DomainError("n-max must be non-negative");
    if (std::any_of(n_list.begin(), n_list.end(), [](int n) { return n < 0; }))
        throw DomainError("quantum numbers must be non-negative");
    if (!(T > 0.0)) throw DomainError("T must be positive");
    (void)params();  // validates M, ε, N
}

RunConfig config_from_environment() {
    RunConfig c;
    if (const char* v = std::getenv("PTTHERMO_TAIL_TOL")) c.tail_tol = to_double("PTTHERMO_TAIL_TOL", v);
    if (const char* v = std::getenv("PTTHERMO_QUAD_TOL")) c.quad_tol = to_double("PTTHERMO_QUAD_TOL", v);
    if (const char* v = std::getenv("PTTHERMO_ROOT_TOL")) c.root_tol = to_double("PTTHERMO_ROOT_TOL", v);
    return c;
}

MethodSelector parse_method(const std::string& s) {
    if (s == "wkb1") return MethodSelector::WKB1;
    if (s == "wkb2") return MethodSelector::WKB2;
    if (s == "exact") return MethodSelector::Exact;
    if (s == "all") return MethodSelector::All;
    throw DomainError("unknown method '" + s + "' (wkb1, wkb2, exact, all)");
}

GridSpacing parse_spacing(const std::string& s) {
    if (s == "log") return GridSpacing::Log;
    if (s == "linear") return GridSpacing::Linear;
    throw DomainError("unknown grid spacing '" + s + "' (log, linear)");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw DomainError("unknown format '" + s + "' (csv, json)");
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string v = trim(raw_value);
    if (key == "M") c.M = to_int(key, v);
    else if (key == "eps" || key == "epsilon") c.epsilon = to_double(key, v);
    else if (key == "hermitian") c.hermitian = to_bool(key, v);
    else if (key == "N") c.N = to_double(key, v);
    else if (key == "n-max") c.n_max = to_int(key, v);
    else if (key == "n") {
        c.n_list.clear();
        std::istringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) c.n_list.push_back(to_int(key, trim(item)));
    }
    else if (key == "tmin") c.t_min = to_double(key, v);
    else if (key == "tmax") c.t_max = to_double(key, v);
    else if (key == "points") c.points = to_int(key, v);
    else if (key == "grid") c.spacing = parse_spacing(v);
    else if (key == "method") c.method = parse_method(v);
    else if (key == "format") c.format = parse_format(v);
    else if (key == "tail-tol") c.tail_tol = to_double(key, v);
    else if (key == "quad-tol") c.quad_tol = to_double(key, v);
    else if (key == "root-tol") c.root_tol = to_double(key, v);
    else if (key == "out") c.out = v;
    else if (key == "compare-hermitian") c.compare_hermitian = to_bool(key, v);
    else if (key == "T") c.T = to_double(key, v);
    else if (key == "theta") c.theta = to_double(key, v);
    else if (key == "quartic-check") c.quartic_check = to_bool(key, v);
    else throw DomainError("config: unknown key '" + raw_key + "'");
}

void load_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot read '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_setting(c, t.substr(0, eq), t.substr(eq + 1));
    }
}

}  // namespace ptthermo
