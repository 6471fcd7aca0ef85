// ptthermo: spectra, thermodynamics and classical contour integrals for
// H = p² + x^{2M}(ix)^ε, with CSV/JSON output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptthermo/acceptance.hpp"
#include "ptthermo/classical_contour.hpp"
#include "ptthermo/errors.hpp"
#include "ptthermo/exact_spectrum.hpp"
#include "ptthermo/report.hpp"
#include "ptthermo/run_config.hpp"
#include "ptthermo/special_functions.hpp"
#include "ptthermo/spectrum.hpp"
#include "ptthermo/thermo.hpp"

using json = nlohmann::ordered_json;
using namespace ptthermo;

namespace {

constexpr double kPi = std::numbers::pi;
// Slope of the ln Γ perturbation used by `validate --inject-gamma-fault`.
constexpr double kGammaFault = 1e-3;

QuadOptions quad_options(const RunConfig& c) {
    QuadOptions q;
    q.rel_tol = c.quad_tol;
    return q;
}

EigenOptions eigen_options(const RunConfig& c) {
    EigenOptions e;
    e.root_tol = c.root_tol;
    return e;
}

ThermoOptions thermo_options(const RunConfig& c) {
    ThermoOptions t;
    t.tail_tol = c.tail_tol;
    return t;
}

std::vector<int> quantum_numbers(const RunConfig& c) {
    if (!c.n_list.empty()) return c.n_list;
    std::vector<int> ns;
    for (int n = 0; n <= c.n_max; ++n) ns.push_back(n);
    return ns;
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json obj;
        for (std::size_t i = 0; i < r.size(); ++i) obj[t.header[i]] = r[i];
        rows.push_back(obj);
    }
    return rows;
}

void emit_table(std::ostream& out, const RunConfig& c, const Table& t, json meta) {
    if (c.format.value_or(OutputFormat::Csv) == OutputFormat::Csv) {
        write_csv(out, t);
    } else {
        meta["rows"] = table_json(t);
        out << meta.dump(2) << '\n';
    }
}

json model_json(const OscillatorParams& p) {
    json m;
    m["label"] = p.label();
    m["M"] = p.M;
    m["epsilon"] = p.epsilon;
    m["N"] = p.N();
    m["hermitian_reference"] = p.hermitian_reference;
    return m;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    const auto p = c.params();
    const MethodSelector sel = c.method.value_or(MethodSelector::All);
    const auto ns = quantum_numbers(c);
    const bool w1 = sel == MethodSelector::WKB1 || sel == MethodSelector::All;
    const bool w2 = sel == MethodSelector::WKB2 || sel == MethodSelector::All;
    const bool ex = sel == MethodSelector::Exact || sel == MethodSelector::All;

    Table t;
    t.header.push_back("n");
    if (w1) t.header.push_back("WKB1");
    if (w2) t.header.push_back("WKB2");
    if (ex) t.header.push_back("Exact");
    std::vector<EigenResult> exact;
    if (ex) exact = eigenvalues_for(p, ns, eigen_options(c));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::vector<double> row{static_cast<double>(ns[i])};
        if (w1) row.push_back(wkb_energy(p, ns[i], 1).energy);
        if (w2) row.push_back(wkb_energy(p, ns[i], 2).energy);
        if (ex) {
            if (!exact[i].converged)
                throw RootError("level " + std::to_string(ns[i]) + " did not converge",
                                exact[i].energy, exact[i].energy);
            row.push_back(exact[i].energy);
        }
        t.rows.push_back(std::move(row));
    }
    json meta;
    meta["model"] = model_json(p);
    emit_table(out, c, t, meta);
    return 0;
}

SpectrumSource level_source(const RunConfig& c, const OscillatorParams& p) {
    switch (c.method.value_or(MethodSelector::WKB2)) {
        case MethodSelector::WKB1: return wkb_source(p, 1);
        case MethodSelector::WKB2: return wkb_source(p, 2);
        case MethodSelector::Exact: {
            std::vector<double> low;
            for (const auto& r : eigenvalues(p, c.n_max, eigen_options(c))) low.push_back(r.energy);
            return hybrid_source(p, std::move(low));
        }
        case MethodSelector::All: break;
    }
    throw DomainError("thermo: --method all is not meaningful; pick wkb1, wkb2 or exact");
}

void append_point(std::vector<double>& row, const ThermoPoint& q) {
    row.insert(row.end(), {q.Z, q.F, q.S, q.U, q.C});
}

int cmd_thermo(const RunConfig& c, std::ostream& out) {
    const auto p = c.params();
    const auto grid = temperature_grid(c.t_min, c.t_max, static_cast<std::size_t>(c.points), c.spacing);
    const auto opt = thermo_options(c);
    const auto src = level_source(c, p);
    const auto main_pts = thermo_sweep(src, grid, opt);

    Table t;
    t.header = {"T", "Z", "F", "S", "U", "C", "levels"};
    std::vector<ThermoPoint> ref_pts;
    const bool compare = c.compare_hermitian && !p.hermitian_reference;
    if (compare) {
        const auto ref = OscillatorParams::hermitian(p.N());
        ref_pts = thermo_sweep(level_source(c, ref), grid, opt);
        for (const char* h : {"ref_Z", "ref_F", "ref_S", "ref_U", "ref_C"}) t.header.push_back(h);
    }
    const bool harmonic = !p.hermitian_reference && p.M == 1 && p.epsilon == 0.0;
    if (harmonic)
        for (const char* h : {"exact_Z", "exact_F", "exact_S", "exact_U", "exact_C"}) t.header.push_back(h);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        append_point(row, main_pts[i]);
        row.push_back(static_cast<double>(main_pts[i].levels_used));
        if (compare) append_point(row, ref_pts[i]);
        if (harmonic) append_point(row, harmonic_exact(grid[i]));
        t.rows.push_back(std::move(row));
    }
    json meta;
    meta["model"] = model_json(p);
    meta["source"] = src.name;
    meta["theta"] = characteristic_temperature(p).theta;
    meta["classical_C"] = 0.5 + 1.0 / p.N();
    if (compare) meta["reference"] = model_json(OscillatorParams::hermitian(p.N()));
    emit_table(out, c, t, meta);
    return 0;
}

json interval_list(const std::vector<AngularInterval>& v) {
    json a = json::array();
    for (const auto& iv : v)
        a.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"lo_over_pi", iv.lo / kPi}, {"hi_over_pi", iv.hi / kPi}});
    return a;
}

int cmd_wedges(const RunConfig& c, std::ostream& out) {
    const auto p = c.params();
    const auto ws = wedge_set(p);
    json r;
    r["model"] = model_json(p);
    r["angle_convention"] = "x = r exp(-i theta), reported in (-pi, pi]";
    r["forbidden"] = interval_list(ws.forbidden);
    json centers = json::array();
    for (double th : ws.allowed_centers) centers.push_back({{"theta", th}, {"theta_over_pi", th / kPi}});
    r["allowed_centers"] = centers;
    r["real_axis_viable"] = ws.real_axis_viable;
    r["real_axis_on_boundary"] = ws.real_axis_on_boundary;
    const auto pc = pt_contour(p);
    r["pt_contour"] = {{"theta_right", pc.theta_right}, {"theta_left", pc.theta_left()}};
    out << r.dump(2) << '\n';
    return 0;
}

int cmd_classical(const RunConfig& c, std::ostream& out) {
    const auto p = c.params();
    const auto quad = quad_options(c);
    const RayContour pc = pt_contour(p);
    const RayContour contour = c.theta ? RayContour{*c.theta} : pc;
    const double z_rays = classical_z_by_rays(p, c.T, contour, quad);
    const double q_cl = hermitian_classical_partition(p.N(), c.T);

    json r;
    r["model"] = model_json(p);
    r["T"] = c.T;
    r["theta_right"] = contour.theta_right;
    r["same_wedge_as_pt_contour"] = same_wedge_system(p, contour.theta_right, pc.theta_right);
    r["z_rays"] = z_rays;
    r["z_closed_form"] = classical_partition_closed_form(p, c.T);
    r["q_cl"] = q_cl;
    r["ratio_to_q_cl"] = z_rays / q_cl;
    r["sin_factor"] = p.sin_factor();

    bool ok = true;
    if (c.quartic_check) {
        if (p.hermitian_reference || p.M != 1 || p.epsilon != 2.0)
            throw DomainError("--quartic-check needs --M 1 --eps 2");
        const double beta = 1.0 / c.T;
        const double h_int = quartic_hermitian_z(c.T, false, kQuarticAlpha, quad);
        const double closed =
            std::sin(kPi / 4.0) * ptthermo::gamma(1.25) / (std::sqrt(kPi) * std::pow(beta, 0.75));
        const double ray = classical_z_by_rays(p, c.T, pc, quad);
        const double spread = std::max({std::abs(h_int - closed), std::abs(ray - closed),
                                        std::abs(h_int - ray)}) / closed;
        ok = spread <= 1e-8;
        r["quartic"] = {{"h_integral", h_int},
                        {"h_integral_with_anomaly", quartic_hermitian_z(c.T, true, kQuarticAlpha, quad)},
                        {"closed_form", closed},
                        {"ray_integral", ray},
                        {"max_relative_difference", spread},
                        {"agree", ok}};
    }
    if (c.format == OutputFormat::Csv) {
        Table t;
        t.header = {"T", "theta_right", "z_rays", "z_closed_form", "q_cl", "ratio_to_q_cl", "sin_factor"};
        t.rows.push_back({c.T, contour.theta_right, z_rays, r["z_closed_form"].get<double>(), q_cl,
                          z_rays / q_cl, p.sin_factor()});
        write_csv(out, t);
    } else {
        out << r.dump(2) << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
    std::vector<CriterionResult> results;
    {
        testing::ScopedLogGammaSkew fault(c.inject_gamma_fault ? kGammaFault : 0.0);
        results = run_acceptance();
    }
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (c.json) {
        json a = json::array();
        for (const auto& r : results)
            a.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                         {"detail", r.detail}});
        out << json{{"passed", all}, {"fault_injected", c.inject_gamma_fault}, {"criteria", a}}.dump(2)
            << '\n';
    } else {
        for (const auto& r : results) out << format_result_line(r) << '\n';
        out << (all ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra and thermodynamics of H = p^2 + x^{2M}(ix)^eps"};
    app.require_subcommand(1);

    // Every value is collected as text and applied through apply_setting so
    // flags and config-file entries share one parser.
    std::map<std::string, std::string> raw;
    std::vector<std::pair<std::string, CLI::Option*>> given;
    std::map<std::string, bool> is_flag;
    auto opt = [&](const std::string& key, const std::string& help) {
        given.emplace_back(key, app.add_option("--" + key, raw[key], help));
    };
    auto flag = [&](const std::string& key, const std::string& help) {
        given.emplace_back(key, app.add_flag("--" + key, help));
        is_flag[key] = true;
    };
    opt("M", "Power M >= 1 in x^{2M}(ix)^eps (default 1)");
    opt("eps", "Exponent eps >= 0 (default 0)");
    flag("hermitian", "Use the Hermitian reference potential |x|^N");
    opt("N", "Exponent of |x|^N (default 2M + eps)");
    opt("n-max", "Highest quantum number (default 10)");
    opt("n", "Comma-separated quantum numbers, overrides --n-max");
    opt("method", "wkb1 | wkb2 | exact | all");
    opt("format", "csv | json (default csv; json for classical)");
    opt("out", "Output file (default stdout)");
    opt("tmin", "Lowest temperature (default 0.05)");
    opt("tmax", "Highest temperature (default 50)");
    opt("points", "Temperature grid points (default 200)");
    opt("grid", "log | linear (default log)");
    flag("compare-hermitian", "Add |x|^N reference columns to thermo output");
    opt("T", "Temperature for classical (default 1)");
    opt("theta", "Right ray angle for classical (default: PT contour)");
    flag("quartic-check", "Compare with the Hermitian quartic phase-space integral");
    opt("tail-tol", "Partition-sum tail tolerance (default 1e-10, env PTTHERMO_TAIL_TOL)");
    opt("quad-tol", "Quadrature tolerance (default 1e-10, env PTTHERMO_QUAD_TOL)");
    opt("root-tol", "Eigenvalue tolerance (default 1e-8, env PTTHERMO_ROOT_TOL)");
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; explicit flags win");
    bool json_out = false, fault = false;
    app.add_flag("--json", json_out, "validate: machine-readable report");
    app.add_flag("--inject-gamma-fault", fault, "validate: perturb ln Gamma to exercise the checks");

    auto* spectrum = app.add_subcommand("spectrum", "Energy levels (WKB1, WKB2, exact)");
    auto* thermo = app.add_subcommand("thermo", "Z, F, S, U, C on a temperature grid");
    auto* wedges = app.add_subcommand("wedges", "Forbidden wedges of exp(-V/T) as JSON");
    auto* classical = app.add_subcommand("classical", "Classical partition function by contour quadrature");
    auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
    for (auto* s : {spectrum, thermo, wedges, classical, validate}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig cfg = config_from_environment();
        if (!config_path.empty()) load_config_file(cfg, config_path);
        for (const auto& [key, o] : given)
            if (o->count() > 0) apply_setting(cfg, key, is_flag[key] ? "true" : raw[key]);
        cfg.json = json_out;
        cfg.inject_gamma_fault = fault;
        cfg.subcommand = app.get_subcommands().front()->get_name();
        cfg.validate();

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw DomainError("cannot open '" + cfg.out + "' for writing");
        }
        std::ostream& out = cfg.out.empty() ? std::cout : file;

        int status = 0;
        if (*spectrum) status = cmd_spectrum(cfg, out);
        else if (*thermo) status = cmd_thermo(cfg, out);
        else if (*wedges) status = cmd_wedges(cfg, out);
        else if (*classical) status = cmd_classical(cfg, out);
        else if (*validate) status = cmd_validate(cfg, out);
        out.flush();
        if (!out) throw std::runtime_error("write failed");
        return status;
    } catch (const std::exception& e) {
        std::cerr << "ptthermo: error: " << e.what() << '\n';
        return 1;
    }
}
