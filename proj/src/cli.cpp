#include "casimir/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/casimir1d.hpp"
#include "casimir/casimir3d.hpp"
#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/pfa.hpp"

namespace casimir::cli {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;  // C, exact

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// A frequency with an optional unit suffix: "rad/s" or "eV". Bare numbers
// are rad/s unless `ev` is set.
double parse_frequency(std::string_view text, bool ev) {
    const std::string s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data())
        throw UsageError("not a number: '" + s + "'");
    const std::string unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
    if (unit.empty()) return ev ? ev_to_rad_per_s(value) : value;
    if (unit == "eV") return ev_to_rad_per_s(value);
    if (unit == "rad/s") return value;
    throw UsageError("unknown frequency unit '" + unit + "' (use rad/s or eV)");
}

std::vector<double> parse_frequencies(std::string_view list, std::size_t count, bool ev,
                                      std::string_view what) {
    const auto parts = split(list, ',');
    if (parts.size() != count)
        throw UsageError(std::string(what) + " expects " + std::to_string(count) + " value(s)");
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(parse_frequency(p, ev));
    return out;
}

struct Options {
    std::string model = "drude-gold";
    std::string model1;
    std::string model2;
    std::string mirror = "perfect";
    std::string mirror1;
    std::string mirror2;
    double T = 300.0;
    std::optional<double> L;
    std::optional<double> lmin;
    std::optional<double> lmax;
    int points = 50;
    std::string spacing = "log";
    std::string quantity;
    int dim = 3;
    double R = 150e-6;
    std::optional<double> K0;
    std::optional<double> I;
    std::optional<double> b;
    std::optional<double> omega;
    std::string format = "csv";
    std::string out_path;
    bool verbose = false;
    bool ev = false;
    NumericSettings settings;
};

struct Context {
    DielectricModel material1;
    DielectricModel material2;
    Mirror1D mirror1;
    Mirror1D mirror2;
};

Context make_context(const Options& o) {
    const std::string& m1 = o.model1.empty() ? o.model : o.model1;
    const std::string& m2 = o.model2.empty() ? o.model : o.model2;
    const std::string& r1 = o.mirror1.empty() ? o.mirror : o.mirror1;
    const std::string& r2 = o.mirror2.empty() ? o.mirror : o.mirror2;
    return Context{parse_model(m1, o.ev), parse_model(m2, o.ev), parse_mirror(r1, o.ev),
                   parse_mirror(r2, o.ev)};
}

using Row = std::vector<double>;

struct Evaluation {
    std::vector<std::string> columns;
    std::function<Row(double L)> row;
};

double relative(double err, double scale) { return scale != 0.0 ? err / std::abs(scale) : err; }

Evaluation quantity_evaluation(const std::string& q, const Options& o, const Context& ctx) {
    const double T = o.T;
    const NumericSettings s = o.settings;
    const bool v = o.verbose;
    auto plane = [ctx](double L) { return PlaneCavity(ctx.material1, ctx.material2, L); };
    auto line = [ctx](double L) { return Cavity1D(ctx.mirror1, ctx.mirror2, L); };
    auto sphere = [ctx, R = o.R](double L) {
        return PlaneSphereConfig(R, L, ctx.material1, ctx.material2);
    };

    if (q == "pressure") {
        Evaluation e{{"L_m", "pressure", "err_est", "n_terms"}, nullptr};
        if (v) e.columns.insert(e.columns.end(), {"P_TE", "P_TM", "eta"});
        e.row = [=](double L) {
            const auto r = pressure_auto(plane(L), T, s);
            Row row{L, r.P, r.error_estimate, double(r.n_matsubara)};
            if (v) row.insert(row.end(), {r.te, r.tm, r.eta_P});
            return row;
        };
        return e;
    }
    if (q == "eta") {
        Evaluation e{{"L_m", "eta", "err_est", "n_terms"}, nullptr};
        if (v) e.columns.insert(e.columns.end(), {"pressure", "P_TE", "P_TM"});
        e.row = [=](double L) {
            const auto r = pressure_auto(plane(L), T, s);
            Row row{L, r.eta_P, relative(r.error_estimate, ideal_pressure(L)), double(r.n_matsubara)};
            if (v) row.insert(row.end(), {r.P, r.te, r.tm});
            return row;
        };
        return e;
    }
    if (q == "force1d") {
        Evaluation e{{"L_m", "force1d", "err_est", "n_terms"}, nullptr};
        if (v) e.columns.push_back("F_perfect");
        e.row = [=](double L) {
            const auto r = force_1d_auto(line(L), T, s);
            Row row{L, r.F, r.tail_estimate, double(r.n_matsubara)};
            if (v) row.push_back(force_1d_perfect(L));
            return row;
        };
        return e;
    }
    if (q == "free-energy" || q == "entropy") {
        Evaluation e{{"L_m", q, "err_est", "n_terms"}, nullptr};
        const bool entropy = q == "entropy";
        const int dim = o.dim;
        e.row = [=](double L) {
            Observable r;
            if (dim == 1)
                r = entropy ? entropy_1d(line(L), T, s) : free_energy_1d(line(L), T, s);
            else
                r = entropy ? entropy_per_area(plane(L), T, s)
                            : free_energy_per_area_auto(plane(L), T, s);
            return Row{L, r.value, r.error_estimate, double(r.n_terms)};
        };
        return e;
    }
    if (q == "pfa-force") {
        Evaluation e{{"L_m", "pfa-force", "err_est", "n_terms"}, nullptr};
        if (v) e.columns.insert(e.columns.end(), {"F_pressure_path", "consistency", "aspect_ratio", "pfa_warning"});
        e.row = [=](double L) {
            const auto r = force_plane_sphere_pfa(sphere(L), T, s);
            Row row{L, r.F, r.error_estimate, double(r.n_terms)};
            if (v) row.insert(row.end(), {r.F_pressure_path, r.consistency, r.aspect_ratio, r.pfa_warning ? 1.0 : 0.0});
            return row;
        };
        return e;
    }
    if (q == "pfa-gradient") {
        Evaluation e{{"L_m", "pfa-gradient", "err_est", "n_terms"}, nullptr};
        if (v) e.columns.insert(e.columns.end(), {"pressure", "aspect_ratio", "pfa_warning"});
        e.row = [=](double L) {
            const auto r = gradient_plane_sphere_pfa(sphere(L), T, s);
            const double err = 2.0 * constants::pi * r.pressure.error_estimate * o.R;
            Row row{L, r.G, err, double(r.pressure.n_matsubara)};
            if (v) row.insert(row.end(), {r.pressure.P, r.aspect_ratio, r.pfa_warning ? 1.0 : 0.0});
            return row;
        };
        return e;
    }
    if (q == "spectral1d") {
        if (!o.omega) throw UsageError("spectral1d needs --omega");
        const double omega = *o.omega;
        return Evaluation{{"L_m", "spectral1d", "err_est", "n_terms"}, [=](double L) {
                              return Row{L, spectral_density_1d(line(L), omega), 0.0, 0.0};
                          }};
    }
    throw UsageError("unknown quantity '" + q + "'");
}

Evaluation thermo_evaluation(const Options& o, const Context& ctx) {
    const double T = o.T;
    const NumericSettings s = o.settings;
    const int dim = o.dim;
    Evaluation e{{"L_m", "free_energy", "entropy", "internal_energy", "err_est", "n_terms"}, nullptr};
    e.row = [=](double L) {
        Observable f, st;
        if (dim == 1) {
            const Cavity1D cav(ctx.mirror1, ctx.mirror2, L);
            f = free_energy_1d(cav, T, s);
            st = entropy_1d(cav, T, s);
        } else {
            const PlaneCavity cav(ctx.material1, ctx.material2, L);
            f = free_energy_per_area(cav, T, s);
            st = entropy_per_area(cav, T, s);
        }
        const double err = f.error_estimate + T * st.error_estimate;
        return Row{L, f.value, st.value, f.value + T * st.value, err, double(f.n_terms)};
    };
    return e;
}

Evaluation pfa_evaluation(const Options& o, const Context& ctx) {
    const double T = o.T;
    const NumericSettings s = o.settings;
    const bool v = o.verbose;
    const bool osc = o.K0 || o.I || o.b;
    std::optional<OscillatorParams> params;
    if (osc) {
        if (!(o.K0 && o.I && o.b)) throw UsageError("--K0, --I and --b must be given together");
        params = OscillatorParams{*o.K0, *o.I, *o.b};
        params->validate();
    }
    Evaluation e{{"L_m", "pfa_force", "pfa_gradient", "aspect_ratio", "err_est", "n_terms"}, nullptr};
    if (osc) e.columns.insert(e.columns.end(), {"omega0_sq", "omega_sq"});
    if (v) e.columns.insert(e.columns.end(), {"F_pressure_path", "consistency", "pfa_warning"});
    e.row = [=](double L) {
        const PlaneSphereConfig cfg(o.R, L, ctx.material1, ctx.material2);
        const auto f = force_plane_sphere_pfa(cfg, T, s);
        const auto g = gradient_plane_sphere_pfa(cfg, T, s);
        Row row{L, f.F, g.G, f.aspect_ratio, f.error_estimate, double(f.n_terms)};
        if (params) {
            const auto shift = frequency_shift(*params, cfg, T, s);
            row.insert(row.end(), {shift.omega0_sq, shift.omega_sq});
        }
        if (v) row.insert(row.end(), {f.F_pressure_path, f.consistency, f.pfa_warning ? 1.0 : 0.0});
        return row;
    };
    return e;
}

Evaluation compare_evaluation(const Options& o) {
    const DielectricModel a = parse_model(o.model1.empty() ? "drude-gold" : o.model1, o.ev);
    const DielectricModel b = parse_model(o.model2.empty() ? "plasma-gold" : o.model2, o.ev);
    const double T = o.T;
    const NumericSettings s = o.settings;
    Evaluation e{{"L_m", "P_model1", "P_model2", "ratio", "eta_model1", "eta_model2", "err_est", "n_terms"}, nullptr};
    e.row = [=](double L) {
        const auto p1 = pressure_auto(PlaneCavity(a, L), T, s);
        const auto p2 = pressure_auto(PlaneCavity(b, L), T, s);
        const double err = std::max(relative(p1.error_estimate, p1.P), relative(p2.error_estimate, p2.P));
        return Row{L, p1.P, p2.P, p2.P / p1.P, p1.eta_P, p2.eta_P, err,
                   double(std::max(p1.n_matsubara, p2.n_matsubara))};
    };
    return e;
}

std::vector<double> distances(const Options& o) {
    if (o.L) {
        if (o.lmin || o.lmax) throw UsageError("--L conflicts with --lmin/--lmax");
        return {*o.L};
    }
    if (!o.lmin || !o.lmax) throw UsageError("give --L or both --lmin and --lmax");
    return make_grid(*o.lmin, *o.lmax, o.points, o.spacing);
}

// Rows in input order; the error of the lowest failing index is rethrown.
std::vector<Row> evaluate_all(const Evaluation& e, const std::vector<double>& xs) {
    std::vector<Row> rows(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) {
            try {
                rows[i] = e.row(xs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<std::size_t>(thread_count(), xs.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return rows;
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns, const std::vector<Row>& rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << (i ? "," : "");
            if (columns[i] == "n_terms") os << static_cast<long long>(r[i]);
            else os << format_number(r[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::string& command, const std::vector<std::string>& columns,
                const std::vector<Row>& rows) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["columns"] = columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (columns[i] == "n_terms") obj[columns[i]] = static_cast<long long>(r[i]);
            else if (std::isfinite(r[i])) obj[columns[i]] = std::strtod(format_number(r[i]).c_str(), nullptr);
            else obj[columns[i]] = format_number(r[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

void add_common(CLI::App& sub, Options& o) {
    sub.add_option("--T", o.T, "temperature in K")->check(CLI::NonNegativeNumber);
    sub.add_option("--L", o.L, "single distance in m");
    sub.add_option("--lmin", o.lmin, "sweep start in m");
    sub.add_option("--lmax", o.lmax, "sweep end in m");
    sub.add_option("--points", o.points, "sweep points")->check(CLI::Range(2, 1000000));
    sub.add_option("--spacing", o.spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
    sub.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--out", o.out_path, "write to this file instead of stdout");
    sub.add_flag("--verbose-errors", o.verbose, "extra error and diagnostic columns");
    sub.add_flag("--ev", o.ev, "bare frequencies in model specs are eV");
    sub.add_option("--rel-tol", o.settings.matsubara.rel_tol, "Matsubara sum relative tolerance");
    sub.add_option("--n-max", o.settings.matsubara.n_max, "Matsubara term cap");
    sub.add_option("--quad-rel-tol", o.settings.quadrature.rel_tol, "quadrature relative tolerance");
    sub.add_option("--quad-max-subdivisions", o.settings.quadrature.max_subdivisions,
                   "quadrature subdivision cap");
}

void add_models(CLI::App& sub, Options& o) {
    sub.add_option("--model", o.model, "material of both plates");
    sub.add_option("--model1", o.model1, "material of plate 1");
    sub.add_option("--model2", o.model2, "material of plate 2");
}

void add_mirrors(CLI::App& sub, Options& o) {
    sub.add_option("--mirror", o.mirror, "1D mirror of both ends: perfect or impedance:OMEGA");
    sub.add_option("--mirror1", o.mirror1, "1D mirror 1");
    sub.add_option("--mirror2", o.mirror2, "1D mirror 2");
}

}  // namespace

double ev_to_rad_per_s(double ev) { return ev * kElementaryCharge / constants::hbar; }

DielectricModel parse_model(std::string_view spec_in, bool ev) {
    const std::string spec = trim(spec_in);
    if (spec == "perfect") return PerfectMirror{};
    if (spec == "plasma-gold") return gold::plasma();
    if (spec == "drude-gold") return gold::drude();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("unknown model '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (kind == "drude") {
        const auto v = parse_frequencies(args, 2, ev, "drude");
        return DrudeModel(v[0], v[1]);
    }
    if (kind == "plasma") {
        const auto v = parse_frequencies(args, 1, ev, "plasma");
        return PlasmaModel(v[0]);
    }
    if (kind == "tabulated") {
        std::string path = args;
        DrudeTail tail;
        const auto marker = args.find(",drude-tail:");
        if (marker != std::string::npos) {
            path = args.substr(0, marker);
            const auto v = parse_frequencies(args.substr(marker + 12), 2, ev, "drude-tail");
            tail = DrudeTail{v[0], v[1]};
        }
        if (path.empty()) throw UsageError("tabulated model needs a file path");
        auto table = std::make_shared<const OpticalDataTable>(load_optical_data_file(path));
        return TabulatedModel{std::move(table), tail};
    }
    throw UsageError("unknown model kind '" + kind + "'");
}

Mirror1D parse_mirror(std::string_view spec_in, bool ev) {
    const std::string spec = trim(spec_in);
    if (spec == "perfect") return Mirror1D::perfect();
    const std::string prefix = "impedance:";
    if (spec.rfind(prefix, 0) == 0)
        return Mirror1D::impedance_mismatch(parse_frequency(spec.substr(prefix.size()), ev));
    throw UsageError("unknown 1D mirror '" + spec + "' (perfect or impedance:OMEGA)");
}

std::vector<double> make_grid(double lo, double hi, int points, std::string_view spacing) {
    if (!(lo < hi)) throw UsageError("sweep needs lmin < lmax");
    if (points < 2 || points > 1000000) throw UsageError("points must be in [2, 1e6]");
    const bool log = spacing == "log";
    if (!log && spacing != "linear") throw UsageError("spacing must be log or linear");
    if (log && !(lo > 0.0)) throw UsageError("log spacing needs lmin > 0");
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = double(i) / (points - 1);
        xs[i] = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", x);
    return buf;
}

unsigned thread_count() {
    if (const char* env = std::getenv("CASIMIR_KIT_THREADS")) {
        const std::string_view s(env);
        unsigned n = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc{} || ptr != s.data() + s.size() || n < 1)
            throw UsageError("CASIMIR_KIT_THREADS must be an integer >= 1");
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Casimir pressures, forces and thermodynamics between mirrors", "casimir-kit"};
    app.require_subcommand(1, 1);
    Options o;

    auto* pressure = app.add_subcommand("pressure", "plane-plane pressure in Pa");
    auto* eta = app.add_subcommand("eta", "pressure over the ideal zero-temperature value");
    auto* sweep = app.add_subcommand("sweep", "one quantity over a distance grid");
    auto* force1d = app.add_subcommand("force1d", "1D cavity force in N");
    auto* thermo = app.add_subcommand("thermo", "free energy, entropy and internal energy");
    auto* pfa = app.add_subcommand("pfa", "plane-sphere force and gradient, optional oscillator shift");
    auto* compare = app.add_subcommand("compare-models", "pressures of two materials and their ratio");
    auto* spectral = app.add_subcommand("spectral1d", "1D intracavity spectral density g - 1");

    for (auto* sub : {pressure, eta, sweep, force1d, thermo, pfa, compare, spectral}) add_common(*sub, o);
    for (auto* sub : {pressure, eta, sweep, thermo, pfa}) add_models(*sub, o);
    compare->add_option("--model1", o.model1, "first material (default drude-gold)");
    compare->add_option("--model2", o.model2, "second material (default plasma-gold)");
    for (auto* sub : {sweep, force1d, thermo, spectral}) add_mirrors(*sub, o);
    sweep->add_option("--quantity", o.quantity, "pressure, eta, force1d, free-energy, entropy, pfa-force, pfa-gradient or spectral1d")
        ->required();
    for (auto* sub : {sweep, thermo}) sub->add_option("--dim", o.dim, "1 or 3")->check(CLI::IsMember({1, 3}));
    for (auto* sub : {sweep, pfa}) sub->add_option("--R", o.R, "sphere radius in m")->check(CLI::PositiveNumber);
    pfa->add_option("--K0", o.K0, "oscillator stiffness");
    pfa->add_option("--I", o.I, "oscillator moment of inertia");
    pfa->add_option("--b", o.b, "lever arm in m");
    for (auto* sub : {sweep, spectral}) sub->add_option("--omega", o.omega, "real frequency in rad/s")->check(CLI::PositiveNumber);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "casimir-kit: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        o.settings.matsubara.validate();
        o.settings.quadrature.validate();
        Evaluation e;
        if (name == "sweep") {
            if (!o.lmin || !o.lmax || o.L) throw UsageError("sweep needs --lmin and --lmax");
            const Context ctx = make_context(o);
            e = quantity_evaluation(o.quantity, o, ctx);
        } else if (name == "thermo") {
            if (o.T <= 0.0) throw DomainError("thermo needs T > 0");
            e = thermo_evaluation(o, make_context(o));
        } else if (name == "pfa") {
            e = pfa_evaluation(o, make_context(o));
        } else if (name == "compare-models") {
            e = compare_evaluation(o);
        } else if (name == "spectral1d") {
            if (!o.omega) throw UsageError("spectral1d needs --omega");
            e = quantity_evaluation("spectral1d", o, make_context(o));
        } else {
            e = quantity_evaluation(name, o, make_context(o));
        }
        const auto rows = evaluate_all(e, distances(o));

        std::ofstream file;
        std::ostream* sink = &out;
        if (!o.out_path.empty()) {
            file.open(o.out_path);
            if (!file) throw UsageError("cannot write '" + o.out_path + "'");
            sink = &file;
        }
        if (o.format == "json") write_json(*sink, name, e.columns, rows);
        else write_csv(*sink, e.columns, rows);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "casimir-kit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "casimir-kit: domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ParseError& e) {
        err << "casimir-kit: parse error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ConvergenceError& e) {
        err << "casimir-kit: convergence error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ConsistencyError& e) {
        err << "casimir-kit: consistency error: " << e.what() << '\n';
        return kExitConvergence;
    }
}

}  // namespace casimir::cli
