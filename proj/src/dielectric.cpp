#include "casimir/dielectric.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

using constants::pi;

PlasmaModel::PlasmaModel(double omega_p) : omega_p_(omega_p) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw DomainError("plasma model: omega_p must be > 0");
}

DrudeModel::DrudeModel(double omega_p, double gamma) : omega_p_(omega_p), gamma_(gamma) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw DomainError("Drude model: omega_p must be > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("Drude model: gamma must be >= 0");
}

OpticalDataTable::OpticalDataTable(std::vector<Sample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) {
        throw ParseError("optical data needs at least 2 samples, got " + std::to_string(samples_.size()), 0);
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!(s.omega > 0.0) || !std::isfinite(s.omega)) {
            throw ParseError("sample " + std::to_string(i + 1) + ": omega must be > 0", i + 1);
        }
        if (!(s.eps_imag >= 0.0) || !std::isfinite(s.eps_imag)) {
            throw ParseError("sample " + std::to_string(i + 1) + ": eps_imag must be >= 0 (passivity)", i + 1);
        }
        if (i > 0 && !(s.omega > samples_[i - 1].omega)) {
            throw ParseError("sample " + std::to_string(i + 1) + ": omega must be strictly increasing", i + 1);
        }
    }
}

namespace gold {
double omega_p() { return 2.0 * pi * constants::c / lambda_p; }
double gamma() { return 0.004 * omega_p(); }
DrudeModel drude() { return DrudeModel(omega_p(), gamma()); }
PlasmaModel plasma() { return PlasmaModel(omega_p()); }
}  // namespace gold

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double drude_epsilon(double omega_p, double gamma, double xi) {
    if (xi == 0.0) return kDivergentEpsilon;
    return 1.0 + omega_p * omega_p / (xi * (xi + gamma));
}

// int_0^w1 omega eps''_D(omega) / (omega^2 + xi^2) d omega for the Drude loss
// spectrum eps''_D = wp^2 gamma / (omega (omega^2 + gamma^2)).
double drude_tail_integral(const DrudeTail& tail, double w1, double xi) {
    const double wp2 = tail.omega_p * tail.omega_p;
    if (wp2 == 0.0) return 0.0;
    const double g = tail.gamma;
    if (g == 0.0) return wp2 * (pi / 2.0) / (xi * xi);
    // wp^2 g (h(g) - h(xi)) / (xi^2 - g^2), h(a) = atan(w1/a)/a.
    auto h = [w1](double a) { return std::atan(w1 / a) / a; };
    const double m = 0.5 * (xi + g);
    if (std::abs(xi - g) <= 1e-5 * m) {
        const double dh = -w1 / (m * (m * m + w1 * w1)) - std::atan(w1 / m) / (m * m);
        return wp2 * g * (-dh) / (2.0 * m);
    }
    if (xi == 0.0) {
        throw DomainError("epsilon_from_table: xi = 0 with a conducting Drude tail diverges");
    }
    return wp2 * g * (h(g) - h(xi)) / (xi * xi - g * g);
}

}  // namespace

double epsilon_from_table(const OpticalDataTable& table, const DrudeTail& tail, double xi,
                          double high_exponent) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("epsilon_from_table: xi must be >= 0");
    if (xi == 0.0 && tail.omega_p > 0.0) {
        throw DomainError("epsilon_from_table: xi = 0 with a conducting Drude tail diverges");
    }
    if (!(high_exponent > 0.0)) throw DomainError("epsilon_from_table: high_exponent must be > 0");
    const auto& s = table.samples();
    QuadratureSettings q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-300;
    const double xi2 = xi * xi;

    CompensatedSum sum;
    sum.add(drude_tail_integral(tail, s.front().omega, xi));

    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const auto& lo = s[i];
        const auto& hi = s[i + 1];
        if (lo.eps_imag == 0.0 && hi.eps_imag == 0.0) continue;
        if (lo.eps_imag > 0.0 && hi.eps_imag > 0.0) {
            // log-log linear: eps'' = e_lo (omega / w_lo)^slope; integrate in t = ln omega.
            const double t0 = std::log(lo.omega);
            const double t1 = std::log(hi.omega);
            const double slope = std::log(hi.eps_imag / lo.eps_imag) / (t1 - t0);
            const double log_e0 = std::log(lo.eps_imag);
            auto f = [&](double t) {
                const double w = std::exp(t);
                const double e = std::exp(log_e0 + slope * (t - t0));
                return w * w * e / (w * w + xi2);
            };
            sum.add(integrate(f, t0, t1, q).value);
        } else {
            const double dw = hi.omega - lo.omega;
            auto f = [&](double w) {
                const double e = lo.eps_imag + (hi.eps_imag - lo.eps_imag) * (w - lo.omega) / dw;
                return w * e / (w * w + xi2);
            };
            sum.add(integrate(f, lo.omega, hi.omega, q).value);
        }
    }

    const auto& last = s.back();
    if (last.eps_imag > 0.0) {
        // omega = w_N y:  e_N int_1^inf y^(1-p) / (y^2 + b^2) dy,  b = xi / w_N.
        const double b2 = xi2 / (last.omega * last.omega);
        auto f = [&](double x) {
            const double y = 1.0 + x;
            return std::pow(y, 1.0 - high_exponent) / (y * y + b2);
        };
        sum.add(last.eps_imag * integrate_semi_infinite(f, q).value);
    }
    return 1.0 + (2.0 / pi) * sum.value();
}

double epsilon_imag_axis(const DielectricModel& model, double xi) {
    if (!(xi >= 0.0) || std::isnan(xi)) throw DomainError("epsilon_imag_axis: xi must be >= 0");
    return std::visit(
        overloaded{
            [](const PerfectMirror&) { return kDivergentEpsilon; },
            [xi](const PlasmaModel& m) { return drude_epsilon(m.omega_p(), 0.0, xi); },
            [xi](const DrudeModel& m) { return drude_epsilon(m.omega_p(), m.gamma(), xi); },
            [xi](const TabulatedModel& m) {
                if (!m.table) throw DomainError("tabulated model without a table");
                if (xi == 0.0 && m.tail.omega_p > 0.0) return kDivergentEpsilon;
                return epsilon_from_table(*m.table, m.tail, xi, m.high_exponent);
            },
        },
        model);
}

double static_conductivity(const DielectricModel& model) {
    const auto* drude = std::get_if<DrudeModel>(&model);
    if (drude == nullptr) throw DomainError("static conductivity is defined for the Drude model only");
    if (drude->gamma() == 0.0) {
        throw DomainError("lossless model has no finite static conductivity");
    }
    return drude->omega_p() * drude->omega_p() / drude->gamma();
}

StaticResponse static_response(const DielectricModel& model) {
    using Kind = StaticResponse::Kind;
    return std::visit(
        overloaded{
            [](const PerfectMirror&) { return StaticResponse{Kind::Perfect}; },
            [](const PlasmaModel& m) { return StaticResponse{Kind::Plasma, m.omega_p()}; },
            [](const DrudeModel& m) {
                if (m.gamma() == 0.0) return StaticResponse{Kind::Plasma, m.omega_p()};
                return StaticResponse{Kind::Conductor};
            },
            [](const TabulatedModel& m) {
                if (m.tail.omega_p > 0.0 && m.tail.gamma > 0.0) return StaticResponse{Kind::Conductor};
                if (m.tail.omega_p > 0.0) return StaticResponse{Kind::Plasma, m.tail.omega_p};
                StaticResponse r{Kind::Dielectric};
                r.eps0 = epsilon_from_table(*m.table, m.tail, 0.0, m.high_exponent);
                return r;
            },
        },
        model);
}

namespace {

bool parse_double(std::string_view field, double& out) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && ptr == field.data() + field.size();
}

}  // namespace

OpticalDataTable load_optical_data(std::istream& in) {
    std::vector<OpticalDataTable::Sample> samples;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (row == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line.rfind("omega_rad_s,eps_imag", 0) != 0) {
                throw ParseError("row " + std::to_string(row) + ": expected header 'omega_rad_s,eps_imag'", row);
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError("row " + std::to_string(row) + ": expected 2 or 3 columns", row);
        }
        double omega = 0.0;
        double eps_imag = 0.0;
        if (!parse_double(fields[0], omega) || !parse_double(fields[1], eps_imag)) {
            throw ParseError("row " + std::to_string(row) + ": malformed number", row);
        }
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            throw ParseError("row " + std::to_string(row) + ": omega must be > 0", row);
        }
        if (!(eps_imag >= 0.0) || !std::isfinite(eps_imag)) {
            throw ParseError("row " + std::to_string(row) + ": eps_imag must be >= 0 (passivity)", row);
        }
        if (!samples.empty() && !(omega > samples.back().omega)) {
            throw ParseError("row " + std::to_string(row) + ": omega must be strictly increasing", row);
        }
        samples.push_back({omega, eps_imag});
    }
    if (!header_seen) throw ParseError("missing header 'omega_rad_s,eps_imag'", 0);
    return OpticalDataTable(std::move(samples));
}

OpticalDataTable load_optical_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open optical data file '" + path + "'", 0);
    return load_optical_data(in);
}

std::string describe(const DielectricModel& model) {
    std::ostringstream os;
    os.precision(6);
    std::visit(overloaded{
                   [&](const PerfectMirror&) { os << "perfect"; },
                   [&](const PlasmaModel& m) { os << "plasma(" << m.omega_p() << ")"; },
                   [&](const DrudeModel& m) { os << "drude(" << m.omega_p() << "," << m.gamma() << ")"; },
                   [&](const TabulatedModel& m) {
                       os << "tabulated(" << (m.table ? m.table->size() : 0) << " rows,tail "
                          << m.tail.omega_p << "," << m.tail.gamma << ")";
                   },
               },
               model);
    return os.str();
}

}  // namespace casimir
