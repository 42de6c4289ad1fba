#include "casimir/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <vector>

namespace casimir {

void MatsubaraSettings::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("MatsubaraSettings: rel_tol must lie in (0, 1)");
    if (n_max < 10) throw DomainError("MatsubaraSettings: n_max must be >= 10");
    if (consecutive_small < 1) throw DomainError("MatsubaraSettings: consecutive_small must be >= 1");
}

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadratureSettings: tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadratureSettings: max_subdivisions must be >= 1");
}

PrimedSum primed_sum(const std::function<double(std::int64_t)>& term,
                     const MatsubaraSettings& settings) {
    auto r = primed_sum_components<1>(
        [&](std::int64_t n) { return std::array<double, 1>{term(n)}; }, settings);
    return {r.components[0], r.n_used, r.tail_estimate};
}

namespace {

// Kronrod 21-point abscissae and weights, embedded Gauss 10-point weights
// (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525685860, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
};

Panel gk21(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        resk += kWgk[j] * (f1[j] + f2[j]);
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs(resk - resg * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    if (!std::isfinite(resk)) {
        throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    }
    return {a, b, resk, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSettings& settings) {
    settings.validate();
    if (a == b) return {};
    std::vector<Panel> panels{gk21(f, a, b)};
    double total = panels.front().value;
    double total_err = panels.front().error;
    int subdivisions = 0;
    while (total_err > std::max(settings.abs_tol, settings.rel_tol * std::abs(total))) {
        if (subdivisions >= settings.max_subdivisions) {
            throw ConvergenceError("adaptive quadrature exceeded " +
                                       std::to_string(settings.max_subdivisions) + " subdivisions",
                                   total, total_err);
        }
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.error < y.error; });
        const double lo = worst->a;
        const double hi = worst->b;
        const double mid = 0.5 * (lo + hi);
        *worst = gk21(f, lo, mid);
        panels.push_back(gk21(f, mid, hi));
        ++subdivisions;
        // Resum from scratch so rounding does not accumulate across updates.
        CompensatedSum v, e;
        for (const Panel& p : panels) {
            v.add(p.value);
            e.add(p.error);
        }
        total = v.value();
        total_err = e.value();
    }
    return {total, total_err, subdivisions};
}

QuadratureResult integrate_from(const std::function<double(double)>& f, double a,
                                const QuadratureSettings& settings) {
    auto mapped = [&](double u) {
        const double one_minus = 1.0 - u;
        if (one_minus <= 0.0) return 0.0;
        const double x = a + u / one_minus;
        const double jac = 1.0 / (one_minus * one_minus);
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx * jac;
    };
    return integrate(mapped, 0.0, 1.0, settings);
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSettings& settings) {
    return integrate_from(f, 0.0, settings);
}

double zeta(int s) {
    constexpr double pi = std::numbers::pi;
    switch (s) {
        case 2:
            return pi * pi / 6.0;
        case 4:
            return pi * pi * pi * pi / 90.0;
        case 3: {
            // zeta(3) = 5/2 sum_{k>=1} (-1)^{k+1} / (k^3 binom(2k, k)); each term
            // shrinks by roughly 1/4, so 40 terms reach full double precision.
            CompensatedSum sum;
            double binom = 1.0;
            for (int k = 1; k <= 40; ++k) {
                binom *= 2.0 * (2.0 * k - 1.0) / k;
                const double term = 1.0 / (static_cast<double>(k) * k * k * binom);
                sum.add(k % 2 == 1 ? term : -term);
            }
            return 2.5 * sum.value();
        }
        default:
            throw DomainError("zeta: only s = 2, 3, 4 are supported, got " + std::to_string(s));
    }
}

}  // namespace casimir
