#include "casimir/casimir3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

using namespace constants;

PlaneCavity::PlaneCavity(DielectricModel material1, DielectricModel material2, double L)
    : m1_(std::move(material1)), m2_(std::move(material2)), L_(Distance(L).value()) {}

double ideal_pressure(double L) {
    const double d = Distance(L).value();
    return -hbar * c * pi * pi / (240.0 * d * d * d * d);
}

double ideal_energy(double L, double A) {
    const double d = Distance(L).value();
    if (!(A > 0.0)) throw DomainError("ideal_energy: area must be > 0");
    return -hbar * c * pi * pi * A / (720.0 * d * d * d);
}

namespace {

enum class Kernel { Pressure, FreeEnergy };

struct PolarizationIntegrals {
    std::array<double, 2> value{};
    double error = 0.0;
};

// For a fixed imaginary frequency xi, integrates over u = 2 kappa L = u0 + x from
// u0 = 2 xi L / c:  Pressure -> int u^2 f du,  FreeEnergy -> int u ln d du.
PolarizationIntegrals transverse_integrals(const PlaneCavity& cavity, double xi, Kernel kernel,
                                           const QuadratureSettings& q) {
    const double L = cavity.L();
    const auto s1 = SurfaceResponse::at(cavity.material1(), xi);
    const auto s2 = SurfaceResponse::at(cavity.material2(), xi);
    const double u0 = 2.0 * xi * L / c;
    PolarizationIntegrals out;
    for (std::size_t i = 0; i < 2; ++i) {
        const Polarization p = kPolarizations[i];
        auto integrand = [&](double x) {
            const double u = u0 + x;
            // k^2 = kappa^2 - xi^2/c^2 = x (x + 2 u0) / (2L)^2
            const double k = std::sqrt(x * (x + 2.0 * u0)) / (2.0 * L);
            const double r = s1.r(p, k) * s2.r(p, k);
            if (r == 0.0) return 0.0;
            const CavityLoop loop{r, u / (2.0 * L), L};
            return kernel == Kernel::Pressure ? u * u * loop.f() : u * loop.log_denominator();
        };
        const auto res = integrate_semi_infinite(integrand, q);
        out.value[i] = res.value;
        out.error += res.error;
    }
    return out;
}

struct MatsubaraTotals {
    std::array<double, 2> value{};
    std::int64_t n_used = 0;
    double error = 0.0;  // quadrature errors plus truncation tail, same units as value
};

MatsubaraTotals matsubara_transverse(const PlaneCavity& cavity, double T, Kernel kernel,
                                     const NumericSettings& settings) {
    const ThermalState thermal(T);
    CompensatedSum quad_error;
    auto term = [&](std::int64_t n) {
        const double xi = static_cast<double>(n) * thermal.xi1();
        const auto t = transverse_integrals(cavity, xi, kernel, settings.quadrature);
        quad_error.add(n == 0 ? 0.5 * t.error : t.error);
        return t.value;
    };
    const auto sum = primed_sum_components<2>(term, settings.matsubara);
    return {sum.components, sum.n_used, quad_error.value() + sum.tail_estimate};
}

// Nested integral over v = 2 xi L / c of the transverse integrals, one outer
// integral per polarization.
MatsubaraTotals zero_temperature_transverse(const PlaneCavity& cavity, Kernel kernel,
                                            const NumericSettings& settings) {
    const double L = cavity.L();
    QuadratureSettings inner = settings.quadrature;
    inner.rel_tol = std::max(1e-13, 1e-2 * settings.quadrature.rel_tol);
    MatsubaraTotals out;
    for (std::size_t i = 0; i < 2; ++i) {
        auto outer = [&](double v) {
            const double xi = c * v / (2.0 * L);
            return transverse_integrals(cavity, xi, kernel, inner).value[i];
        };
        const auto res = integrate_semi_infinite(outer, settings.quadrature);
        out.value[i] = res.value;
        out.error += res.error;
    }
    return out;
}

PressureResult make_pressure(double L, double prefactor, const MatsubaraTotals& t) {
    PressureResult r;
    r.te = prefactor * t.value[0];
    r.tm = prefactor * t.value[1];
    r.P = r.te + r.tm;
    r.eta_P = r.P / ideal_pressure(L);
    r.n_matsubara = t.n_used;
    r.error_estimate = std::abs(prefactor) * t.error;
    return r;
}

NumericSettings tightened(NumericSettings s) {
    s.matsubara.rel_tol = std::min(s.matsubara.rel_tol, 1e-13);
    s.quadrature.rel_tol = std::min(s.quadrature.rel_tol, 1e-12);
    return s;
}

}  // namespace

PressureResult pressure_plane_plane(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("pressure_plane_plane: T must be > 0 (use pressure_zero_T)");
    const double L = cavity.L();
    const auto totals = matsubara_transverse(cavity, T, Kernel::Pressure, settings);
    return make_pressure(L, -kB * T / (8.0 * pi * L * L * L), totals);
}

PressureResult pressure_zero_T(const PlaneCavity& cavity, const NumericSettings& settings) {
    const double L = cavity.L();
    const auto totals = zero_temperature_transverse(cavity, Kernel::Pressure, settings);
    return make_pressure(L, -hbar * c / (32.0 * pi * pi * L * L * L * L), totals);
}

PressureResult pressure_high_T(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("pressure_high_T: T must be > 0");
    const double L = cavity.L();
    const auto t = transverse_integrals(cavity, 0.0, Kernel::Pressure, settings.quadrature);
    MatsubaraTotals totals{t.value, 1, t.error};
    return make_pressure(L, -0.5 * kB * T / (8.0 * pi * L * L * L), totals);
}

PressureResult pressure_auto(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    const ThermalState thermal(T);
    if (thermal.zero_temperature() || thermal.tau(cavity.L()) < kTauCrossover) {
        return pressure_zero_T(cavity, settings);
    }
    return pressure_plane_plane(cavity, T, settings);
}

double eta_P(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    return pressure_auto(cavity, T, settings).eta_P;
}

Observable free_energy_per_area(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("free_energy_per_area: T must be > 0");
    const double L = cavity.L();
    const auto t = matsubara_transverse(cavity, T, Kernel::FreeEnergy, settings);
    const double prefactor = kB * T / (8.0 * pi * L * L);
    return {prefactor * (t.value[0] + t.value[1]), t.n_used, prefactor * t.error};
}

Observable free_energy_per_area_zero_T(const PlaneCavity& cavity, const NumericSettings& settings) {
    const double L = cavity.L();
    const auto t = zero_temperature_transverse(cavity, Kernel::FreeEnergy, settings);
    const double prefactor = hbar * c / (32.0 * pi * pi * L * L * L);
    return {prefactor * (t.value[0] + t.value[1]), 0, prefactor * t.error};
}

Observable free_energy_per_area_auto(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    const ThermalState thermal(T);
    if (thermal.zero_temperature() || thermal.tau(cavity.L()) < kTauCrossover) {
        return free_energy_per_area_zero_T(cavity, settings);
    }
    return free_energy_per_area(cavity, T, settings);
}

Observable entropy_per_area(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("entropy_per_area: T must be > 0");
    const NumericSettings tight = tightened(settings);
    const double h = std::max(1e-3, 1e-4 * T);
    if (!(T - h > 0.0)) {
        throw DomainError("temperature step underflow: T = " + std::to_string(T) +
                          " K is too close to 0 for a central difference");
    }
    std::int64_t n_terms = 0;
    double err = 0.0;
    auto F = [&](double t) {
        const Observable o = free_energy_per_area(cavity, t, tight);
        n_terms = std::max(n_terms, o.n_terms);
        err = std::max(err, o.error_estimate);
        return o.value;
    };
    const double d_h = (F(T + h) - F(T - h)) / (2.0 * h);
    const double d_h2 = (F(T + 0.5 * h) - F(T - 0.5 * h)) / h;
    const double S = -(4.0 * d_h2 - d_h) / 3.0;
#ifndef NDEBUG
    // dF = -P dL - S dT on a small stencil around (L, T).
    {
        const double dL = 1e-4 * cavity.L();
        const double dT = h;
        const double P = pressure_plane_plane(cavity, T, tight).P;
        const double lhs = free_energy_per_area(cavity.with_length(cavity.L() + dL), T + dT, tight).value -
                           free_energy_per_area(cavity.with_length(cavity.L() - dL), T - dT, tight).value;
        const double rhs = -P * 2.0 * dL - S * 2.0 * dT;
        if (std::abs(lhs - rhs) > 1e-3 * (std::abs(P * dL) + std::abs(S * dT)) + 1e-300) {
            throw ConsistencyError("thermodynamic relation dF = -P dV - S dT violated");
        }
    }
#endif
    return {S, n_terms, std::abs(d_h2 - d_h) + err / h};
}

Observable internal_energy_per_area(const PlaneCavity& cavity, double T, const NumericSettings& settings) {
    const Observable f = free_energy_per_area(cavity, T, tightened(settings));
    const Observable s = entropy_per_area(cavity, T, settings);
    return {f.value + T * s.value, std::max(f.n_terms, s.n_terms), f.error_estimate + T * s.error_estimate};
}

}  // namespace casimir
