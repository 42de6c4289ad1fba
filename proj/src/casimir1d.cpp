#include "casimir/casimir1d.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using namespace constants;

Cavity1D::Cavity1D(Mirror1D mirror1, Mirror1D mirror2, double L)
    : m1_(mirror1), m2_(mirror2), L_(Distance(L).value()) {}

double Cavity1D::r_product(double xi) const {
    return mirror1d_reflection_imag(m1_, xi) * mirror1d_reflection_imag(m2_, xi);
}

double Cavity1D::penetration_length() const {
    double a = 0.0;
    for (const Mirror1D* m : {&m1_, &m2_}) {
        if (!m->is_perfect()) a += c / m->Omega();
    }
    return a;
}

namespace {

NumericSettings tightened(NumericSettings s) {
    s.matsubara.rel_tol = std::min(s.matsubara.rel_tol, 1e-13);
    s.quadrature.rel_tol = std::min(s.quadrature.rel_tol, 1e-12);
    return s;
}

}  // namespace

Force1DResult force_1d(const Cavity1D& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("force_1d: T must be > 0 (use force_1d_zero_T)");
    const ThermalState thermal(T);
    const double L = cavity.L();
    const double a = cavity.penetration_length();
    auto term = [&](std::int64_t n) {
        if (n == 0) return 1.0 / (2.0 * L + a);
        const double kappa = static_cast<double>(n) * thermal.kappa1();
        return kappa * CavityLoop{cavity.r_product(c * kappa), kappa, L}.f();
    };
    const auto sum = primed_sum(term, settings.matsubara);
    const double prefactor = -2.0 * kB * T;
    return {prefactor * sum.value, sum.n_used, std::abs(prefactor) * sum.tail_estimate};
}

Force1DResult force_1d_zero_T(const Cavity1D& cavity, const NumericSettings& settings) {
    const double L = cavity.L();
    // x = 2 kappa L
    auto integrand = [&](double x) {
        const double kappa = x / (2.0 * L);
        const double r = cavity.r_product(c * kappa);
        if (x == 0.0) return 0.0;
        return x * CavityLoop{r, kappa, L}.f();
    };
    const auto q = integrate_semi_infinite(integrand, settings.quadrature);
    const double prefactor = -(hbar * c / pi) / (4.0 * L * L);
    return {prefactor * q.value, 0, std::abs(prefactor) * q.error};
}

double force_1d_perfect(double L) {
    const double d = Distance(L).value();
    return -hbar * c * pi / (24.0 * d * d);
}

Force1DResult force_1d_auto(const Cavity1D& cavity, double T, const NumericSettings& settings) {
    const ThermalState thermal(T);
    if (thermal.zero_temperature() || thermal.tau(cavity.L()) < kTauCrossover) {
        return force_1d_zero_T(cavity, settings);
    }
    return force_1d(cavity, T, settings);
}

Observable free_energy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("free_energy_1d: T must be > 0");
    const ThermalState thermal(T);
    const double L = cavity.L();
    const double a = cavity.penetration_length();
    const double lambda_T = 1.0 / thermal.kappa1();
    auto term = [&](std::int64_t n) {
        if (n == 0) return std::log((2.0 * L + a) / (a + lambda_T));
        const double kappa = static_cast<double>(n) * thermal.kappa1();
        return CavityLoop{cavity.r_product(c * kappa), kappa, L}.log_denominator();
    };
    const auto sum = primed_sum(term, settings.matsubara);
    const double kT = kB * T;
    return {kT * sum.value, sum.n_used, kT * sum.tail_estimate};
}

namespace {

// -d(value)/dT by Richardson extrapolation of two central differences.
template <class Fn>
Observable minus_temperature_derivative(Fn&& free_energy, double T) {
    const double h = std::max(1e-3, 1e-4 * T);
    if (!(T - h > 0.0)) {
        throw DomainError("temperature step underflow: T = " + std::to_string(T) +
                          " K is too close to 0 for a central difference");
    }
    std::int64_t n_terms = 0;
    double err = 0.0;
    auto value = [&](double t) {
        const Observable o = free_energy(t);
        n_terms = std::max(n_terms, o.n_terms);
        err = std::max(err, o.error_estimate);
        return o.value;
    };
    const double d_h = (value(T + h) - value(T - h)) / (2.0 * h);
    const double d_h2 = (value(T + 0.5 * h) - value(T - 0.5 * h)) / h;
    const double derivative = (4.0 * d_h2 - d_h) / 3.0;
    return {-derivative, n_terms, std::abs(d_h2 - d_h) + err / h};
}

}  // namespace

Observable entropy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings) {
    if (!(T > 0.0)) throw DomainError("entropy_1d: T must be > 0");
    const NumericSettings tight = tightened(settings);
    return minus_temperature_derivative([&](double t) { return free_energy_1d(cavity, t, tight); }, T);
}

Observable internal_energy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings) {
    const Observable f = free_energy_1d(cavity, T, tightened(settings));
    const Observable s = entropy_1d(cavity, T, settings);
    return {f.value + T * s.value, std::max(f.n_terms, s.n_terms),
            f.error_estimate + T * s.error_estimate};
}

double spectral_density_1d(const Cavity1D& cavity, double omega) {
    if (!(omega >= 0.0)) throw DomainError("spectral_density_1d: omega must be >= 0");
    const complex r1 = mirror1d_amplitudes(cavity.mirror1(), omega).r;
    const complex r2 = mirror1d_amplitudes(cavity.mirror2(), omega).r;
    return airy_g(r1, r2, omega, cavity.L()) - 1.0;
}

}  // namespace casimir
