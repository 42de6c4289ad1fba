#pragma once

#include <cstdint>

#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

/// Two mirrors on the 1D line a distance L apart (L = q2 - q1 > 0).
class Cavity1D {
public:
    Cavity1D(Mirror1D mirror1, Mirror1D mirror2, double L);

    const Mirror1D& mirror1() const noexcept { return m1_; }
    const Mirror1D& mirror2() const noexcept { return m2_; }
    double L() const noexcept { return L_; }
    Cavity1D with_length(double L) const { return Cavity1D(m1_, m2_, L); }

    /// r1 r2 on the imaginary axis.
    double r_product(double xi) const;
    /// Low-frequency penetration length a, with r(i xi) = 1 - a xi/c + O(xi^2).
    double penetration_length() const;

private:
    Mirror1D m1_;
    Mirror1D m2_;
    double L_;
};

struct Force1DResult {
    double F = 0.0;                  // N, negative = attractive
    std::int64_t n_matsubara = 0;    // 0 for the zero-temperature integral
    double tail_estimate = 0.0;      // N; truncation tail or quadrature error
};

/// Thermodynamic value with its numerical bookkeeping.
struct Observable {
    double value = 0.0;
    std::int64_t n_terms = 0;
    double error_estimate = 0.0;
};

/// Matsubara sum  F = -2 kB T sum' kappa_n f_n,  T > 0. The n = 0 term is
/// taken as its kappa -> 0 limit 1/(2L + a).
Force1DResult force_1d(const Cavity1D& cavity, double T, const NumericSettings& settings = {});

/// F0 = -(hbar c / pi) int_0^inf kappa r/(e^{2 kappa L} - r) d kappa.
Force1DResult force_1d_zero_T(const Cavity1D& cavity, const NumericSettings& settings = {});

/// -hbar c pi / (24 L^2).
double force_1d_perfect(double L);

/// Zero-temperature integral when T = 0 or tau < 1e-3, Matsubara sum otherwise.
Force1DResult force_1d_auto(const Cavity1D& cavity, double T, const NumericSettings& settings = {});

/// kB T sum' ln d(i xi_n). Every 1D mirror reflects totally at zero
/// frequency, so d(0) = 0; the n = 0 term is replaced by
/// ln((2L + a)/(a + lambda_T)) with lambda_T = 1/kappa_1, whose L-derivative
/// matches the n = 0 force term exactly.
Observable free_energy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings = {});

/// -dF/dT by Richardson-extrapolated central differences, base step
/// max(1e-3 K, 1e-4 T).
Observable entropy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings = {});

/// F + T S.
Observable internal_energy_1d(const Cavity1D& cavity, double T, const NumericSettings& settings = {});

/// g(omega) - 1 with real-frequency amplitudes; positive near cavity
/// resonances, negative between them.
double spectral_density_1d(const Cavity1D& cavity, double omega);

}  // namespace casimir
