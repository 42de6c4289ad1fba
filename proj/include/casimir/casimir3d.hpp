#pragma once

#include <cstdint>

#include "casimir/casimir1d.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Two parallel thick slabs a distance L apart.
class PlaneCavity {
public:
    PlaneCavity(DielectricModel material1, DielectricModel material2, double L);
    /// Identical mirrors.
    PlaneCavity(const DielectricModel& material, double L) : PlaneCavity(material, material, L) {}

    const DielectricModel& material1() const noexcept { return m1_; }
    const DielectricModel& material2() const noexcept { return m2_; }
    double L() const noexcept { return L_; }
    PlaneCavity with_length(double L) const { return PlaneCavity(m1_, m2_, L); }

private:
    DielectricModel m1_;
    DielectricModel m2_;
    double L_;
};

struct PressureResult {
    double P = 0.0;               // Pa, negative = attractive; P = te + tm
    double eta_P = 0.0;           // P / ideal_pressure(L)
    double te = 0.0;              // Pa
    double tm = 0.0;              // Pa
    std::int64_t n_matsubara = 0; // 0 for the zero-temperature integral
    double error_estimate = 0.0;  // Pa, quadrature plus truncation
};

/// -hbar c pi^2 / (240 L^4), perfect mirrors at T = 0.
double ideal_pressure(double L);
/// -hbar c pi^2 A / (720 L^3).
double ideal_energy(double L, double A);

/// Lifshitz pressure as a Matsubara sum, T > 0. Each (n, p) term integrates
/// over u = 2 kappa L from 2 xi_n L / c; n = 0 uses the zero-frequency limits.
PressureResult pressure_plane_plane(const PlaneCavity& cavity, double T,
                                    const NumericSettings& settings = {});

/// T = 0 pressure: nested integral over imaginary frequency (outer) and
/// kappa >= xi/c (inner).
PressureResult pressure_zero_T(const PlaneCavity& cavity, const NumericSettings& settings = {});

/// Contribution of the zeroth Matsubara pole alone, the high-temperature limit.
PressureResult pressure_high_T(const PlaneCavity& cavity, double T,
                               const NumericSettings& settings = {});

/// Zero-temperature integral when T = 0 or tau < 1e-3, Matsubara sum otherwise.
PressureResult pressure_auto(const PlaneCavity& cavity, double T,
                             const NumericSettings& settings = {});

/// P / P_Cas with the path chosen as in pressure_auto.
double eta_P(const PlaneCavity& cavity, double T, const NumericSettings& settings = {});

/// F/A = kB T sum' sum_p int d^2k/(2 pi)^2 ln(1 - r e^{-2 kappa_n L}), T > 0.
Observable free_energy_per_area(const PlaneCavity& cavity, double T,
                                const NumericSettings& settings = {});

/// T = 0 limit of free_energy_per_area.
Observable free_energy_per_area_zero_T(const PlaneCavity& cavity,
                                       const NumericSettings& settings = {});

/// Zero-temperature integral when T = 0 or tau < 1e-3, Matsubara sum otherwise.
Observable free_energy_per_area_auto(const PlaneCavity& cavity, double T,
                                     const NumericSettings& settings = {});

/// -d(F/A)/dT, Richardson-extrapolated central differences as in entropy_1d.
Observable entropy_per_area(const PlaneCavity& cavity, double T, const NumericSettings& settings = {});

/// F/A + T S/A.
Observable internal_energy_per_area(const PlaneCavity& cavity, double T,
                                    const NumericSettings& settings = {});

}  // namespace casimir
