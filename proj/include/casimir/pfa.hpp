#pragma once

#include "casimir/casimir3d.hpp"

namespace casimir {

/// Sphere of radius R above a plate at closest distance L. The proximity
/// force approximation is only trusted for R >> L; `aspect_ratio()` = L/R is
/// reported with every result and `pfa_warning()` flags L/R > 0.1.
class PlaneSphereConfig {
public:
    PlaneSphereConfig(double R, double L, DielectricModel sphere, DielectricModel plate);
    PlaneSphereConfig(double R, double L, const DielectricModel& material)
        : PlaneSphereConfig(R, L, material, material) {}

    double R() const noexcept { return R_; }
    double L() const noexcept { return cavity_.L(); }
    const PlaneCavity& cavity() const noexcept { return cavity_; }
    double aspect_ratio() const noexcept { return L() / R_; }
    bool pfa_warning() const noexcept { return aspect_ratio() > 0.1; }
    PlaneSphereConfig with_length(double L) const;

private:
    double R_;
    PlaneCavity cavity_;
};

struct PfaForceResult {
    double F = 0.0;               // N, from the free energy: 2 pi R F/A(L)
    double F_pressure_path = 0.0; // N, from integrating 2 pi R P over [L, inf)
    double consistency = 0.0;     // |a - b| / |b|
    double aspect_ratio = 0.0;
    bool pfa_warning = false;
    double error_estimate = 0.0;
    std::int64_t n_terms = 0;
};

/// Relative agreement required between the two evaluation routes.
inline constexpr double kPfaConsistencyTolerance = 1e-5;

/// F_PFA(L) = int_L^inf 2 pi R P(l) dl, evaluated (a) by direct quadrature
/// of the pressure and (b) as 2 pi R times the free energy per area. Returns
/// (b); throws ConsistencyError if the two differ by more than 1e-5 relative.
/// T = 0 uses zero-temperature integrals throughout, T > 0 Matsubara sums.
PfaForceResult force_plane_sphere_pfa(const PlaneSphereConfig& cfg, double T,
                                      const NumericSettings& settings = {});

struct PfaGradientResult {
    double G = 0.0;  // N/m, -2 pi R P(L)
    PressureResult pressure;
    double aspect_ratio = 0.0;
    bool pfa_warning = false;
};

/// G_PFA = dF_PFA/dL = -2 pi R P(L).
PfaGradientResult gradient_plane_sphere_pfa(const PlaneSphereConfig& cfg, double T,
                                            const NumericSettings& settings = {});

/// Torsional micro-oscillator: stiffness K0, moment of inertia I, lever arm b.
struct OscillatorParams {
    double K0;
    double I;
    double b;
    void validate() const;
};

struct FrequencyShift {
    double omega0_sq = 0.0;  // K0 / I
    double omega_sq = 0.0;   // (K0 - b^2 G) / I
    double gradient = 0.0;   // G used, N/m
};

/// omega^2 = omega0^2 + (b^2/I) 2 pi R P(L). Throws InstabilityError when the
/// effective stiffness K0 - b^2 G is not positive.
FrequencyShift frequency_shift(const OscillatorParams& osc, const PlaneSphereConfig& cfg, double T,
                               const NumericSettings& settings = {});

}  // namespace casimir
