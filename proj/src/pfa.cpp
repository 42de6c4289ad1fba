#include "casimir/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using namespace constants;

PlaneSphereConfig::PlaneSphereConfig(double R, double L, DielectricModel sphere, DielectricModel plate)
    : R_(R), cavity_(std::move(sphere), std::move(plate), L) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("sphere radius must be > 0");
}

PlaneSphereConfig PlaneSphereConfig::with_length(double L) const {
    return PlaneSphereConfig(R_, L, cavity_.material1(), cavity_.material2());
}

namespace {

PressureResult pressure_at(const PlaneCavity& cavity, double T, const NumericSettings& s) {
    return T == 0.0 ? pressure_zero_T(cavity, s) : pressure_plane_plane(cavity, T, s);
}

Observable free_energy_at(const PlaneCavity& cavity, double T, const NumericSettings& s) {
    return T == 0.0 ? free_energy_per_area_zero_T(cavity, s) : free_energy_per_area(cavity, T, s);
}

// Zeroth Matsubara term of F/A; beyond 20 thermal lengths it is the whole
// free energy up to exp(-40) corrections.
double zero_frequency_free_energy(const PlaneCavity& cavity, double T, const NumericSettings& s) {
    const double L = cavity.L();
    QuadratureSettings q = s.quadrature;
    CompensatedSum total;
    for (Polarization p : kPolarizations) {
        auto integrand = [&](double u) {
            const double k = u / (2.0 * L);
            const double r = fresnel_zero_frequency(cavity.material1(), p, k) *
                             fresnel_zero_frequency(cavity.material2(), p, k);
            if (r == 0.0) return 0.0;
            return u * CavityLoop{r, k, L}.log_denominator();
        };
        total.add(integrate_semi_infinite(integrand, q).value);
    }
    return 0.5 * kB * T / (8.0 * pi * L * L) * total.value();
}

}  // namespace

PfaForceResult force_plane_sphere_pfa(const PlaneSphereConfig& cfg, double T, const NumericSettings& settings) {
    if (!(T >= 0.0)) throw DomainError("force_plane_sphere_pfa: T must be >= 0");
    const double R = cfg.R();
    const double L = cfg.L();
    const PlaneCavity& cavity = cfg.cavity();

    // Path (b): free energy per area.
    const Observable fe = free_energy_at(cavity, T, settings);
    const double F_b = 2.0 * pi * R * fe.value;

    // Path (a): quadrature of P over [L, l_max] in s = ln(l/L) plus a tail.
    double l_max = 100.0 * L;
    if (T > 0.0) l_max = std::max(l_max, 20.0 / ThermalState(T).kappa1());
    NumericSettings inner = settings;
    inner.quadrature.rel_tol = std::max(1e-13, 1e-2 * settings.quadrature.rel_tol);
    auto integrand = [&](double s) {
        const double l = L * std::exp(s);
        return pressure_at(cavity.with_length(l), T, inner).P * l;
    };
    QuadratureSettings outer = settings.quadrature;
    outer.rel_tol = std::min(outer.rel_tol, 1e-9);
    const auto body = integrate(integrand, 0.0, std::log(l_max / L), outer);
    double tail = 0.0;
    if (T > 0.0) {
        tail = zero_frequency_free_energy(cavity.with_length(l_max), T, settings);
    } else {
        // P ~ l^-4 far away: int_{l_max}^inf P = P(l_max) l_max / 3.
        tail = pressure_at(cavity.with_length(l_max), T, inner).P * l_max / 3.0;
    }
    const double F_a = 2.0 * pi * R * (body.value + tail);

    PfaForceResult out;
    out.F = F_b;
    out.F_pressure_path = F_a;
    const double scale = std::max(std::abs(F_a), std::abs(F_b));
    out.consistency = scale == 0.0 ? 0.0 : std::abs(F_a - F_b) / scale;
    out.aspect_ratio = cfg.aspect_ratio();
    out.pfa_warning = cfg.pfa_warning();
    out.error_estimate = 2.0 * pi * R * fe.error_estimate;
    out.n_terms = fe.n_terms;
    if (out.consistency > kPfaConsistencyTolerance) {
        std::ostringstream os;
        os << "PFA force paths disagree: free energy " << F_b << " N vs pressure integral " << F_a
           << " N (relative " << out.consistency << ")";
        throw ConsistencyError(os.str());
    }
    return out;
}

PfaGradientResult gradient_plane_sphere_pfa(const PlaneSphereConfig& cfg, double T,
                                            const NumericSettings& settings) {
    if (!(T >= 0.0)) throw DomainError("gradient_plane_sphere_pfa: T must be >= 0");
    PfaGradientResult out;
    out.pressure = pressure_at(cfg.cavity(), T, settings);
    out.G = -2.0 * pi * cfg.R() * out.pressure.P;
    out.aspect_ratio = cfg.aspect_ratio();
    out.pfa_warning = cfg.pfa_warning();
    return out;
}

void OscillatorParams::validate() const {
    if (!(K0 > 0.0) || !(I > 0.0) || !(b > 0.0)) {
        throw DomainError("oscillator parameters K0, I, b must all be > 0");
    }
}

FrequencyShift frequency_shift(const OscillatorParams& osc, const PlaneSphereConfig& cfg, double T,
                               const NumericSettings& settings) {
    osc.validate();
    const auto grad = gradient_plane_sphere_pfa(cfg, T, settings);
    const double stiffness = osc.K0 - osc.b * osc.b * grad.G;
    if (!(stiffness > 0.0)) {
        throw InstabilityError("effective stiffness K0 - b^2 G is not positive; the oscillator snaps in");
    }
    FrequencyShift out;
    out.omega0_sq = osc.K0 / osc.I;
    out.omega_sq = out.omega0_sq + (osc.b * osc.b / osc.I) * 2.0 * pi * cfg.R() * grad.pressure.P;
    out.gradient = grad.G;
    return out;
}

}  // namespace casimir
