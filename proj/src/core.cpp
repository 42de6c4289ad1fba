#include "casimir/core.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

using namespace constants;

ThermalState::ThermalState(double T) : T_(T) {
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw DomainError("temperature must be finite and >= 0, got " + std::to_string(T));
    }
    xi1_ = 2.0 * pi * kB * T / hbar;
    kappa1_ = xi1_ / c;
}

Distance::Distance(double L) : L_(L) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("distance must be finite and > 0, got " + std::to_string(L));
    }
}

double mean_photon_number(double omega, double T) {
    if (!(omega > 0.0)) throw DomainError("mean_photon_number: omega must be > 0");
    if (!(T >= 0.0)) throw DomainError("mean_photon_number: T must be >= 0");
    if (T == 0.0) return 0.0;
    const double x = hbar * omega / (kB * T);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double mean_energy_per_mode(double omega, double T) {
    return (0.5 + mean_photon_number(omega, T)) * hbar * omega;
}

}  // namespace casimir
