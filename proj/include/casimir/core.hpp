#pragma once

#include <numbers>

namespace casimir {

// CODATA 2018 values, SI units.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 2.99792458e8;        // m / s
inline constexpr double kB = 1.380649e-23;       // J / K
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// Temperature together with the Matsubara grid it induces.
///
/// `xi1 = 2 pi kB T / hbar` is the spacing of the Matsubara frequencies and
/// `kappa1 = xi1 / c` the matching wave number. T = 0 is allowed and selects
/// the zero-temperature code paths.
class ThermalState {
public:
    explicit ThermalState(double T);

    double T() const noexcept { return T_; }
    double xi1() const noexcept { return xi1_; }
    double kappa1() const noexcept { return kappa1_; }
    bool zero_temperature() const noexcept { return T_ == 0.0; }

    /// Dimensionless crossover parameter 2 pi kB T L / (hbar c).
    double tau(double L) const noexcept { return kappa1_ * L; }

private:
    double T_;
    double xi1_;
    double kappa1_;
};

/// Strictly positive, finite mirror separation in metres.
class Distance {
public:
    explicit Distance(double L);

    double value() const noexcept { return L_; }
    operator double() const noexcept { return L_; }

private:
    double L_;
};

/// Crossover below which zero-temperature integrals replace Matsubara sums.
inline constexpr double kTauCrossover = 1e-3;

/// Bose-Einstein occupation 1/(exp(hbar omega / kB T) - 1).
/// Exactly 0 at T = 0 and once hbar omega / kB T exceeds 700.
double mean_photon_number(double omega, double T);

/// Mean energy per mode (1/2 + n) hbar omega, i.e. the Planck law with
/// zero-point energy included.
double mean_energy_per_mode(double omega, double T);

}  // namespace casimir
