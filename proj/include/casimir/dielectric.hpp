#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

/// Ideal mirror: infinite response at every frequency.
struct PerfectMirror {};

/// Lossless plasma of conduction electrons, eps(i xi) = 1 + wp^2 / xi^2.
class PlasmaModel {
public:
    explicit PlasmaModel(double omega_p);
    double omega_p() const noexcept { return omega_p_; }

private:
    double omega_p_;
};

/// Dissipative Drude metal, eps(i xi) = 1 + wp^2 / (xi (xi + gamma)).
/// gamma = 0 is accepted and reproduces the plasma model exactly.
class DrudeModel {
public:
    DrudeModel(double omega_p, double gamma);
    double omega_p() const noexcept { return omega_p_; }
    double gamma() const noexcept { return gamma_; }

private:
    double omega_p_;
    double gamma_;
};

/// Drude parameters used below the first tabulated frequency. Both may be
/// zero, in which case the low-frequency region contributes nothing.
struct DrudeTail {
    double omega_p = 0.0;
    double gamma = 0.0;
};

/// Imaginary part of the permittivity sampled on real frequencies.
class OpticalDataTable {
public:
    struct Sample {
        double omega;     // rad/s, > 0
        double eps_imag;  // >= 0
    };

    /// Validates: at least two samples, omega > 0 and strictly increasing,
    /// eps_imag finite and >= 0. Throws ParseError naming the 1-based sample.
    explicit OpticalDataTable(std::vector<Sample> samples);

    const std::vector<Sample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::vector<Sample> samples_;
};

/// Tabulated loss spectrum with a Drude extrapolation below the table and a
/// power-law rolloff omega^-high_exponent above it.
struct TabulatedModel {
    std::shared_ptr<const OpticalDataTable> table;
    DrudeTail tail{};
    double high_exponent = 3.0;
};

using DielectricModel = std::variant<PerfectMirror, PlasmaModel, DrudeModel, TabulatedModel>;

/// Gold parameters: lambda_p = 136 nm, gamma / omega_p = 0.004.
namespace gold {
inline constexpr double lambda_p = 136e-9;
double omega_p();
double gamma();
DrudeModel drude();
PlasmaModel plasma();
}  // namespace gold

/// Returned by epsilon_imag_axis where the response diverges (Perfect at any
/// xi, Drude/Plasma/Drude-tailed tables at xi = 0). Reflection amplitudes at
/// xi = 0 come from fresnel_zero_frequency instead.
inline constexpr double kDivergentEpsilon = std::numeric_limits<double>::infinity();

/// Permittivity on the imaginary frequency axis, xi >= 0.
double epsilon_imag_axis(const DielectricModel& model, double xi);

/// sigma_0 = omega_p^2 / gamma, in the reduced units (rad/s) used here.
double static_conductivity(const DielectricModel& model);

/// Reads the `omega_rad_s,eps_imag` CSV format. An optional third column
/// (eps_real) is accepted and ignored; `#` lines and blank lines are skipped.
OpticalDataTable load_optical_data(std::istream& in);
OpticalDataTable load_optical_data_file(const std::string& path);

/// eps(i xi) = 1 + (2/pi) int_0^inf omega eps''(omega) / (omega^2 + xi^2) d omega
/// with eps'' taken from the Drude tail below the table, log-log interpolation
/// inside it (linear where a sample is zero) and a power law above it.
/// xi = 0 is accepted only when the tail carries no conduction electrons.
double epsilon_from_table(const OpticalDataTable& table, const DrudeTail& tail, double xi,
                          double high_exponent = 3.0);

/// Zero-frequency character of a model, used for the n = 0 Matsubara term.
struct StaticResponse {
    enum class Kind { Perfect, Conductor, Plasma, Dielectric } kind;
    double omega_p = 0.0;  // Plasma
    double eps0 = 1.0;     // Dielectric
};

StaticResponse static_response(const DielectricModel& model);

/// Short human-readable label, e.g. "drude(1.38e16,5.54e13)".
std::string describe(const DielectricModel& model);

}  // namespace casimir
