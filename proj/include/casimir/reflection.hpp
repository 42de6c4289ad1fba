#pragma once

#include <complex>

#include "casimir/dielectric.hpp"

namespace casimir {

using complex = std::complex<double>;

/// Mirror on the 1D line: either perfectly reflecting or a localized
/// impedance mismatch of strength Omega (reflection cutoff, rad/s) at x = q.
class Mirror1D {
public:
    static Mirror1D perfect(double q = 0.0);
    static Mirror1D impedance_mismatch(double Omega, double q = 0.0);

    bool is_perfect() const noexcept { return perfect_; }
    double Omega() const noexcept { return Omega_; }
    double position() const noexcept { return q_; }

private:
    Mirror1D(bool perfect, double Omega, double q) : perfect_(perfect), Omega_(Omega), q_(q) {}
    bool perfect_;
    double Omega_;
    double q_;
};

struct Amplitudes1D {
    complex r;
    complex t;
};

/// r = Omega/(i omega - Omega), t = i omega/(i omega - Omega); Perfect gives
/// (-1, 0). omega must lie in the closed upper half-plane.
Amplitudes1D mirror1d_amplitudes(const Mirror1D& m, complex omega);

/// Real reflection amplitude at omega = i xi, xi >= 0.
double mirror1d_reflection_imag(const Mirror1D& m, double xi);

enum class Polarization { TE, TM };
inline constexpr Polarization kPolarizations[] = {Polarization::TE, Polarization::TM};
const char* to_string(Polarization p);

/// Transverse mode on the imaginary frequency axis.
struct Mode3D {
    double k;   // 1/m
    double xi;  // rad/s
    Polarization p;
    double kappa() const;
};

/// Fresnel amplitude of a thick slab at imaginary frequency.
///
/// TE = (kappa - K)/(kappa + K) in (-1, 0], TM = (eps kappa - K)/(eps kappa + K)
/// in [0, 1), with K = sqrt(eps xi^2/c^2 + k^2) and kappa = sqrt(xi^2/c^2 + k^2).
/// The TM sign is chosen so that the eps -> infinity and xi -> 0 limits are +1;
/// observables only see products r1 r2. Perfect mirrors give exactly (-1, +1).
/// Both forms are evaluated without subtraction so eps close to 1 stays exact.
double fresnel_imag_axis(const DielectricModel& model, Polarization p, double k, double xi);

/// Same as fresnel_imag_axis for a permittivity already evaluated at xi.
/// eps = kDivergentEpsilon selects the perfect-mirror values.
double fresnel_from_epsilon(double eps, Polarization p, double k, double xi);

/// Analytic xi -> 0 limit: Drude (-> TE 0, TM 1), plasma (-> TE
/// (k - sqrt(k^2 + wp^2/c^2))/(k + sqrt(...)), TM 1), perfect (-1, 1).
double fresnel_zero_frequency(const DielectricModel& model, Polarization p, double k);

/// Reflection of one material at a fixed imaginary frequency, for any k.
/// Holds eps(i xi) so that a k-integral evaluates the permittivity only once.
class SurfaceResponse {
public:
    static SurfaceResponse at(const DielectricModel& model, double xi);

    double r(Polarization p, double k) const;
    double xi() const noexcept { return xi_; }

private:
    SurfaceResponse() = default;
    double xi_ = 0.0;
    double eps_ = 1.0;
    bool zero_frequency_ = false;
    StaticResponse static_{StaticResponse::Kind::Dielectric};
};

/// Round trip through a cavity on the imaginary axis: r = r1 r2 and the
/// propagation factor exp(-2 kappa L).
struct CavityLoop {
    double r_product;
    double kappa;
    double L;

    /// d = 1 - r exp(-2 kappa L), computed without cancellation as r -> 1.
    double denominator() const;
    /// f = r exp(-2 kappa L) / d.
    double f() const;
    /// ln d.
    double log_denominator() const;
};

/// Closed-loop function r e^{-2 kappa L}/(1 - r e^{-2 kappa L}).
double loop_f(double r_product, double kappa, double L);

/// Airy function g = (1 - |r|^2)/|1 - r e^{2 i omega L/c}|^2, r = r1 r2, at real
/// omega >= 0. Throws DomainError when |r| > 1.
double airy_g(complex r1, complex r2, double omega, double L);

/// Cavity S-matrix of two 1D mirrors separated by L (mirror 1 at -L/2,
/// mirror 2 at +L/2), ordered as (rightward out, leftward out) against
/// (rightward in, leftward in).
struct Matrix2 {
    complex a, b, c, d;
    complex det() const { return a * d - b * c; }
};
Matrix2 mirror_s_matrix(const Mirror1D& m, double omega);
Matrix2 cavity_s_matrix(const Mirror1D& m1, const Mirror1D& m2, double omega, double L);

/// |det S12 - det S1 det S2 d*/d| at real omega > 0.
double det_identity_check(const Mirror1D& m1, const Mirror1D& m2, double omega, double L);

}  // namespace casimir
