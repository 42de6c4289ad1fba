#include "casimir/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::c;

Mirror1D Mirror1D::perfect(double q) {
    if (!std::isfinite(q)) throw DomainError("mirror position must be finite");
    return Mirror1D(true, 0.0, q);
}

Mirror1D Mirror1D::impedance_mismatch(double Omega, double q) {
    if (!(Omega > 0.0) || !std::isfinite(Omega)) throw DomainError("impedance mismatch: Omega must be > 0");
    if (!std::isfinite(q)) throw DomainError("mirror position must be finite");
    return Mirror1D(false, Omega, q);
}

Amplitudes1D mirror1d_amplitudes(const Mirror1D& m, complex omega) {
    if (omega.imag() < 0.0) {
        throw DomainError("mirror1d_amplitudes: omega must lie in the closed upper half-plane");
    }
    if (m.is_perfect()) return {complex(-1.0, 0.0), complex(0.0, 0.0)};
    const complex i_omega = complex(0.0, 1.0) * omega;
    const complex denom = i_omega - m.Omega();
    return {m.Omega() / denom, i_omega / denom};
}

double mirror1d_reflection_imag(const Mirror1D& m, double xi) {
    if (!(xi >= 0.0)) throw DomainError("mirror1d_reflection_imag: xi must be >= 0");
    if (m.is_perfect()) return -1.0;
    return -m.Omega() / (xi + m.Omega());
}

const char* to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

double Mode3D::kappa() const {
    const double zeta = xi / c;
    return std::hypot(k, zeta);
}

double fresnel_from_epsilon(double eps, Polarization p, double k, double xi) {
    if (eps == kDivergentEpsilon) return p == Polarization::TE ? -1.0 : 1.0;
    const double zeta = xi / c;
    const double z2 = zeta * zeta;
    const double kappa = std::sqrt(z2 + k * k);
    const double K = std::sqrt(eps * z2 + k * k);
    const double em1 = eps - 1.0;
    if (p == Polarization::TE) {
        const double s = kappa + K;
        return -em1 * z2 / (s * s);
    }
    const double s = eps * kappa + K;
    return em1 * (eps * z2 + (eps + 1.0) * k * k) / (s * s);
}

double fresnel_imag_axis(const DielectricModel& model, Polarization p, double k, double xi) {
    if (!(xi > 0.0)) {
        throw DomainError("fresnel_imag_axis: xi must be > 0; use fresnel_zero_frequency at xi = 0");
    }
    if (!(k >= 0.0)) throw DomainError("fresnel_imag_axis: k must be >= 0");
    return fresnel_from_epsilon(epsilon_imag_axis(model, xi), p, k, xi);
}

namespace {

double static_reflection(const StaticResponse& s, Polarization p, double k) {
    using Kind = StaticResponse::Kind;
    switch (s.kind) {
        case Kind::Perfect:
            return p == Polarization::TE ? -1.0 : 1.0;
        case Kind::Conductor:
            return p == Polarization::TE ? 0.0 : 1.0;
        case Kind::Plasma: {
            if (p == Polarization::TM) return 1.0;
            const double kp = s.omega_p / c;
            const double root = std::sqrt(k * k + kp * kp);
            const double sum = k + root;
            return -kp * kp / (sum * sum);
        }
        case Kind::Dielectric:
            if (p == Polarization::TE) return 0.0;
            return (s.eps0 - 1.0) / (s.eps0 + 1.0);
    }
    return 0.0;
}

}  // namespace

double fresnel_zero_frequency(const DielectricModel& model, Polarization p, double k) {
    if (!(k > 0.0)) throw DomainError("fresnel_zero_frequency: k must be > 0");
    return static_reflection(static_response(model), p, k);
}

SurfaceResponse SurfaceResponse::at(const DielectricModel& model, double xi) {
    if (!(xi >= 0.0)) throw DomainError("SurfaceResponse: xi must be >= 0");
    SurfaceResponse s;
    s.xi_ = xi;
    if (xi == 0.0) {
        s.zero_frequency_ = true;
        s.static_ = static_response(model);
    } else {
        s.eps_ = epsilon_imag_axis(model, xi);
    }
    return s;
}

double SurfaceResponse::r(Polarization p, double k) const {
    if (zero_frequency_) return static_reflection(static_, p, k);
    return fresnel_from_epsilon(eps_, p, k, xi_);
}

double CavityLoop::denominator() const {
    const double x = -2.0 * kappa * L;
    return (1.0 - r_product) - r_product * std::expm1(x);
}

double CavityLoop::f() const {
    const double re = r_product * std::exp(-2.0 * kappa * L);
    if (re == 0.0) return 0.0;
    return re / denominator();
}

double CavityLoop::log_denominator() const {
    const double re = r_product * std::exp(-2.0 * kappa * L);
    if (std::abs(re) < 0.5) return std::log1p(-re);
    return std::log(denominator());
}

double loop_f(double r_product, double kappa, double L) {
    if (!(std::abs(r_product) <= 1.0)) throw DomainError("loop_f: |r| must be <= 1");
    if (!(kappa * L > 0.0)) throw DomainError("loop_f: kappa L must be > 0");
    return CavityLoop{r_product, kappa, L}.f();
}

double airy_g(complex r1, complex r2, double omega, double L) {
    const complex r = r1 * r2;
    const double r2abs = std::norm(r);
    if (r2abs > 1.0 + 1e-14) throw DomainError("airy_g: |r1 r2| > 1 is non-physical gain");
    if (!(omega >= 0.0)) throw DomainError("airy_g: omega must be >= 0");
    const complex phase = std::polar(1.0, 2.0 * omega * L / c);
    const double denom = std::norm(1.0 - r * phase);
    const double numer = std::max(0.0, 1.0 - r2abs);
    if (numer == 0.0) return denom == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return numer / denom;
}

Matrix2 mirror_s_matrix(const Mirror1D& m, double omega) {
    const auto [r, t] = mirror1d_amplitudes(m, omega);
    const double k = omega / c;
    const double q = m.position();
    return {t, r * std::polar(1.0, -2.0 * k * q), r * std::polar(1.0, 2.0 * k * q), t};
}

Matrix2 cavity_s_matrix(const Mirror1D& m1, const Mirror1D& m2, double omega, double L) {
    const auto [r1, t1] = mirror1d_amplitudes(m1, omega);
    const auto [r2, t2] = mirror1d_amplitudes(m2, omega);
    const double k = omega / c;
    const complex e_plus = std::polar(1.0, k * L);
    const complex e_minus = std::polar(1.0, -k * L);
    const complex d = 1.0 - r1 * r2 * e_plus * e_plus;
    return {t1 * t2 / d, (d * r2 * e_minus + t2 * t2 * r1 * e_plus) / d,
            (d * r1 * e_minus + t1 * t1 * r2 * e_plus) / d, t1 * t2 / d};
}

double det_identity_check(const Mirror1D& m1, const Mirror1D& m2, double omega, double L) {
    if (!(omega > 0.0)) throw DomainError("det_identity_check: omega must be > 0");
    if (!(L > 0.0)) throw DomainError("det_identity_check: L must be > 0");
    const complex r = mirror1d_amplitudes(m1, omega).r * mirror1d_amplitudes(m2, omega).r;
    const complex d = 1.0 - r * std::polar(1.0, 2.0 * omega * L / c);
    const complex lhs = cavity_s_matrix(m1, m2, omega, L).det();
    const complex rhs = mirror_s_matrix(m1, omega).det() * mirror_s_matrix(m2, omega).det() * std::conj(d) / d;
    return std::abs(lhs - rhs);
}

}  // namespace casimir
