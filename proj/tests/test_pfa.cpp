#include <doctest.h>

#include <cmath>
#include <vector>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/pfa.hpp"
#include "support.hpp"

using namespace casimir;
using testing_support::log_grid;
using testing_support::rel_diff;

namespace {

const double hbar = constants::hbar;
const double c = constants::c;
const double pi = constants::pi;
const double R = 150e-6;

}  // namespace

TEST_CASE("configuration") {
    const PlaneSphereConfig cfg(R, 0.3e-6, gold::drude());
    CHECK(cfg.aspect_ratio() == doctest::Approx(0.3e-6 / R).epsilon(1e-15));
    CHECK_FALSE(cfg.pfa_warning());
    CHECK(PlaneSphereConfig(1e-6, 0.2e-6, gold::drude()).pfa_warning());
    CHECK(cfg.with_length(0.5e-6).L() == 0.5e-6);
    CHECK(cfg.with_length(0.5e-6).R() == R);
    CHECK_THROWS_AS(PlaneSphereConfig(0.0, 1e-6, gold::drude()), DomainError);
    CHECK_THROWS_AS(PlaneSphereConfig(R, 0.0, gold::drude()), DomainError);
}

TEST_CASE("perfect mirrors at zero temperature") {
    for (double L : {0.16e-6, 0.3e-6, 0.75e-6}) {
        const PlaneSphereConfig cfg(R, L, PerfectMirror{});
        const auto f = force_plane_sphere_pfa(cfg, 0.0);
        const double closed = 2.0 * pi * R * (-hbar * c * pi * pi / (720.0 * L * L * L));
        CHECK(rel_diff(f.F, closed) < 1e-8);
        CHECK(rel_diff(f.F_pressure_path, closed) < 1e-8);

        const auto g = gradient_plane_sphere_pfa(cfg, 0.0);
        CHECK(g.G > 0.0);
        CHECK(rel_diff(g.G, -2.0 * pi * R * (-hbar * c * pi * pi / (240.0 * L * L * L * L))) < 1e-8);
    }
}

TEST_CASE("transparent sphere") {
    const PlaneSphereConfig cfg(R, 0.3e-6, testing_support::vacuum(), gold::drude());
    CHECK(force_plane_sphere_pfa(cfg, 300.0).F == 0.0);
    CHECK(force_plane_sphere_pfa(cfg, 0.0).F == 0.0);
    CHECK(gradient_plane_sphere_pfa(cfg, 300.0).G == 0.0);
}

TEST_CASE("Drude gold in the experimental configuration") {
    const auto f = force_plane_sphere_pfa(PlaneSphereConfig(R, 0.3e-6, gold::drude()), 300.0);
    CHECK(f.consistency < 1e-5);
    CHECK(rel_diff(f.F, f.F_pressure_path) < 1e-5);
    // pinned; an independent scipy evaluation of 2 pi R F/A gives -1.08011142732e-11 N
    CHECK(f.F == doctest::Approx(-1.0801114273e-11).epsilon(1e-9));
    CHECK(f.aspect_ratio == doctest::Approx(0.002).epsilon(1e-12));
    CHECK_FALSE(f.pfa_warning);
}

TEST_CASE("gradient is the derivative of the force") {
    // the zero-temperature force nests three quadratures, so only the window ends there
    for (double T : {0.0, 300.0}) {
        for (double L : T == 0.0 ? std::vector<double>{0.16e-6, 0.75e-6} : log_grid(0.16e-6, 0.75e-6, 5)) {
            const PlaneSphereConfig cfg(R, L, gold::drude());
            auto F = [&](double l) { return force_plane_sphere_pfa(cfg.with_length(l), T).F; };
            // Richardson on central differences, steps 1e-2 L and 5e-3 L
            const double h = 1e-2 * L;
            const double d1 = (F(L + h) - F(L - h)) / (2.0 * h);
            const double d2 = (F(L + h / 2) - F(L - h / 2)) / h;
            const auto g = gradient_plane_sphere_pfa(cfg, T);
            CHECK(rel_diff((4.0 * d2 - d1) / 3.0, g.G) < 1e-4);
            CHECK(g.G == -2.0 * pi * R * g.pressure.P);
        }
    }
}

TEST_CASE("force is linear in the radius") {
    const double L = 0.4e-6;
    const double f1 = force_plane_sphere_pfa(PlaneSphereConfig(R, L, gold::drude()), 300.0).F;
    const double f3 = force_plane_sphere_pfa(PlaneSphereConfig(3.0 * R, L, gold::drude()), 300.0).F;
    CHECK(f3 / f1 == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("frequency shift") {
    SUBCASE("no pressure, no shift") {
        const PlaneSphereConfig cfg(R, 1e-6, testing_support::vacuum(), gold::drude());
        const auto s = frequency_shift({1e-8, 1e-16, 1e-4}, cfg, 300.0);
        CHECK(s.omega_sq == s.omega0_sq);
        CHECK(s.omega0_sq == doctest::Approx(1e8).epsilon(1e-15));
    }
    SUBCASE("attraction softens the oscillator") {
        const auto s = frequency_shift({1e-8, 1e-16, 1e-4}, PlaneSphereConfig(R, 0.3e-6, gold::drude()), 300.0);
        CHECK(s.omega_sq < s.omega0_sq);
        CHECK(s.gradient > 0.0);
    }
    SUBCASE("synthetic parameters with perfect mirrors") {
        const double K0 = 1e-8, I = 1e-16, b = 1e-4, L = 1e-6, Rs = 1.5e-4;
        const double P = -hbar * c * pi * pi / (240.0 * std::pow(L, 4));
        const double w0 = K0 / I;
        const double w = w0 + (b * b / I) * 2.0 * pi * Rs * P;
        const auto s = frequency_shift({K0, I, b}, PlaneSphereConfig(Rs, L, PerfectMirror{}), 0.0);
        CHECK(s.omega0_sq == doctest::Approx(w0).epsilon(1e-15));
        CHECK(rel_diff(s.omega_sq, w) < 1e-10);
        // K = K0 - b^2 G
        CHECK(rel_diff(s.omega_sq * I, K0 - b * b * s.gradient) < 1e-12);
    }
    SUBCASE("too soft an oscillator is unstable") {
        CHECK_THROWS_AS(frequency_shift({1e-16, 1e-16, 1e-4}, PlaneSphereConfig(R, 0.16e-6, gold::drude()), 300.0),
                        InstabilityError);
    }
    SUBCASE("parameters must be positive") {
        CHECK_THROWS_AS(OscillatorParams({0.0, 1.0, 1.0}).validate(), DomainError);
        CHECK_THROWS_AS(OscillatorParams({1.0, -1.0, 1.0}).validate(), DomainError);
        CHECK_THROWS_AS(OscillatorParams({1.0, 1.0, 0.0}).validate(), DomainError);
    }
}
