#include <doctest.h>

#include <cmath>
#include <cstring>
#include <thread>
#include <vector>

#include "casimir/quadrature.hpp"
#include "support.hpp"

using namespace casimir;

TEST_CASE("primed sum: zero series") {
    const auto r = primed_sum([](std::int64_t) { return 0.0; });
    CHECK(r.value == 0.0);
    CHECK(r.tail_estimate == 0.0);
}

TEST_CASE("primed sum: half weight on the zeroth term") {
    const auto r = primed_sum([](std::int64_t n) { return n == 0 ? 1.0 : 0.0; });
    CHECK(r.value == 0.5);
}

TEST_CASE("primed sum: geometric series") {
    const double x = 0.5;
    const auto r = primed_sum([x](std::int64_t n) { return std::pow(x, double(n)); });
    // 1/2 + x/(1-x)
    CHECK(r.value == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(r.tail_estimate >= 0.0);
    CHECK(r.tail_estimate <= 1e-9);

    for (double q : {0.1, 0.9, 0.99}) {
        const auto s = primed_sum([q](std::int64_t n) { return std::pow(q, double(n)); });
        CHECK(s.value == doctest::Approx(0.5 + q / (1.0 - q)).epsilon(1e-8));
    }
}

TEST_CASE("primed sum: truncation carries the partial value") {
    MatsubaraSettings s;
    s.n_max = 10;
    try {
        primed_sum([](std::int64_t n) { return 1.0 / double(n + 1); }, s);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        // 1/2 + 1/2 + ... + 1/11
        double expect = 0.5;
        for (int n = 1; n <= 10; ++n) expect += 1.0 / (n + 1);
        CHECK(e.partial() == doctest::Approx(expect).epsilon(1e-15));
        CHECK(e.estimate() > 0.0);
    }
}

TEST_CASE("primed sum is bit-identical across threads") {
    auto term = [](std::int64_t n) { return std::exp(-0.01 * double(n)) * (1.0 + 1e-3 * std::sin(double(n))); };
    const double ref = primed_sum(term).value;
    std::vector<double> got(8);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < got.size(); ++i)
        pool.emplace_back([&, i] { got[i] = primed_sum(term).value; });
    for (auto& t : pool) t.join();
    for (double v : got) CHECK(std::memcmp(&v, &ref, sizeof v) == 0);
}

TEST_CASE("settings validation") {
    MatsubaraSettings m;
    m.rel_tol = 0.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
    m.rel_tol = 1.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
    m = {};
    m.n_max = 9;
    CHECK_THROWS_AS(m.validate(), DomainError);

    QuadratureSettings q;
    q.rel_tol = -1.0;
    CHECK_THROWS_AS(q.validate(), DomainError);
    q = {};
    q.abs_tol = 0.0;
    CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("semi-infinite Bose integrals") {
    const double pi = constants::pi;
    // Gamma(s) zeta(s) / 2^s
    const auto a = integrate_semi_infinite([](double x) { return x / std::expm1(2.0 * x); });
    CHECK(a.value == doctest::Approx(pi * pi / 24.0).epsilon(1e-10));
    CHECK(std::abs(a.value - pi * pi / 24.0) <= std::max(a.error, 1e-16));

    const auto b = integrate_semi_infinite([](double x) { return x * x * x / std::expm1(2.0 * x); });
    CHECK(b.value == doctest::Approx(std::pow(pi, 4) / 240.0).epsilon(1e-10));
    CHECK(std::abs(b.value - std::pow(pi, 4) / 240.0) <= std::max(b.error, 1e-16));

    const auto z = integrate_semi_infinite([](double) { return 0.0; });
    CHECK(z.value == 0.0);
}

TEST_CASE("integration from a shifted origin") {
    // int_a^inf e^{-x} dx = e^{-a}
    const auto r = integrate_from([](double x) { return std::exp(-x); }, 3.0);
    CHECK(r.value == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("finite-interval integration") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, constants::pi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

    const auto sq = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(sq.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("quadrature failure modes") {
    QuadratureSettings s;
    s.max_subdivisions = 2;
    s.rel_tol = 1e-14;
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, s);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.partial() == doctest::Approx(2.0).epsilon(0.1));
        CHECK(e.estimate() > 0.0);
    }
    CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0.0, 1.0), DomainError);
}

TEST_CASE("zeta values") {
    const double pi = constants::pi;
    CHECK(zeta(2) == pi * pi / 6.0);
    CHECK(zeta(4) == std::pow(pi, 4) / 90.0);
    CHECK(zeta(2) == doctest::Approx(1.6449340668).epsilon(1e-10));
    CHECK(zeta(4) == doctest::Approx(1.0823232337).epsilon(1e-10));
    CHECK(std::abs(zeta(3) - 1.2020569031595943) < 1e-15);

    // independent oracle: direct sum with an Euler-Maclaurin remainder
    double s = 0.0;
    const int N = 1000;
    for (int n = N; n >= 1; --n) s += 1.0 / (double(n) * n * n);
    s += 1.0 / (2.0 * N * N) - 1.0 / (2.0 * N * N * N) + 1.0 / (4.0 * std::pow(N, 4));
    CHECK(std::abs(zeta(3) - s) < 1e-14);

    CHECK_THROWS_AS(zeta(5), DomainError);
    CHECK_THROWS_AS(zeta(1), DomainError);
}
