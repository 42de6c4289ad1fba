#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

struct MatsubaraSettings {
    double rel_tol = 1e-10;
    std::int64_t n_max = 1'000'000;
    int consecutive_small = 3;

    void validate() const;
};

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    int max_subdivisions = 200;

    void validate() const;
};

/// Bundles the two engines' settings; every observable takes one of these.
struct NumericSettings {
    MatsubaraSettings matsubara{};
    QuadratureSettings quadrature{};
};

/// Neumaier-compensated running sum. Order-dependent by construction, so
/// callers that need determinism must add terms in a fixed order.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <std::size_t N>
struct PrimedSumResult {
    std::array<double, N> components{};
    std::int64_t n_used = 0;
    double tail_estimate = 0.0;

    double value() const noexcept {
        double s = 0.0;
        for (double c : components) s += c;
        return s;
    }
};

/// Primed Matsubara sum  1/2 term(0) + sum_{n>=1} term(n)  of a vector-valued
/// term. Convergence is decided on the component total; the sum stops once
/// `consecutive_small` successive terms satisfy |term| <= rel_tol |partial|.
/// `tail_estimate` extrapolates the remainder geometrically from the last two
/// terms (ratio clamped to [0, 0.99]).
///
/// Throws TruncationError when n_max is reached first.
template <std::size_t N, class Term>
PrimedSumResult<N> primed_sum_components(Term&& term, const MatsubaraSettings& settings) {
    settings.validate();
    std::array<CompensatedSum, N> acc{};
    CompensatedSum total;

    auto add = [&](const std::array<double, N>& t, double weight) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            acc[i].add(weight * t[i]);
            s += weight * t[i];
        }
        total.add(s);
        return s;
    };

    auto finish = [&](std::int64_t n_used, double last, double previous) {
        PrimedSumResult<N> r;
        for (std::size_t i = 0; i < N; ++i) r.components[i] = acc[i].value();
        r.n_used = n_used;
        double q = previous != 0.0 ? std::abs(last / previous) : 0.0;
        if (!std::isfinite(q)) q = 0.99;
        q = std::clamp(q, 0.0, 0.99);
        r.tail_estimate = std::abs(last) * q / (1.0 - q);
        return r;
    };

    double previous = add(term(std::int64_t{0}), 0.5);
    double last = previous;
    int small = 0;
    for (std::int64_t n = 1; n <= settings.n_max; ++n) {
        previous = last;
        last = add(term(n), 1.0);
        if (std::abs(last) <= settings.rel_tol * std::abs(total.value())) {
            if (++small >= settings.consecutive_small) return finish(n + 1, last, previous);
        } else {
            small = 0;
        }
    }
    const auto partial = finish(settings.n_max + 1, last, previous);
    throw TruncationError("Matsubara sum did not converge within n_max = " +
                              std::to_string(settings.n_max) + " terms",
                          partial.value(), partial.tail_estimate);
}

struct PrimedSum {
    double value = 0.0;
    std::int64_t n_used = 0;
    double tail_estimate = 0.0;
};

PrimedSum primed_sum(const std::function<double(std::int64_t)>& term,
                     const MatsubaraSettings& settings = {});

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (10/21) integration over the finite interval [a, b].
/// Throws ConvergenceError (carrying the best value) if the tolerance
/// max(abs_tol, rel_tol |I|) is not met within max_subdivisions bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSettings& settings = {});

/// Integral over (a, inf) through the map x = a + u/(1-u), u in (0, 1).
QuadratureResult integrate_from(const std::function<double(double)>& f, double a,
                                const QuadratureSettings& settings = {});

/// Integral over (0, inf).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSettings& settings = {});

/// Riemann zeta at s = 2, 3, 4.
double zeta(int s);

}  // namespace casimir
