#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "casimir/core.hpp"
#include "casimir/dielectric.hpp"

namespace testing_support {

inline double rel_diff(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return xs;
}

// Fixed seed so failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

// eps'' = 0 everywhere and no tail: eps(i xi) = 1, so r = 0 at every frequency.
inline casimir::DielectricModel vacuum() {
    using casimir::OpticalDataTable;
    auto table = std::make_shared<const OpticalDataTable>(
        std::vector<OpticalDataTable::Sample>{{1e10, 0.0}, {1e20, 0.0}});
    return casimir::TabulatedModel{table, {}};
}

// Loss spectrum of a Drude metal, eps''(w) = wp^2 g / (w (w^2 + g^2)).
inline double drude_eps_imag(double omega, double wp, double g) {
    return wp * wp * g / (omega * (omega * omega + g * g));
}

inline casimir::OpticalDataTable synthetic_drude_table(double wp, double g, double lo, double hi, int n) {
    std::vector<casimir::OpticalDataTable::Sample> s;
    for (double w : log_grid(lo, hi, n)) s.push_back({w, drude_eps_imag(w, wp, g)});
    return casimir::OpticalDataTable(std::move(s));
}

}  // namespace testing_support
