#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/reflection.hpp"

namespace casimir::cli {

/// Bad flags, model specs or units; maps to exit code 64.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConvergence = 2;
inline constexpr int kExitUsage = 64;

/// Electron-volt to angular frequency (rad/s).
double ev_to_rad_per_s(double ev);

/// Model aliases: perfect, plasma-gold, drude-gold, drude:WP,GAMMA,
/// plasma:WP, tabulated:PATH[,drude-tail:WP,GAMMA]. With `ev` the numeric
/// frequencies are read in eV.
DielectricModel parse_model(std::string_view spec, bool ev = false);

/// 1D mirrors: perfect or impedance:OMEGA.
Mirror1D parse_mirror(std::string_view spec, bool ev = false);

/// `points` values from lo to hi inclusive, log or linear spacing.
std::vector<double> make_grid(double lo, double hi, int points, std::string_view spacing);

/// Formats with %.10e, the fixed format of every emitted number.
std::string format_number(double x);

/// Number of worker threads: CASIMIR_KIT_THREADS if set (integer >= 1),
/// otherwise the hardware concurrency.
unsigned thread_count();

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
