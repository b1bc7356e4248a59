#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace polyfact {

using complex = std::complex<double>;

/// cos(pi * num / den) for integers, den > 0.
///
/// The argument is reduced exactly in integer arithmetic to [0, pi/4] before
/// calling into libm, so quarter-turn multiples come out exact (cos(pi/2) is 0,
/// not 6e-17) and symmetric angles produce bit-identical magnitudes.
inline double cos_pi_frac(std::int64_t num, std::int64_t den) {
    const std::int64_t period = 2 * den;
    std::int64_t r = num % period;
    if (r < 0)
        r += period;
    if (r > den)
        r = period - r; // cos(2pi - x) = cos(x)
    double sign = 1.0;
    if (2 * r > den) { // cos(pi - x) = -cos(x)
        r = den - r;
        sign = -1.0;
    }
    if (2 * r == den)
        return 0.0;
    if (4 * r > den) // cos(x) = sin(pi/2 - x)
        return sign * std::sin(std::numbers::pi * static_cast<double>(den - 2 * r) /
                               static_cast<double>(2 * den));
    return sign * std::cos(std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

/// sin(pi * num / den) for integers, den > 0.
inline double sin_pi_frac(std::int64_t num, std::int64_t den) {
    return cos_pi_frac(den - 2 * num, 2 * den);
}

/// omega_n^e with omega_n = exp(-2 pi i / n).
inline complex unit_root(std::int64_t n, std::int64_t e) {
    return {cos_pi_frac(2 * e, n), -sin_pi_frac(2 * e, n)};
}

} // namespace polyfact
