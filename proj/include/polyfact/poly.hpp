#pragma once

#include "polyfact/trig.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

namespace polyfact {

/// The four Chebyshev families. All satisfy C_{k+1} = 2x C_k - C_{k-1};
/// they differ only in the seed pair (C_0, C_1).
enum class ChebKind {
    first,  ///< T: (1, x)
    second, ///< U: (1, 2x)
    third,  ///< V: (1, 2x - 1)
    fourth, ///< W: (1, 2x + 1)
};

constexpr std::string_view cheb_letter(ChebKind kind) {
    switch (kind) {
    case ChebKind::first: return "T";
    case ChebKind::second: return "U";
    case ChebKind::third: return "V";
    case ChebKind::fourth: return "W";
    }
    return "?";
}

/// Seed pair (C_0(x), C_1(x)).
inline std::pair<complex, complex> cheb_seed(ChebKind kind, complex x) {
    switch (kind) {
    case ChebKind::first: return {1.0, x};
    case ChebKind::second: return {1.0, 2.0 * x};
    case ChebKind::third: return {1.0, 2.0 * x - 1.0};
    case ChebKind::fourth: return {1.0, 2.0 * x + 1.0};
    }
    return {1.0, x};
}

/// Polynomial in the monomial basis: coeffs[l] multiplies x^l.
struct MonomialPoly {
    std::vector<complex> coeffs;

    MonomialPoly() = default;
    MonomialPoly(std::vector<complex> c) : coeffs(std::move(c)) {}
    MonomialPoly(std::initializer_list<complex> c) : coeffs(c) {}

    /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
    int degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != complex{})
                return static_cast<int>(i);
        return -1;
    }

    bool operator==(const MonomialPoly&) const = default;
};

/// Horner evaluation.
inline complex poly_eval(const MonomialPoly& p, complex x) {
    complex acc{};
    for (std::size_t i = p.coeffs.size(); i-- > 0;)
        acc = acc * x + p.coeffs[i];
    return acc;
}

/// C_n(x) by the forward three-term recurrence. Negative n follows the
/// symmetry relations T_{-n}=T_n, U_{-n}=-U_{n-2}, V_{-n}=V_{n-1},
/// W_{-n}=-W_{n-1}; the degenerate U_{-1} is 0.
inline complex cheb_eval(ChebKind kind, int n, complex x) {
    if (n < 0) {
        const int p = -n;
        switch (kind) {
        case ChebKind::first: return cheb_eval(kind, p, x);
        case ChebKind::second: return p == 1 ? complex{} : -cheb_eval(kind, p - 2, x);
        case ChebKind::third: return cheb_eval(kind, p - 1, x);
        case ChebKind::fourth: return -cheb_eval(kind, p - 1, x);
        }
    }
    auto [c0, c1] = cheb_seed(kind, x);
    if (n == 0)
        return c0;
    for (int k = 1; k < n; ++k) {
        const complex next = 2.0 * x * c1 - c0;
        c0 = c1;
        c1 = next;
    }
    return c1;
}

/// Zeros of C_n in order of increasing k (hence decreasing value).
inline std::vector<complex> cheb_zeros(ChebKind kind, int n) {
    std::vector<complex> z;
    if (n <= 0)
        return z;
    z.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        switch (kind) {
        case ChebKind::first: z.emplace_back(cos_pi_frac(2 * k + 1, 2 * std::int64_t{n})); break;
        case ChebKind::second: z.emplace_back(cos_pi_frac(k + 1, std::int64_t{n} + 1)); break;
        case ChebKind::third: z.emplace_back(cos_pi_frac(2 * k + 1, 2 * std::int64_t{n} + 1)); break;
        case ChebKind::fourth: z.emplace_back(cos_pi_frac(2 * k + 2, 2 * std::int64_t{n} + 1)); break;
        }
    }
    return z;
}

// Coefficient-list arithmetic, used to spell transversal elements such as
// W_j(x) (V_{2k-1}(x) - V_{2k}(x)) / 2 as monomial polynomials.

inline MonomialPoly poly_add(const MonomialPoly& a, const MonomialPoly& b) {
    std::vector<complex> c(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
        c[i] += b.coeffs[i];
    return c;
}

inline MonomialPoly poly_scale(const MonomialPoly& a, complex s) {
    std::vector<complex> c(a.coeffs);
    for (auto& v : c)
        v *= s;
    return c;
}

inline MonomialPoly poly_mul(const MonomialPoly& a, const MonomialPoly& b) {
    if (a.coeffs.empty() || b.coeffs.empty())
        return {};
    std::vector<complex> c(a.coeffs.size() + b.coeffs.size() - 1);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return c;
}

/// Monomial coefficients of C_n(x), n >= 0.
inline MonomialPoly cheb_monomial(ChebKind kind, int n) {
    MonomialPoly c0{1.0};
    MonomialPoly c1;
    switch (kind) {
    case ChebKind::first: c1 = {0.0, 1.0}; break;
    case ChebKind::second: c1 = {0.0, 2.0}; break;
    case ChebKind::third: c1 = {-1.0, 2.0}; break;
    case ChebKind::fourth: c1 = {1.0, 2.0}; break;
    }
    if (n == 0)
        return c0;
    const MonomialPoly two_x{0.0, 2.0};
    for (int k = 1; k < n; ++k) {
        MonomialPoly next = poly_add(poly_mul(two_x, c1), poly_scale(c0, -1.0));
        c0 = std::move(c1);
        c1 = std::move(next);
    }
    return c1;
}

} // namespace polyfact
