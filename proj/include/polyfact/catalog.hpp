#pragma once

#include "polyfact/dense.hpp"
#include "polyfact/error.hpp"
#include "polyfact/linalg.hpp"
#include "polyfact/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polyfact {

/// One Chebyshev polynomial C_degree of the given kind.
struct ChebTerm {
    ChebKind kind = ChebKind::first;
    int degree = 0;
    bool operator==(const ChebTerm&) const = default;
};

using PolyEvaluator = std::variant<MonomialPoly, ChebTerm>;

inline complex evaluate(const PolyEvaluator& p, complex x) {
    return std::visit(
        [x](const auto& e) -> complex {
            if constexpr (std::is_same_v<std::decay_t<decltype(e)>, MonomialPoly>)
                return poly_eval(e, x);
            else
                return cheb_eval(e.kind, e.degree, x);
        },
        p);
}

/// Ordered list of polynomials p_0, ..., p_{n-1} spanning C[x]/p(x).
struct PolyBasis {
    std::vector<PolyEvaluator> evaluators;

    std::size_t size() const noexcept { return evaluators.size(); }

    static PolyBasis monomial(std::size_t n) {
        PolyBasis b;
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<complex> c(l + 1);
            c[l] = 1.0;
            b.evaluators.emplace_back(MonomialPoly{std::move(c)});
        }
        return b;
    }

    static PolyBasis chebyshev(ChebKind kind, std::size_t n) {
        PolyBasis b;
        for (std::size_t l = 0; l < n; ++l)
            b.evaluators.emplace_back(ChebTerm{kind, static_cast<int>(l)});
        return b;
    }
};

/// Distinct complex sample points alpha_0..alpha_{n-1}.
class SamplePoints {
public:
    SamplePoints() = default;
    /// Throws invalid_argument unless min |a_k - a_m| > 1e-12 * max |a_k|.
    SamplePoints(std::vector<complex> points) : points_(std::move(points)) {
        double scale = 0.0;
        for (auto p : points_)
            scale = std::max(scale, std::abs(p));
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (std::abs(points_[i] - points_[j]) <= 1e-12 * scale)
                    throw invalid_argument("sample points " + std::to_string(i) + " and " +
                                           std::to_string(j) + " coincide");
    }

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<complex>& points() const noexcept { return points_; }
    complex operator[](std::size_t i) const { return points_[i]; }

    static SamplePoints roots_of_unity(std::size_t n) {
        std::vector<complex> p;
        for (std::size_t k = 0; k < n; ++k)
            p.push_back(unit_root(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
        return p;
    }

private:
    std::vector<complex> points_;
};

/// Per-row basis choices c_k of a scaled polynomial transform.
class ScaleVector {
public:
    ScaleVector() = default;
    ScaleVector(std::vector<complex> c) : c_(std::move(c)) {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] == complex{})
                throw invalid_argument("scale factor " + std::to_string(i) + " is zero");
    }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<complex>& values() const noexcept { return c_; }

private:
    std::vector<complex> c_;
};

/// |points| x |b| matrix [p_l(x_k)]; not required to be square.
inline DenseMatrix evaluate_basis(const PolyBasis& b, std::span<const complex> points) {
    DenseMatrix m(points.size(), b.size());
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l)
            m(k, l) = evaluate(b.evaluators[l], points[k]);
    return m;
}

/// PT_{b,alpha} = [p_l(alpha_k)].
inline DenseMatrix polynomial_transform(const PolyBasis& b, const SamplePoints& alpha) {
    if (b.size() != alpha.size())
        throw invalid_argument("polynomial_transform: basis has " + std::to_string(b.size()) +
                               " elements but there are " + std::to_string(alpha.size()) +
                               " sample points");
    return evaluate_basis(b, alpha.points());
}

/// diag(1/c_0, ..., 1/c_{n-1}) * PT_{b,alpha}.
inline DenseMatrix scaled_polynomial_transform(const PolyBasis& b, const SamplePoints& alpha,
                                               const ScaleVector& c) {
    DenseMatrix m = polynomial_transform(b, alpha);
    if (c.size() != m.rows())
        throw invalid_argument("scaled_polynomial_transform: scale vector length mismatch");
    for (std::size_t k = 0; k < m.rows(); ++k)
        for (std::size_t l = 0; l < m.cols(); ++l)
            m(k, l) /= c.values()[k];
    return m;
}

/// True when the basis evaluated at n fixed generic points is nonsingular.
inline bool basis_is_independent(const PolyBasis& b) {
    const std::size_t n = b.size();
    std::vector<complex> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n, 1));
        pts.push_back(std::polar(0.55 + 0.4 * t, 0.3 + 2.1 * static_cast<double>(k)));
    }
    return numerical_rank(evaluate_basis(b, pts)) == n;
}

// ---------------------------------------------------------------------------
// Named trigonometric transforms

enum class TransformName { dft, dct1, dct2, dct3, dct4, dst1, dst2, dst3, dst4 };

inline std::string to_string(TransformName t) {
    switch (t) {
    case TransformName::dft: return "dft";
    case TransformName::dct1: return "dct1";
    case TransformName::dct2: return "dct2";
    case TransformName::dct3: return "dct3";
    case TransformName::dct4: return "dct4";
    case TransformName::dst1: return "dst1";
    case TransformName::dst2: return "dst2";
    case TransformName::dst3: return "dst3";
    case TransformName::dst4: return "dst4";
    }
    return "?";
}

/// Accepts "dft", "dct1".."dst4" and the roman spellings "dct-i", "DST-IV", ...
inline std::optional<TransformName> parse_transform_name(std::string_view s) {
    std::string key;
    for (char ch : s)
        if (ch != '-' && ch != '_')
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    for (auto [suffix, digit] : {std::pair{"iv", '4'}, {"iii", '3'}, {"ii", '2'}, {"i", '1'}}) {
        const std::string_view sv = suffix;
        if (key.size() == 3 + sv.size() && key.ends_with(sv)) {
            key = key.substr(0, 3) + digit;
            break;
        }
    }
    for (auto t : {TransformName::dft, TransformName::dct1, TransformName::dct2, TransformName::dct3,
                   TransformName::dct4, TransformName::dst1, TransformName::dst2, TransformName::dst3,
                   TransformName::dst4})
        if (key == to_string(t))
            return t;
    return std::nullopt;
}

/// Dense transform matrix from its closed-form entry formula. Sizes follow
/// the usual conventions: DCT-I of size n samples cos(k l pi / (n-1)), DST-I of
/// size n samples sin((k+1)(l+1) pi / (n+1)). Only DST-I accepts n = 0.
inline DenseMatrix named_transform(TransformName name, std::size_t n) {
    if (n == 0 && name != TransformName::dst1)
        throw invalid_argument(to_string(name) + ": size must be at least 1");
    const auto N = static_cast<std::int64_t>(n);
    DenseMatrix m(n, n);
    for (std::int64_t k = 0; k < N; ++k)
        for (std::int64_t l = 0; l < N; ++l) {
            complex v;
            switch (name) {
            case TransformName::dft: v = unit_root(N, (k * l) % N); break;
            case TransformName::dct1: v = N == 1 ? 1.0 : cos_pi_frac(k * l, N - 1); break;
            case TransformName::dst1: v = sin_pi_frac((k + 1) * (l + 1), N + 1); break;
            case TransformName::dct2: v = cos_pi_frac(k * (2 * l + 1), 2 * N); break;
            case TransformName::dst2: v = sin_pi_frac((k + 1) * (2 * l + 1), 2 * N); break;
            case TransformName::dct3: v = cos_pi_frac((2 * k + 1) * l, 2 * N); break;
            case TransformName::dst3: v = sin_pi_frac((2 * k + 1) * (l + 1), 2 * N); break;
            case TransformName::dct4: v = cos_pi_frac((2 * k + 1) * (2 * l + 1), 4 * N); break;
            case TransformName::dst4: v = sin_pi_frac((2 * k + 1) * (2 * l + 1), 4 * N); break;
            }
            m(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) = v;
        }
    return m;
}

/// A named transform expressed as a (scaled) polynomial transform.
struct TransformConstruction {
    PolyBasis basis;
    SamplePoints alpha;
    std::optional<ScaleVector> scale;

    DenseMatrix build() const {
        return scale ? scaled_polynomial_transform(basis, alpha, *scale)
                     : polynomial_transform(basis, alpha);
    }
};

/// Chebyshev-basis construction of each named transform:
///
///   DFT      monomials   at omega_n^k
///   DCT-I    T_l         at cos(k pi/(n-1))
///   DST-I    U_l         at cos((k+1) pi/(n+1)),   c_k = 1/sin((k+1) pi/(n+1))
///   DCT-II   V_l         at cos(k pi/n),           c_k = 1/cos(k pi/2n)
///   DST-II   W_l         at cos((k+1) pi/n),       c_k = 1/sin((k+1) pi/2n)
///   DCT-III  T_l         at zeros of T_n
///   DST-III  U_l         at zeros of T_n,          c_k = 1/sin((k+1/2) pi/n)
///   DCT-IV   V_l         at zeros of T_n,          c_k = 1/cos((k+1/2) pi/2n)
///   DST-IV   W_l         at zeros of T_n,          c_k = 1/sin((k+1/2) pi/2n)
inline TransformConstruction chebyshev_construction(TransformName name, std::size_t n) {
    if (n == 0 && name != TransformName::dst1)
        throw invalid_argument(to_string(name) + ": size must be at least 1");
    const auto N = static_cast<std::int64_t>(n);
    std::vector<complex> pts, c;
    auto each = [&](auto f) {
        for (std::int64_t k = 0; k < N; ++k)
            f(k);
    };
    TransformConstruction out;
    switch (name) {
    case TransformName::dft:
        out.basis = PolyBasis::monomial(n);
        out.alpha = SamplePoints::roots_of_unity(n);
        return out;
    case TransformName::dct1:
        out.basis = PolyBasis::chebyshev(ChebKind::first, n);
        each([&](auto k) { pts.emplace_back(N == 1 ? 1.0 : cos_pi_frac(k, N - 1)); });
        break;
    case TransformName::dst1:
        out.basis = PolyBasis::chebyshev(ChebKind::second, n);
        each([&](auto k) {
            pts.emplace_back(cos_pi_frac(k + 1, N + 1));
            c.emplace_back(1.0 / sin_pi_frac(k + 1, N + 1));
        });
        break;
    case TransformName::dct2:
        out.basis = PolyBasis::chebyshev(ChebKind::third, n);
        each([&](auto k) {
            pts.emplace_back(cos_pi_frac(k, N));
            c.emplace_back(1.0 / cos_pi_frac(k, 2 * N));
        });
        break;
    case TransformName::dst2:
        out.basis = PolyBasis::chebyshev(ChebKind::fourth, n);
        each([&](auto k) {
            pts.emplace_back(cos_pi_frac(k + 1, N));
            c.emplace_back(1.0 / sin_pi_frac(k + 1, 2 * N));
        });
        break;
    case TransformName::dct3:
        out.basis = PolyBasis::chebyshev(ChebKind::first, n);
        pts = cheb_zeros(ChebKind::first, static_cast<int>(n));
        break;
    case TransformName::dst3:
        out.basis = PolyBasis::chebyshev(ChebKind::second, n);
        pts = cheb_zeros(ChebKind::first, static_cast<int>(n));
        each([&](auto k) { c.emplace_back(1.0 / sin_pi_frac(2 * k + 1, 2 * N)); });
        break;
    case TransformName::dct4:
        out.basis = PolyBasis::chebyshev(ChebKind::third, n);
        pts = cheb_zeros(ChebKind::first, static_cast<int>(n));
        each([&](auto k) { c.emplace_back(1.0 / cos_pi_frac(2 * k + 1, 4 * N)); });
        break;
    case TransformName::dst4:
        out.basis = PolyBasis::chebyshev(ChebKind::fourth, n);
        pts = cheb_zeros(ChebKind::first, static_cast<int>(n));
        each([&](auto k) { c.emplace_back(1.0 / sin_pi_frac(2 * k + 1, 4 * N)); });
        break;
    }
    out.alpha = SamplePoints(std::move(pts));
    if (!c.empty())
        out.scale = ScaleVector(std::move(c));
    return out;
}

} // namespace polyfact
