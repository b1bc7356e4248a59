#pragma once

// General-radix fast algorithms written as products of structured operators:
//
//   DFT_{km}     = L^{km}_k (I_m (x) DFT_k) T^{km}_k (DFT_m (x) I_k)
//   DFT_{2km}    = L^{2km}_k (I_{2m} (x) DFT_k) X L^{2km}_{2m} (I_m (+) Z^-1_m (+) I_{2(k-1)m}) D
//                  (DCT-I_{m+1} (+) DST-I_{m-1} (+) I_{k-1} (x) (DCT-II_m (+) DST-II_m)) B
//   DCT-IV_{2km} = K^{2km}_k (K^{2m}_2 (x) DCT-IV_k) Y (DCT-III_m (x) L^{2k}_2) (K^{2km}_{2k})^T
//                  (I_k (x) (1 (+) L^{2(m-1)}_2 (I_{m-1} (x) DFT_2) (+) 1)) (K^{2km}_{2m})^T
//
// B and X are 2-sparse, D is diagonal. Leaf transforms are dense.

#include "polyfact/catalog.hpp"
#include "polyfact/induction.hpp"
#include "polyfact/linop.hpp"
#include "polyfact/trig.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polyfact {

/// "DFT", "DCT-I", ..., "DST-IV".
inline std::string display_name(TransformName t) {
    static constexpr std::string_view roman[] = {"I", "II", "III", "IV"};
    const auto s = to_string(t);
    if (t == TransformName::dft)
        return "DFT";
    std::string out = s.substr(0, 3);
    for (auto& ch : out)
        ch = static_cast<char>(ch - 'a' + 'A');
    return out + "-" + std::string(roman[s[3] - '1']);
}

/// Dense catalog matrix as an operator, labelled e.g. "DCT-II_4".
inline LinOp dense_transform(TransformName t, std::size_t n) {
    return LinOp::dense(named_transform(t, n), display_name(t) + "_" + std::to_string(n));
}

namespace detail {

inline void require_positive(std::size_t k, std::size_t m, const char* what) {
    if (k == 0 || m == 0)
        throw invalid_argument(std::string(what) + ": k and m must be at least 1");
}

inline std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

inline void put(std::vector<LinOp::SparseRow>& rows, std::size_t r, std::size_t c, complex v) {
    auto& row = rows[r];
    if (row.count == 2)
        throw invalid_argument("2-sparse row overflow");
    row.entries[row.count++] = {c, v};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Cooley-Tukey

/// Factors for DFT_{km} with caller-supplied DFT_k and DFT_m realizations.
inline std::vector<LinOp> cooley_tukey_factors(const LinOp& dft_k, const LinOp& dft_m) {
    const std::size_t k = dft_k.rows(), m = dft_m.rows(), n = k * m;
    return {LinOp::stride(n, k), LinOp::tensor(LinOp::identity(m), dft_k, "I_m (x) DFT_k"),
            LinOp::twiddle(n, k), LinOp::tensor(dft_m, LinOp::identity(k), "DFT_m (x) I_k")};
}

inline Factorization cooley_tukey(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "cooley_tukey");
    Factorization f;
    f.target = named_transform(TransformName::dft, k * m);
    f.factors = cooley_tukey_factors(dense_transform(TransformName::dft, k), dense_transform(TransformName::dft, m));
    return f;
}

// ---------------------------------------------------------------------------
// Britanak-Rao

/// B^{2km}_m = (B_0 (+) I_{k-1} (x) B_1) L^{2km}_k, B_0 and B_1 of size 2m.
inline LinOp britanak_rao_B(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "britanak_rao_B");
    const std::size_t n = 2 * k * m, w = 2 * m;
    std::vector<LinOp::SparseRow> rows(n);
    using detail::put;
    // B_0
    put(rows, 0, 0, 1.0);
    for (std::size_t i = 1; i < m; ++i) {
        put(rows, i, i, 1.0);
        put(rows, i, w - i, 1.0);
        put(rows, m + i, i, 1.0);
        put(rows, m + i, w - i, -1.0);
    }
    put(rows, m, m, 1.0);
    // I_{k-1} (x) B_1
    for (std::size_t b = 1; b < k; ++b) {
        const std::size_t o = b * w;
        put(rows, o, o, 1.0);
        put(rows, o, o + 1, 1.0);
        put(rows, o + m, o, -1.0);
        put(rows, o + m, o + 1, 1.0);
        for (std::size_t i = 1; i < m; ++i) {
            put(rows, o + i, o + i + 1, 1.0);
            put(rows, o + i, o + w - i, 1.0);
            put(rows, o + m + i, o + i + 1, 1.0);
            put(rows, o + m + i, o + w - i, -1.0);
        }
    }
    return LinOp::compose({LinOp::two_sparse(n, n, std::move(rows), "B_0 (+) I_{k-1} (x) B_1"), LinOp::stride(n, k)},
                          "B");
}

/// X^{2km}_m. Row blocks (sizes k, (m-1)k, k, (m-1)k):
///
///     [ I_k                                          ]
///     [      (+)_{j<m} C_j      (+)_{j<m} D_j        ]
///     [                                          F   ]
///     [      (/)_{j>m} C_j      (/)_{j>m} D_j        ]
///
/// where (/) is the block anti-diagonal sum over j = m+1 .. 2m-1.
inline LinOp britanak_rao_X(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "britanak_rao_X");
    using detail::i64;
    const std::size_t n = 2 * k * m;
    const std::size_t c_cols = k, d_cols = k + (m - 1) * k, f_cols = k + 2 * (m - 1) * k;
    auto c_entry = [&](std::size_t j, std::size_t l) -> complex {
        if (l == 0)
            return 1.0;
        return unit_root(i64(n), i64(j * l)) * (unit_root(i64(2 * m), i64(j)) + 1.0) / 2.0;
    };
    auto d_entry = [&](std::size_t j, std::size_t l) -> complex {
        if (l == 0)
            return (unit_root(i64(2 * m), i64(j)) - unit_root(i64(2 * m), -i64(j))) / 2.0;
        return unit_root(i64(n), i64(j * l)) * (unit_root(i64(2 * m), i64(j)) - 1.0) / 2.0;
    };

    std::vector<LinOp::SparseRow> rows(n);
    using detail::put;
    for (std::size_t i = 0; i < k; ++i)
        put(rows, i, i, 1.0);
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t l = 0; l < k; ++l) {
            const std::size_t r = k + (j - 1) * k + l;
            put(rows, r, c_cols + (j - 1) * k + l, c_entry(j, l));
            put(rows, r, d_cols + (j - 1) * k + l, d_entry(j, l));
        }
    const std::size_t f_rows = k + (m - 1) * k;
    for (std::size_t l = 0; l < k; ++l)
        put(rows, f_rows + l, f_cols + l, l == 0 ? complex{1.0} : -unit_root(i64(2 * k), i64(l)));
    const std::size_t tail_rows = f_rows + k;
    for (std::size_t b = 0; b + 1 < m; ++b) { // block b holds C_{m+1+b}, D_{m+1+b}
        const std::size_t j = m + 1 + b, col_block = m - 2 - b;
        for (std::size_t l = 0; l < k; ++l) {
            const std::size_t r = tail_rows + b * k + l;
            put(rows, r, c_cols + col_block * k + l, c_entry(j, l));
            put(rows, r, d_cols + col_block * k + l, d_entry(j, l));
        }
    }
    return LinOp::two_sparse(n, n, std::move(rows), "X");
}

/// D^{2km}_m = I_{m+1} (+) diag(1/sin((j+1)pi/m))_{j<m-1}
///             (+) I_{k-1} (x) (diag(1/cos(j pi/2m))_{j<m} (+) diag(1/sin((j+1)pi/2m))_{j<m})
inline LinOp britanak_rao_D(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "britanak_rao_D");
    using detail::i64;
    std::vector<complex> d(m + 1, 1.0);
    for (std::size_t j = 0; j + 1 < m; ++j)
        d.emplace_back(1.0 / sin_pi_frac(i64(j + 1), i64(m)));
    for (std::size_t b = 1; b < k; ++b) {
        for (std::size_t j = 0; j < m; ++j)
            d.emplace_back(1.0 / cos_pi_frac(i64(j), i64(2 * m)));
        for (std::size_t j = 0; j < m; ++j)
            d.emplace_back(1.0 / sin_pi_frac(i64(j + 1), i64(2 * m)));
    }
    return LinOp::diagonal(std::move(d), "D");
}

/// DCT-I_{m+1} (+) DST-I_{m-1} (+) I_{k-1} (x) (DCT-II_m (+) DST-II_m), dense leaves.
inline LinOp britanak_rao_middle(std::size_t k, std::size_t m) {
    std::vector<LinOp> blocks{dense_transform(TransformName::dct1, m + 1), dense_transform(TransformName::dst1, m - 1)};
    if (k > 1)
        blocks.push_back(LinOp::tensor(
            LinOp::identity(k - 1),
            LinOp::direct_sum({dense_transform(TransformName::dct2, m), dense_transform(TransformName::dst2, m)})));
    return LinOp::direct_sum(std::move(blocks), "DCT/DST stage");
}

inline std::vector<LinOp> britanak_rao_factors(std::size_t k, std::size_t m, const LinOp& dft_k) {
    const std::size_t n = 2 * k * m;
    return {LinOp::stride(n, k),
            LinOp::tensor(LinOp::identity(2 * m), dft_k, "I_2m (x) DFT_k"),
            britanak_rao_X(k, m),
            LinOp::stride(n, 2 * m),
            LinOp::direct_sum({LinOp::identity(m), LinOp::circular_shift(m, -1), LinOp::identity(2 * (k - 1) * m)},
                              "I_m (+) Z^-1_m (+) I"),
            britanak_rao_D(k, m),
            britanak_rao_middle(k, m),
            britanak_rao_B(k, m)};
}

inline Factorization britanak_rao(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "britanak_rao");
    Factorization f;
    f.target = named_transform(TransformName::dft, 2 * k * m);
    f.factors = britanak_rao_factors(k, m, dense_transform(TransformName::dft, k));
    return f;
}

/// The same algebra, coset structure and bases handed to the general
/// induction engine: generator (x^k + x^-k)/2 on C[x]/(x^{2km} - 1), cosets
/// 1, (x^k - x^-k)/2, x^j (x^k + 1)/2, x^j (x^k - 1)/2 with T, U, V, W bases.
inline InductionSpec britanak_rao_induction_spec(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "britanak_rao_induction_spec");
    const std::size_t n = 2 * k * m;
    auto monomial = [n](std::initializer_list<std::pair<std::size_t, double>> terms) {
        std::vector<complex> c(n);
        for (auto [e, v] : terms)
            c[e % n] += v;
        return MonomialPoly(std::move(c));
    };
    InductionSpec s;
    s.alpha = SamplePoints::roots_of_unity(n);
    s.generator = monomial({{k, 0.5}, {n - k, 0.5}});
    s.transversal = {monomial({{0, 1.0}}), monomial({{k, 0.5}, {n - k, -0.5}})};
    s.coset_bases = {BasisFamily{ChebKind::first}, BasisFamily{ChebKind::second}};
    for (std::size_t j = 1; j < k; ++j) {
        s.transversal.push_back(monomial({{j + k, 0.5}, {j, 0.5}}));
        s.transversal.push_back(monomial({{j + k, 0.5}, {j, -0.5}}));
        s.coset_bases.emplace_back(BasisFamily{ChebKind::third});
        s.coset_bases.emplace_back(BasisFamily{ChebKind::fourth});
    }
    return s;
}

// ---------------------------------------------------------------------------
// Wang DCT-IV

/// Skew parameters r^(i) = (2i+1)/4m and the per-row values r^(i)_j, j < k:
/// (r + 2j)/k for even j, (2 - r + 2j)/k for odd j, and for odd k the last
/// entry replaced by (r - 1)/k + 1.
struct SkewParams {
    std::size_t i = 0;
    double r_i = 0.0;
    std::vector<double> r_ij;
};

inline SkewParams skew_params(std::size_t i, std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "skew_params");
    SkewParams p;
    p.i = i;
    p.r_i = static_cast<double>(2 * i + 1) / static_cast<double>(4 * m);
    const double kd = static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double jd = static_cast<double>(j);
        p.r_ij.push_back(j % 2 == 0 ? (p.r_i + 2 * jd) / kd : (2 - p.r_i + 2 * jd) / kd);
    }
    if (k % 2 == 1)
        p.r_ij.back() = (p.r_i - 1) / kd + 1;
    return p;
}

/// X^(C4)_k(r) with (1 - 2r) = s / (2m): c_l on the diagonal and s_{k-1-l} on
/// the anti-diagonal, where c_l, s_l take the angle s (2l+1) pi / (8km). For
/// odd k both diagonals meet in the centre entry and add.
inline DenseMatrix skew_rotation(std::size_t k, std::int64_t s, std::size_t m) {
    const auto den = detail::i64(8 * k * m);
    DenseMatrix x(k, k);
    for (std::size_t l = 0; l < k; ++l) {
        const std::size_t a = k - 1 - l;
        x(l, l) += cos_pi_frac(s * detail::i64(2 * l + 1), den);
        x(l, a) += sin_pi_frac(s * detail::i64(2 * a + 1), den);
    }
    return x;
}

/// Y^{2km}_m = (+)_{j<m} [[X(r_j), (-1)^j J X(1 - r_j)], [X(1 - r_j), (-1)^{j+1} J X(r_j)]].
inline LinOp wang_Y(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "wang_Y");
    std::vector<LinOp> blocks;
    for (std::size_t j = 0; j < m; ++j) {
        const std::int64_t s = detail::i64(2 * m) - detail::i64(2 * j + 1); // (1 - 2 r_j) * 2m
        const DenseMatrix xr = skew_rotation(k, s, m), xq = skew_rotation(k, -s, m);
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        DenseMatrix b(2 * k, 2 * k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                b(r, c) = xr(r, c);
                b(r, k + c) = sign * xq(k - 1 - r, c);
                b(k + r, c) = xq(r, c);
                b(k + r, k + c) = -sign * xr(k - 1 - r, c);
            }
        blocks.push_back(LinOp::dense(std::move(b), "Y_" + std::to_string(j)));
    }
    return LinOp::direct_sum(std::move(blocks), "Y");
}

/// 1 (+) L^{2(m-1)}_2 (I_{m-1} (x) DFT_2) (+) 1; I_2 when m = 1.
inline LinOp wang_ladder(std::size_t m) {
    if (m == 1)
        return LinOp::identity(2);
    const std::size_t w = 2 * (m - 1);
    const auto inner = LinOp::compose(
        {LinOp::stride(w, 2), LinOp::tensor(LinOp::identity(m - 1), dense_transform(TransformName::dft, 2))});
    return LinOp::direct_sum({LinOp::identity(1), inner, LinOp::identity(1)}, "DFT_2 ladder");
}

inline std::vector<LinOp> wang_factors(std::size_t k, std::size_t m, const LinOp& dct4_k, const LinOp& dct3_m) {
    const std::size_t n = 2 * k * m;
    return {LinOp::perm_k(n, k),
            LinOp::tensor(LinOp::perm_k(2 * m, 2), dct4_k, "K^2m_2 (x) DCT-IV_k"),
            wang_Y(k, m),
            LinOp::tensor(dct3_m, LinOp::stride(2 * k, 2), "DCT-III_m (x) L^2k_2"),
            op_transpose(LinOp::perm_k(n, 2 * k)),
            LinOp::tensor(LinOp::identity(k), wang_ladder(m), "I_k (x) ladder"),
            op_transpose(LinOp::perm_k(n, 2 * m))};
}

inline Factorization wang_dct4(std::size_t k, std::size_t m) {
    detail::require_positive(k, m, "wang_dct4");
    Factorization f;
    f.target = named_transform(TransformName::dct4, 2 * k * m);
    f.factors = wang_factors(k, m, dense_transform(TransformName::dct4, k), dense_transform(TransformName::dct3, m));
    return f;
}

// ---------------------------------------------------------------------------
// Recursive plans

enum class Algorithm { cooley_tukey, britanak_rao, wang_dct4 };

inline std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::cooley_tukey: return "cooley-tukey";
    case Algorithm::britanak_rao: return "britanak-rao";
    case Algorithm::wang_dct4: return "wang";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (auto a : {Algorithm::cooley_tukey, Algorithm::britanak_rao, Algorithm::wang_dct4})
        if (s == to_string(a))
            return a;
    if (s == "wang-dct4")
        return Algorithm::wang_dct4;
    return std::nullopt;
}

/// Transform computed by each algorithm.
inline TransformName target_transform(Algorithm a) {
    return a == Algorithm::wang_dct4 ? TransformName::dct4 : TransformName::dft;
}

inline Factorization factorize(Algorithm a, std::size_t k, std::size_t m) {
    switch (a) {
    case Algorithm::cooley_tukey: return cooley_tukey(k, m);
    case Algorithm::britanak_rao: return britanak_rao(k, m);
    case Algorithm::wang_dct4: return wang_dct4(k, m);
    }
    throw invalid_argument("unknown algorithm");
}

inline std::size_t smallest_prime_factor(std::size_t n) {
    if (n < 2)
        return n;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return p;
    return n;
}

struct Split {
    std::size_t n, k, m;
};

/// Splits from the root down; only the DFT_m branch of Cooley-Tukey recurses,
/// so the tree is a chain. Every other block is a dense leaf.
struct RadixPlan {
    Algorithm algorithm = Algorithm::cooley_tukey;
    std::size_t n = 0;
    std::size_t leaf_threshold = 2;
    std::vector<Split> splits;
    LinOp op;

    std::size_t depth() const noexcept { return splits.size(); }
};

namespace detail {

inline LinOp build_cooley_tukey(std::size_t n, std::size_t threshold, std::vector<Split>& splits) {
    const std::size_t k = smallest_prime_factor(n);
    // A prime size cannot be split further and stays a dense leaf.
    if (n <= threshold || k == n)
        return dense_transform(TransformName::dft, n);
    const std::size_t m = n / k;
    splits.push_back({n, k, m});
    const auto inner = build_cooley_tukey(m, threshold, splits);
    return LinOp::compose(cooley_tukey_factors(dense_transform(TransformName::dft, k), inner),
                          "DFT_" + std::to_string(n));
}

} // namespace detail

/// Default policy: the smallest prime factor of n (Cooley-Tukey) or of n/2
/// (Britanak-Rao, Wang) becomes the radix k.
inline RadixPlan build_plan(Algorithm algorithm, std::size_t n, std::size_t leaf_threshold = 2) {
    if (n == 0)
        throw invalid_argument("build_plan: size must be at least 1");
    RadixPlan p;
    p.algorithm = algorithm;
    p.n = n;
    p.leaf_threshold = leaf_threshold;
    const auto name = target_transform(algorithm);
    if (n <= leaf_threshold) {
        p.op = dense_transform(name, n);
        return p;
    }
    switch (algorithm) {
    case Algorithm::cooley_tukey:
        if (smallest_prime_factor(n) == n)
            throw invalid_argument("build_plan: DFT size " + std::to_string(n) +
                                   " is prime and exceeds the leaf threshold");
        p.op = detail::build_cooley_tukey(n, leaf_threshold, p.splits);
        break;
    case Algorithm::britanak_rao:
    case Algorithm::wang_dct4: {
        if (n % 2 != 0)
            throw invalid_argument("build_plan: " + to_string(algorithm) + " needs an even size, got " +
                                   std::to_string(n));
        const std::size_t half = n / 2;
        const std::size_t k = std::max<std::size_t>(1, smallest_prime_factor(half)), m = half / k;
        p.splits.push_back({n, k, m});
        const auto factors = algorithm == Algorithm::britanak_rao
                                 ? britanak_rao_factors(k, m, dense_transform(TransformName::dft, k))
                                 : wang_factors(k, m, dense_transform(TransformName::dct4, k),
                                                dense_transform(TransformName::dct3, m));
        p.op = LinOp::compose(factors, display_name(name) + "_" + std::to_string(n));
        break;
    }
    }
    return p;
}

inline std::vector<complex> plan_apply(const RadixPlan& plan, std::span<const complex> x) {
    return op_apply(plan.op, x);
}

inline CostReport plan_cost(const RadixPlan& plan) { return op_cost(plan.op); }

} // namespace polyfact
