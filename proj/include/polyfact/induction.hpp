#pragma once

// Factorization of polynomial transforms by inducing from a subalgebra.
//
// For sample points alpha and a generator r(x), the subalgebra <r(x)> of
// C[x]/p(x) has spectrum beta = r(alpha). Choosing transversal elements
// t_0..t_{L-1} splits C[x]/p(x) into cosets t_l(x)<r(x)>, and the transform
// factors as
//
//     PT_{b,alpha} = (D_0 M_0 | ... | D_{L-1} M_{L-1}) . (+)_l PT_{b^(l),beta^(l)} . B
//
// with D_l = diag(t_l(alpha)), M_l the 0/1 matrix matching alpha to beta^(l),
// and B the change of basis from b to the concatenated coset bases.

#include "polyfact/catalog.hpp"
#include "polyfact/dense.hpp"
#include "polyfact/error.hpp"
#include "polyfact/linalg.hpp"
#include "polyfact/linop.hpp"
#include "polyfact/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polyfact {

/// Relative equality scale shared by spectrum deduplication and the
/// annihilation test: |a - b| <= 1e-9 * (1 + scale).
inline constexpr double spectrum_tolerance = 1e-9;

struct SubalgebraSpectrum {
    std::vector<complex> beta;          ///< distinct values of r(alpha), first-occurrence order
    std::vector<std::size_t> index_map; ///< r(alpha_k) == beta[index_map[k]]

    std::size_t dimension() const noexcept { return beta.size(); }
};

struct CosetSpectrum {
    std::vector<complex> beta_prime;        ///< sublist of beta, in beta's order
    std::vector<std::size_t> beta_indices;  ///< positions of beta_prime inside beta
    std::vector<bool> alive;                ///< alive[k]: t(alpha_k) is nonzero

    std::size_t m_ell() const noexcept { return beta_prime.size(); }
};

inline SubalgebraSpectrum subalgebra_spectrum(const MonomialPoly& r, const SamplePoints& alpha) {
    std::vector<complex> image;
    double scale = 0.0;
    for (auto a : alpha.points()) {
        image.push_back(poly_eval(r, a));
        scale = std::max(scale, std::abs(image.back()));
    }
    const double tol = spectrum_tolerance * (1.0 + scale);
    SubalgebraSpectrum s;
    for (auto v : image) {
        std::size_t j = 0;
        while (j < s.beta.size() && std::abs(v - s.beta[j]) > tol)
            ++j;
        if (j == s.beta.size())
            s.beta.push_back(v);
        s.index_map.push_back(j);
    }
    return s;
}

/// Numerical rank of the n x n matrix [r(alpha_k)^l]; equals the subalgebra
/// dimension.
inline std::size_t subalgebra_rank_check(const MonomialPoly& r, const SamplePoints& alpha) {
    const std::size_t n = alpha.size();
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const complex v = poly_eval(r, alpha[k]);
        complex p = 1.0;
        for (std::size_t l = 0; l < n; ++l, p *= v)
            m(k, l) = p;
    }
    return numerical_rank(m);
}

inline CosetSpectrum coset_spectrum(const MonomialPoly& t, const MonomialPoly& r, const SamplePoints& alpha) {
    const auto sub = subalgebra_spectrum(r, alpha);
    std::vector<complex> tv;
    double scale = 0.0;
    for (auto a : alpha.points()) {
        tv.push_back(poly_eval(t, a));
        scale = std::max(scale, std::abs(tv.back()));
    }
    const double tol = spectrum_tolerance * (1.0 + scale);
    CosetSpectrum c;
    std::vector<bool> hit(sub.beta.size(), false);
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        c.alive.push_back(std::abs(tv[k]) > tol);
        if (c.alive.back())
            hit[sub.index_map[k]] = true;
    }
    for (std::size_t j = 0; j < sub.beta.size(); ++j)
        if (hit[j]) {
            c.beta_prime.push_back(sub.beta[j]);
            c.beta_indices.push_back(j);
        }
    return c;
}

// ---------------------------------------------------------------------------
// Specs

/// A basis family sized on demand: monomials, or C_0..C_{n-1} of one kind.
struct BasisFamily {
    std::optional<ChebKind> chebyshev;

    PolyBasis make(std::size_t n) const {
        return chebyshev ? PolyBasis::chebyshev(*chebyshev, n) : PolyBasis::monomial(n);
    }
};

using BasisChoice = std::variant<BasisFamily, PolyBasis>;

inline PolyBasis resolve_basis(const BasisChoice& choice, std::size_t n, const std::string& what) {
    if (const auto* f = std::get_if<BasisFamily>(&choice))
        return f->make(n);
    const auto& b = std::get<PolyBasis>(choice);
    if (b.size() != n)
        throw invalid_argument(what + ": expected " + std::to_string(n) + " basis polynomials, got " +
                               std::to_string(b.size()));
    return b;
}

struct InductionSpec {
    SamplePoints alpha;
    BasisChoice basis = BasisFamily{};
    MonomialPoly generator;
    std::vector<MonomialPoly> transversal;
    /// One entry per transversal element; missing or nullopt means monomials in y.
    std::vector<std::optional<BasisChoice>> coset_bases;

    PolyBasis algebra_basis() const { return resolve_basis(basis, alpha.size(), "basis"); }

    PolyBasis coset_basis(std::size_t l, std::size_t m) const {
        if (l < coset_bases.size() && coset_bases[l])
            return resolve_basis(*coset_bases[l], m, "coset basis " + std::to_string(l));
        return PolyBasis::monomial(m);
    }
};

struct TransversalDiagnostics {
    bool valid = false;
    std::size_t n = 0;
    std::vector<std::size_t> m_ell; ///< coset dimensions
    std::size_t sum_m = 0;
    std::size_t rank = 0;
    double sigma_min = 0.0;
    DenseMatrix m_prime; ///< (D_0 B_0 | ... ) with B_l = [r(alpha_k)^j], j < m_l

    std::string summary() const {
        std::string s = "sum of coset dimensions " + std::to_string(sum_m) + " (n = " + std::to_string(n) +
                        "), rank " + std::to_string(rank) + ", smallest singular value ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", sigma_min);
        return s + buf;
    }
};

/// Thrown by the factorization routines when the transversal does not
/// decompose the algebra.
class transversal_error : public polyfact_error {
public:
    explicit transversal_error(TransversalDiagnostics d)
        : polyfact_error("transversal check failed: " + d.summary()), diag_(std::move(d)) {}
    const TransversalDiagnostics& diagnostics() const noexcept { return diag_; }

private:
    TransversalDiagnostics diag_;
};

inline TransversalDiagnostics transversal_check(const InductionSpec& spec) {
    const std::size_t n = spec.alpha.size();
    TransversalDiagnostics d;
    d.n = n;
    std::vector<complex> rv;
    for (auto a : spec.alpha.points())
        rv.push_back(poly_eval(spec.generator, a));
    for (const auto& t : spec.transversal)
        d.m_ell.push_back(coset_spectrum(t, spec.generator, spec.alpha).m_ell());
    for (auto m : d.m_ell)
        d.sum_m += m;

    d.m_prime = DenseMatrix(n, d.sum_m);
    std::size_t off = 0;
    for (std::size_t l = 0; l < spec.transversal.size(); ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            const complex tv = poly_eval(spec.transversal[l], spec.alpha[k]);
            complex p = 1.0;
            for (std::size_t j = 0; j < d.m_ell[l]; ++j, p *= rv[k])
                d.m_prime(k, off + j) = tv * p;
        }
        off += d.m_ell[l];
    }
    const auto s = singular_values(d.m_prime);
    d.sigma_min = s.empty() ? 0.0 : s.back();
    d.rank = numerical_rank(d.m_prime);
    d.valid = d.sum_m == n && d.rank == n;
    return d;
}

// ---------------------------------------------------------------------------
// Factorizations

struct Factorization {
    DenseMatrix target;
    std::vector<LinOp> factors;
    std::vector<std::string> warnings;

    DenseMatrix product() const {
        DenseMatrix p = op_to_dense(factors.front());
        for (std::size_t i = 1; i < factors.size(); ++i)
            p = p * op_to_dense(factors[i]);
        return p;
    }

    double reconstruction_error() const { return relative_error(product(), target); }

    /// All factors as one operator, for matrix-free application.
    LinOp as_operator() const { return LinOp::compose(factors); }
};

inline constexpr double base_change_condition_limit = 1e8;

/// Three factors: "M-part", "PT direct sum", "base change B".
inline Factorization induction_factorize(const InductionSpec& spec) {
    auto diag = transversal_check(spec);
    if (!diag.valid)
        throw transversal_error(std::move(diag));

    const std::size_t n = spec.alpha.size();
    const auto b = spec.algebra_basis();
    const auto sub = subalgebra_spectrum(spec.generator, spec.alpha);
    std::vector<complex> rv;
    for (auto a : spec.alpha.points())
        rv.push_back(poly_eval(spec.generator, a));

    std::vector<LinOp> m_blocks, pt_blocks;
    DenseMatrix b_prime(n, n);
    std::size_t off = 0;
    for (std::size_t l = 0; l < spec.transversal.size(); ++l) {
        const auto& t = spec.transversal[l];
        const auto cs = coset_spectrum(t, spec.generator, spec.alpha);
        const std::size_t m = cs.m_ell();
        const auto cb = spec.coset_basis(l, m);

        std::vector<complex> tv;
        std::vector<LinOp::SparseRow> rows(n);
        for (std::size_t k = 0; k < n; ++k) {
            tv.push_back(poly_eval(t, spec.alpha[k]));
            const auto it = std::find(cs.beta_indices.begin(), cs.beta_indices.end(), sub.index_map[k]);
            if (it != cs.beta_indices.end()) {
                rows[k].count = 1;
                rows[k].entries[0] = {static_cast<std::size_t>(it - cs.beta_indices.begin()), 1.0};
            }
        }
        const std::string ls = std::to_string(l);
        m_blocks.push_back(LinOp::compose({LinOp::diagonal(tv, "D_" + ls), LinOp::two_sparse(n, m, rows, "M_" + ls)},
                                          "D_" + ls + " M_" + ls));
        pt_blocks.push_back(LinOp::dense(evaluate_basis(cb, cs.beta_prime), "PT_{b^(" + ls + "),beta^(" + ls + ")}"));

        // Coset basis pulled back to x: t_l(x) * b^(l)_j(r(x)).
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < m; ++j)
                b_prime(k, off + j) = tv[k] * evaluate(cb.evaluators[j], rv[k]);
        off += m;
    }

    Factorization f;
    f.target = polynomial_transform(b, spec.alpha);
    const double cond = condition_number(b_prime);
    if (!(cond <= base_change_condition_limit)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "base change solve is ill-conditioned (condition number %.3e)", cond);
        f.warnings.emplace_back(buf);
    }
    f.factors.push_back(LinOp::column_concat(std::move(m_blocks), "M-part"));
    f.factors.push_back(LinOp::direct_sum(std::move(pt_blocks), "PT direct sum"));
    f.factors.push_back(LinOp::dense(solve(b_prime, f.target), "base change B"));
    return f;
}

struct OnesCountReport {
    bool holds = false;
    std::size_t ones = 0;
    std::size_t zeros = 0;
    std::vector<std::size_t> column_ones;   ///< c_j: points mapping to beta_j
    std::vector<std::size_t> column_cosets; ///< number of cosets whose spectrum contains beta_j
};

/// The n x m matrix M matching alpha to beta has exactly n ones, and column j
/// occurs in exactly c_j of the M_l, c_j being its number of ones.
inline OnesCountReport ones_count_check(const InductionSpec& spec) {
    const auto sub = subalgebra_spectrum(spec.generator, spec.alpha);
    const std::size_t n = spec.alpha.size(), m = sub.dimension();
    OnesCountReport r;
    r.column_ones.assign(m, 0);
    r.column_cosets.assign(m, 0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < m; ++j) {
            if (sub.index_map[k] == j) {
                ++r.ones;
                ++r.column_ones[j];
            } else {
                ++r.zeros;
            }
        }
    for (const auto& t : spec.transversal)
        for (auto j : coset_spectrum(t, spec.generator, spec.alpha).beta_indices)
            ++r.column_cosets[j];
    r.holds = r.ones == n && r.zeros == n * (m - 1) && r.column_ones == r.column_cosets;
    return r;
}

/// Decomposition for p(x) = q(r(x)) with deg r = k and deg q = m:
///
///     PT_{b,alpha} = P^-1 ((+)_j PT_{t,gamma^(j)}) L^n_m (I_k (x) PT_{c,beta}) B
///
/// gamma^(j) are the points with r(alpha) = beta_j, P reorders alpha into the
/// concatenated gamma lists and B changes basis from b to t_i(x) c_j(r(x)).
/// alpha fixes the row order of the target and must hold the n roots of p.
inline Factorization decomposition_factorize(const MonomialPoly& q, const MonomialPoly& r, const PolyBasis& b,
                                             const PolyBasis& c, const PolyBasis& t, const SamplePoints& alpha) {
    const std::size_t n = alpha.size();
    if (b.size() != n)
        throw invalid_argument("decomposition: basis b has " + std::to_string(b.size()) + " elements for " +
                               std::to_string(n) + " points");
    const auto sub = subalgebra_spectrum(r, alpha);
    const std::size_t m = sub.dimension();
    if (q.degree() != static_cast<int>(m))
        throw invalid_argument("decomposition: deg q = " + std::to_string(q.degree()) + " but r(alpha) has " +
                               std::to_string(m) + " distinct values");
    double qscale = 0.0;
    for (auto v : q.coeffs)
        qscale = std::max(qscale, std::abs(v));
    for (auto beta : sub.beta)
        if (std::abs(poly_eval(q, beta)) > 1e-8 * (1.0 + qscale) * std::pow(1.0 + std::abs(beta), m))
            throw invalid_argument("decomposition: q does not vanish on r(alpha)");

    std::vector<std::vector<std::size_t>> groups(m);
    for (std::size_t k = 0; k < n; ++k)
        groups[sub.index_map[k]].push_back(k);
    const std::size_t k = groups.empty() ? 0 : groups.front().size();
    for (const auto& g : groups)
        if (g.size() != k)
            throw invalid_argument("decomposition: fibres of r over beta have unequal sizes");
    if (t.size() != k || c.size() != m)
        throw invalid_argument("decomposition: expected |t| = " + std::to_string(k) + " and |c| = " +
                               std::to_string(m));

    // P^-1 sends position j*k + s of the gamma order back to alpha index groups[j][s].
    std::vector<LinOp::SparseRow> pinv(n);
    std::vector<LinOp> gamma_blocks;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<complex> gamma;
        for (std::size_t s = 0; s < k; ++s) {
            pinv[groups[j][s]].count = 1;
            pinv[groups[j][s]].entries[0] = {j * k + s, 1.0};
            gamma.push_back(alpha[groups[j][s]]);
        }
        gamma_blocks.push_back(LinOp::dense(evaluate_basis(t, gamma), "PT_{t,gamma^(" + std::to_string(j) + ")}"));
    }

    DenseMatrix b_prime(n, n);
    for (std::size_t row = 0; row < n; ++row) {
        const complex rv = poly_eval(r, alpha[row]);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < m; ++j)
                b_prime(row, i * m + j) = evaluate(t.evaluators[i], alpha[row]) * evaluate(c.evaluators[j], rv);
    }

    Factorization f;
    f.target = polynomial_transform(b, alpha);
    const double cond = condition_number(b_prime);
    if (!(cond <= base_change_condition_limit)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "base change solve is ill-conditioned (condition number %.3e)", cond);
        f.warnings.emplace_back(buf);
    }
    f.factors.push_back(LinOp::two_sparse(n, n, std::move(pinv), "P^-1"));
    f.factors.push_back(LinOp::direct_sum(std::move(gamma_blocks), "PT_t direct sum"));
    f.factors.push_back(LinOp::stride(n, m));
    f.factors.push_back(
        LinOp::tensor(LinOp::identity(k), LinOp::dense(evaluate_basis(c, sub.beta), "PT_{c,beta}"), "I_k (x) PT_{c,beta}"));
    f.factors.push_back(LinOp::dense(solve(b_prime, f.target), "base change B"));
    return f;
}

} // namespace polyfact
