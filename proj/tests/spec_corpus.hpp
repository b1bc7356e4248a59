#pragma once

// Seeded random induction specs. Sample points are either unstructured or
// unions of fibres of the generator, and transversals are drawn until the
// cosets decompose the algebra.

#include "polyfact/induction.hpp"
#include "random.hpp"

#include <Eigen/Eigenvalues>

#include <optional>

namespace polyfact::testing {

// Roots of a polynomial from its companion matrix.
inline std::vector<complex> roots_of(const MonomialPoly& p) {
    const int d = p.degree();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i)
        c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        c(i, d - 1) = -p.coeffs[static_cast<std::size_t>(i)] / p.coeffs[static_cast<std::size_t>(d)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}


struct RandomSpec {
    InductionSpec spec;
    int fibre_degree = 1;
};

inline BasisChoice random_family(std::mt19937_64& g) {
    switch (std::uniform_int_distribution<int>(0, 4)(g)) {
    case 0: return BasisFamily{};
    case 1: return BasisFamily{ChebKind::first};
    case 2: return BasisFamily{ChebKind::second};
    case 3: return BasisFamily{ChebKind::third};
    default: return BasisFamily{ChebKind::fourth};
    }
}

inline MonomialPoly random_poly(std::mt19937_64& g, int degree, double scale = 1.0) {
    std::vector<complex> c;
    for (int i = 0; i <= degree; ++i)
        c.push_back(random_complex(g, scale));
    return c;
}

// Sample points built as fibres r^-1(beta_j), so the subalgebra is proper and
// cosets can be annihilated; a quarter of the specs use unstructured points.
inline std::optional<RandomSpec> draw_spec(std::mt19937_64& g) {
    std::uniform_int_distribution<int> deg(1, 3);
    RandomSpec out;
    auto& s = out.spec;
    const int d = deg(g);
    s.generator = random_poly(g, d);
    std::vector<complex> pts;
    if (std::uniform_int_distribution<int>(0, 3)(g) == 0) {
        const int n = std::uniform_int_distribution<int>(1, 12)(g);
        for (int i = 0; i < n; ++i)
            pts.push_back(random_complex(g));
    } else {
        const int fibres = std::uniform_int_distribution<int>(1, 12 / d)(g);
        for (int j = 0; j < fibres; ++j) {
            MonomialPoly shifted = s.generator;
            shifted.coeffs[0] -= random_complex(g);
            for (auto z : roots_of(shifted))
                pts.push_back(z);
        }
        out.fibre_degree = d;
    }
    try {
        s.alpha = SamplePoints(pts);
    } catch (const invalid_argument&) {
        return std::nullopt;
    }
    double spread = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            spread = std::max(spread, 1.0 / std::abs(pts[i] - pts[j]));
    if (spread > 1e3)
        return std::nullopt;
    s.basis = random_family(g);
    return out;
}

// r(x) - beta_j for a random beta_j in r(alpha).
inline MonomialPoly vanishing_on_fibre(std::mt19937_64& g, const InductionSpec& s) {
    const auto k = std::uniform_int_distribution<std::size_t>(0, s.alpha.size() - 1)(g);
    MonomialPoly f = s.generator;
    f.coeffs[0] -= poly_eval(s.generator, s.alpha[k]);
    return f;
}

// Rejection sampling: transversal elements are random low-degree polynomials,
// some multiplied by linear factors vanishing at chosen points.
inline bool draw_transversal(std::mt19937_64& g, RandomSpec& rs) {
    auto& s = rs.spec;
    const std::size_t n = s.alpha.size();
    const std::size_t m = subalgebra_spectrum(s.generator, s.alpha).dimension();
    const std::size_t cosets_needed = (n + m - 1) / m;
    for (int attempt = 0; attempt < 200; ++attempt) {
        const std::size_t L = cosets_needed + std::uniform_int_distribution<std::size_t>(0, 2)(g);
        s.transversal.clear();
        s.transversal.push_back({1});
        s.coset_bases = {random_family(g)};
        for (std::size_t l = 1; l < L; ++l) {
            MonomialPoly t = random_poly(g, std::uniform_int_distribution<int>(0, rs.fibre_degree)(g), 0.7);
            switch (std::uniform_int_distribution<int>(0, 2)(g)) {
            case 0: // vanish on a whole fibre, annihilating one beta
                t = poly_mul(t, vanishing_on_fibre(g, s));
                break;
            case 1: // vanish at a single point
                t = poly_mul(t, {-s.alpha[std::uniform_int_distribution<std::size_t>(0, n - 1)(g)], 1.0});
                break;
            default: break;
            }
            s.transversal.push_back(t);
            s.coset_bases.push_back(random_family(g));
        }
        if (transversal_check(s).valid)
            return true;
    }
    return false;
}

inline std::vector<RandomSpec> corpus(std::size_t count, std::uint64_t seed = 5150) {
    auto g = rng(seed);
    std::vector<RandomSpec> out;
    while (out.size() < count) {
        auto rs = draw_spec(g);
        if (rs && draw_transversal(g, *rs))
            out.push_back(std::move(*rs));
    }
    return out;
}

} // namespace polyfact::testing
