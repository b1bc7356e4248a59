#include "polyfact/induction.hpp"
#include "spec_corpus.hpp"
#include "support.hpp"

using namespace polyfact;
using namespace polyfact::testing;

namespace {

const complex I{0, 1};

SamplePoints omega4() { return SamplePoints::roots_of_unity(4); }

MonomialPoly half_x_plus_inverse() { return {0, 0.5, 0, 0.5}; }   // (x + x^-1)/2 mod x^4 - 1
MonomialPoly half_x_minus_inverse() { return {0, 0.5, 0, -0.5}; } // (x - x^-1)/2 mod x^4 - 1

bool same_points(const std::vector<complex>& a, const std::vector<complex>& b, double tol = 1e-12) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol)
            return false;
    return true;
}

InductionSpec example5_cooley_tukey() {
    InductionSpec s;
    s.alpha = omega4();
    s.generator = {0, 0, 1};
    s.transversal = {{1}, {0, 1}};
    return s;
}

InductionSpec example5_britanak_rao() {
    InductionSpec s;
    s.alpha = omega4();
    s.generator = half_x_plus_inverse();
    s.transversal = {{1}, half_x_minus_inverse()};
    s.coset_bases = {BasisFamily{ChebKind::first}, BasisFamily{}};
    return s;
}

} // namespace

TEST(SubalgebraSpectrum, Examples) {
    const auto s1 = subalgebra_spectrum({0, 0, 1}, omega4());
    EXPECT_TRUE(same_points(s1.beta, {1, -1}));
    EXPECT_EQ(s1.index_map, (std::vector<std::size_t>{0, 1, 0, 1}));

    const SamplePoints a({complex{0.3, 1}, complex{-2}, complex{0, 0.5}});
    EXPECT_TRUE(same_points(subalgebra_spectrum({0, 1}, a).beta, a.points()));

    const auto s3 = subalgebra_spectrum(half_x_plus_inverse(), omega4());
    EXPECT_TRUE(same_points(s3.beta, {1, 0, -1}));
    EXPECT_EQ(s3.dimension(), 3u);
}

TEST(SubalgebraRank, Examples) {
    EXPECT_EQ(subalgebra_rank_check({0, 0, 1}, omega4()), 2u);
    EXPECT_EQ(subalgebra_rank_check({0, 1}, SamplePoints::roots_of_unity(7)), 7u);
    EXPECT_EQ(subalgebra_rank_check(half_x_plus_inverse(), omega4()), 3u);
}

TEST(CosetSpectrum, Examples) {
    const auto c1 = coset_spectrum({0, 1}, {0, 0, 1}, omega4());
    EXPECT_TRUE(same_points(c1.beta_prime, {1, -1}));
    EXPECT_EQ(c1.m_ell(), 2u);

    const auto c2 = coset_spectrum({1}, half_x_plus_inverse(), omega4());
    EXPECT_EQ(c2.m_ell(), 3u);

    const auto c3 = coset_spectrum(half_x_minus_inverse(), half_x_plus_inverse(), omega4());
    EXPECT_TRUE(same_points(c3.beta_prime, {0}));
    EXPECT_EQ(c3.m_ell(), 1u);
}

TEST(TransversalCheck, BritanakRaoCosetsMatchDisplayedMatrix) {
    const auto d = transversal_check(example5_britanak_rao());
    EXPECT_TRUE(d.valid);
    EXPECT_EQ(d.sum_m, 4u);
    EXPECT_EQ(d.rank, 4u);
    const DenseMatrix expect{{1, 1, 1, 0}, {1, 0, 0, -I}, {1, -1, 1, 0}, {1, 0, 0, I}};
    EXPECT_TRUE(matrices_near(d.m_prime, expect, 1e-15));
}

TEST(TransversalCheck, LagrangeTransversalIsDiagonal) {
    InductionSpec s;
    s.alpha = omega4();
    s.generator = {0, 0, 1};
    const auto v = polynomial_transform(PolyBasis::monomial(4), s.alpha);
    for (std::size_t l = 0; l < 4; ++l) {
        DenseMatrix e(4, 1);
        e(l, 0) = 1.0;
        const auto c = solve(v, e);
        s.transversal.emplace_back(std::vector<complex>(c.entries().begin(), c.entries().end()));
    }
    const auto d = transversal_check(s);
    EXPECT_TRUE(d.valid);
    EXPECT_TRUE(matrices_near(d.m_prime, DenseMatrix::identity(4), 1e-12));
}

TEST(TransversalCheck, DuplicatedElementsFail) {
    auto s = example5_cooley_tukey();
    s.transversal = {{1}, {1}};
    const auto d = transversal_check(s);
    EXPECT_FALSE(d.valid);
    EXPECT_LT(d.rank, 4u);
    EXPECT_THROW(induction_factorize(s), transversal_error);
}

TEST(InductionFactorize, CooleyTukeyGolden) {
    const auto f = induction_factorize(example5_cooley_tukey());
    ASSERT_EQ(f.factors.size(), 3u);
    EXPECT_EQ(f.factors[0].label(), "M-part");
    EXPECT_EQ(f.factors[1].label(), "PT direct sum");
    EXPECT_EQ(f.factors[2].label(), "base change B");
    const DenseMatrix m{{1, 0, 1, 0}, {0, 1, 0, -I}, {1, 0, -1, 0}, {0, 1, 0, I}};
    const DenseMatrix f2{{1, 1}, {1, -1}};
    const DenseMatrix b{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[0]), m, 1e-12));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[1]), direct_sum({f2, f2}), 1e-12));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[2]), b, 1e-12));
    EXPECT_TRUE(matrices_near(f.product(), named_transform(TransformName::dft, 4), 1e-12));
    EXPECT_TRUE(f.warnings.empty());
}

TEST(InductionFactorize, BritanakRaoGolden) {
    const auto f = induction_factorize(example5_britanak_rao());
    ASSERT_EQ(f.factors.size(), 3u);
    const DenseMatrix m{{1, 0, 0, 0}, {0, 1, 0, -I}, {0, 0, 1, 0}, {0, 1, 0, I}};
    const DenseMatrix b{{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, -1}};
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[0]), m, 1e-12));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[1]),
                              direct_sum({named_transform(TransformName::dct1, 3), named_transform(TransformName::dst1, 1)}),
                              1e-12));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[2]), b, 1e-12));
    EXPECT_TRUE(matrices_near(f.product(), named_transform(TransformName::dft, 4), 1e-12));
}

TEST(InductionFactorize, TrivialInduction) {
    InductionSpec s;
    s.alpha = SamplePoints(cheb_zeros(ChebKind::first, 5));
    s.basis = BasisFamily{ChebKind::first};
    s.generator = {0, 1};
    s.transversal = {{1}};
    s.coset_bases = {BasisFamily{ChebKind::first}};
    const auto f = induction_factorize(s);
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[0]), DenseMatrix::identity(5), 1e-15));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[1]), named_transform(TransformName::dct3, 5), 1e-12));
    EXPECT_TRUE(matrices_near(op_to_dense(f.factors[2]), DenseMatrix::identity(5), 1e-12));
}

TEST(InductionFactorize, CosetBasisSizeMismatchIsRejected) {
    auto s = example5_cooley_tukey();
    PolyBasis three = PolyBasis::monomial(3);
    s.coset_bases = {BasisChoice{three}};
    EXPECT_THROW(induction_factorize(s), invalid_argument);
}

TEST(OnesCount, Examples) {
    const auto r1 = ones_count_check(example5_cooley_tukey());
    EXPECT_TRUE(r1.holds);
    EXPECT_EQ(r1.ones, 4u);
    EXPECT_EQ(r1.zeros, 4u);

    InductionSpec id;
    id.alpha = SamplePoints::roots_of_unity(6);
    id.generator = {0, 1};
    id.transversal = {{1}};
    const auto r2 = ones_count_check(id);
    EXPECT_TRUE(r2.holds);
    EXPECT_EQ(r2.ones, 6u);

    const auto r3 = ones_count_check(example5_britanak_rao());
    EXPECT_TRUE(r3.holds);
    EXPECT_EQ(r3.ones, 4u);
    EXPECT_EQ(r3.zeros, 8u);
    EXPECT_EQ(r3.column_ones, (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Decomposition, Dft4) {
    const auto f = decomposition_factorize({-1, 0, 1}, {0, 0, 1}, PolyBasis::monomial(4), PolyBasis::monomial(2),
                                           PolyBasis::monomial(2), omega4());
    EXPECT_TRUE(matrices_near(f.product(), named_transform(TransformName::dft, 4), 1e-12));
    EXPECT_TRUE(matrices_near(f.product(), induction_factorize(example5_cooley_tukey()).product(), 1e-12));
}

TEST(Decomposition, Trivial) {
    const auto f = decomposition_factorize({-1, 1}, {0, 1}, PolyBasis::monomial(1), PolyBasis::monomial(1),
                                           PolyBasis::monomial(1), SamplePoints({complex{1}}));
    for (const auto& op : f.factors)
        EXPECT_EQ(op_to_dense(op), DenseMatrix::identity(1)) << op.label();
}

TEST(Decomposition, Dft6ViaCube) {
    const auto f = decomposition_factorize({-1, 0, 1}, {0, 0, 0, 1}, PolyBasis::monomial(6), PolyBasis::monomial(2),
                                           PolyBasis::monomial(3), SamplePoints::roots_of_unity(6));
    EXPECT_LE(relative_error(f.product(), named_transform(TransformName::dft, 6)), 1e-12);
}

TEST(Decomposition, RejectsInconsistentInput) {
    // q = y^2 - 4 does not vanish on x^2 evaluated at fourth roots of unity.
    EXPECT_THROW(decomposition_factorize({-4, 0, 1}, {0, 0, 1}, PolyBasis::monomial(4), PolyBasis::monomial(2),
                                         PolyBasis::monomial(2), omega4()),
                 invalid_argument);
    // Fibres of x^2 over {1, -1} restricted to three points have sizes 2 and 1.
    const SamplePoints three({complex{1}, complex{-1}, complex{0, 1}});
    EXPECT_THROW(decomposition_factorize({-1, 0, 1}, {0, 0, 1}, PolyBasis::monomial(3), PolyBasis::monomial(2),
                                         PolyBasis::monomial(1), three),
                 invalid_argument);
}

TEST(InductionProperties, RandomSpecsReconstruct) {
    std::size_t annihilated = 0, proper = 0;
    for (const auto& rs : corpus(50)) {
        const auto& s = rs.spec;
        const auto f = induction_factorize(s);
        EXPECT_LE(f.reconstruction_error(), 1e-9) << "n=" << s.alpha.size();
        const auto sub = subalgebra_spectrum(s.generator, s.alpha);
        EXPECT_EQ(subalgebra_rank_check(s.generator, s.alpha), sub.dimension());
        EXPECT_TRUE(ones_count_check(s).holds);
        const auto d = transversal_check(s);
        EXPECT_EQ(d.sum_m, s.alpha.size());
        proper += sub.dimension() < s.alpha.size();
        for (const auto& t : s.transversal)
            annihilated += coset_spectrum(t, s.generator, s.alpha).m_ell() < sub.dimension();
    }
    // The corpus must actually exercise proper subalgebras and annihilation.
    EXPECT_GT(proper, 10u);
    EXPECT_GT(annihilated, 5u);
}

TEST(InductionProperties, CosetDimensionIsRank) {
    auto g = polyfact::testing::rng(808);
    for (const auto& rs : corpus(20)) {
        const auto& s = rs.spec;
        const std::size_t n = s.alpha.size();
        for (int trial = 0; trial < 3; ++trial) {
            MonomialPoly t = poly_mul(random_poly(g, 2), vanishing_on_fibre(g, s));
            DenseMatrix v(n, n), m(n, n);
            double tmax = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const complex tv = poly_eval(t, s.alpha[k]), rv = poly_eval(s.generator, s.alpha[k]);
                tmax = std::max(tmax, std::abs(tv));
                complex p = 1.0;
                for (std::size_t l = 0; l < n; ++l, p *= rv) {
                    v(k, l) = p;
                    m(k, l) = tv * p;
                }
            }
            // Rank measured against the scale of the unmasked matrix, so a
            // coset that vanishes everywhere has rank 0 rather than 1.
            const double cut = 1e-9 * (1 + tmax) * singular_values(v).front();
            std::size_t rank = 0;
            for (double sv : singular_values(m))
                rank += sv > cut;
            EXPECT_EQ(coset_spectrum(t, s.generator, s.alpha).m_ell(), rank);
        }
    }
}
