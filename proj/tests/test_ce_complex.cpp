#include <gtest/gtest.h>

#include "hardlef/ce_complex.hpp"
#include "hardlef/linalg.hpp"
#include "oracles.hpp"

using namespace hardlef;

namespace {

Monomial M(std::initializer_list<int> idx) { return Monomial::from_indices(idx); }

AlgebraSpec powers_of_three(int n) {
    std::vector<Rational> b;
    Rational p = 3;
    for (int j = 2; j <= n; ++j, p *= 3) b.push_back(p);
    return AlgebraSpec::explicit_weights(n, b);
}

std::vector<std::int64_t> betti_sequence(const AlgebraSpec& s, bool brute) {
    std::vector<std::int64_t> out;
    for (int k = 0; k <= s.dim(); ++k) out.push_back(brute ? betti_bruteforce(s, k) : betti_closed_form(s, k));
    return out;
}

} // namespace

TEST(AlgebraSpec, Validation) {
    EXPECT_THROW(AlgebraSpec::generic(1), InvalidParameter);
    EXPECT_THROW(AlgebraSpec::explicit_weights(3, {Rational(1)}), InvalidParameter);
    EXPECT_EQ(AlgebraSpec::generic(5).sigma(3), 7);
    const auto w = AlgebraSpec::generic_witness(4);
    EXPECT_EQ(w.explicit_b(), (std::vector<Rational>{9, 27, 81}));
}

TEST(Weight, Examples) {
    const auto s = AlgebraSpec::generic(5);
    EXPECT_EQ(weight(s, M({2})).coeffs, (std::vector<int>{1, 0, 0, 0}));
    EXPECT_EQ(weight(s, M({7})).coeffs, (std::vector<int>{0, -1, 0, 0}));
    EXPECT_EQ(weight(s, M({2, 6})).coeffs, (std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(weight(s, M({2, 7})).coeffs, (std::vector<int>{1, -1, 0, 0}));
    EXPECT_EQ(weight(s, M({1, 10})).coeffs, (std::vector<int>{0, 0, 0, 0}));
}

TEST(Weight, ThetaMatchesLeibnizOracle) {
    // The coefficient of e^{2,7,10} in d(e^{2,7}) is -(b_2 - b_3) for every b.
    const std::vector<Rational> b = {5, 11, 17, 23};
    const Form d = oracle::leibniz_differential(5, b, M({2, 7}));
    const auto w = weight(AlgebraSpec::generic(5), M({2, 7}));
    EXPECT_EQ(d.coefficient(M({2, 7, 10})), -w.evaluate(b));
}

TEST(Weight, ZeroTestDependsOnMode) {
    const Monomial theta = M({2, 7});
    EXPECT_FALSE(is_zero_weight(AlgebraSpec::generic(5), theta));
    EXPECT_TRUE(is_zero_weight(AlgebraSpec::ones(5), theta));
    EXPECT_TRUE(is_zero_weight(AlgebraSpec::explicit_weights(5, {2, 2, 1, 1}), theta));
    EXPECT_FALSE(is_zero_weight(AlgebraSpec::explicit_weights(5, {2, 3, 1, 1}), theta));
}

TEST(Weight, MonomialOutsideAlgebraThrows) {
    EXPECT_THROW(weight(AlgebraSpec::generic(2), M({5})), DimensionMismatch);
}

TEST(Differential, Examples) {
    const auto s = AlgebraSpec::explicit_weights(5, {3, 5, 7, 11});
    EXPECT_EQ(differential(s, Form(5, M({2}))), Form(5, M({2, 10}), 3));
    EXPECT_EQ(differential(s, Form(5, M({2, 3}))), Form(5, M({2, 3, 10}), -(3 + 5)));
    EXPECT_TRUE(differential(s, Form(5, M({2, 6}))).is_zero());
    EXPECT_TRUE(differential(s, Form(5, M({3, 10}))).is_zero());
    EXPECT_THROW(differential(AlgebraSpec::generic(5), Form(5, M({2}))), UnsupportedMode);
}

TEST(Differential, GammaClosedInEveryMode) {
    for (const auto& s : {AlgebraSpec::generic(5), AlgebraSpec::ones(5), powers_of_three(5)})
        for (int i = 2; i <= 5; ++i) EXPECT_TRUE(is_closed(s, Form(5, M({i, i + 4}))));
}

TEST(Differential, SymbolicAgreesWithNumeric) {
    const auto g = AlgebraSpec::generic(4);
    const std::vector<Rational> b = {2, 7, -3};
    const auto s = AlgebraSpec::explicit_weights(4, b);
    for (int k = 0; k < 8; ++k)
        for (Monomial m : monomials_of_degree(4, k))
            ASSERT_EQ(symbolic_differential(g, Form(4, m)).evaluate(b), differential(s, Form(4, m)));
}

class ComplexN : public ::testing::TestWithParam<int> {};

TEST_P(ComplexN, DSquaredVanishesExhaustively) {
    const int n = GetParam();
    for (const auto& s : {AlgebraSpec::ones(n), powers_of_three(n), AlgebraSpec::explicit_weights(n, std::vector<Rational>(n - 1, Rational(-2, 7)))})
        for (int k = 0; k <= 2 * n; ++k)
            for (Monomial m : monomials_of_degree(n, k))
                ASSERT_TRUE(differential(s, differential(s, Form(n, m))).is_zero());
    const auto g = AlgebraSpec::generic(n);
    for (int k = 0; k <= 2 * n; ++k)
        for (Monomial m : monomials_of_degree(n, k)) {
            const auto sd = symbolic_differential(g, Form(n, m));
            for (const auto& [mm, lin] : sd.terms()) {
                Form once(n, mm);
                ASSERT_TRUE(symbolic_differential(g, once).is_zero());
            }
        }
}

TEST_P(ComplexN, MatchesLeibnizOracle) {
    const int n = GetParam();
    std::vector<Rational> b;
    for (int j = 2; j <= n; ++j) b.push_back(Rational(2 * j + 1, j));
    const auto s = AlgebraSpec::explicit_weights(n, b);
    for (int k = 0; k <= 2 * n; ++k)
        for (Monomial m : monomials_of_degree(n, k))
            ASSERT_EQ(differential(s, Form(n, m)), oracle::leibniz_differential(n, b, m)) << m.str();
}

INSTANTIATE_TEST_SUITE_P(SmallN, ComplexN, ::testing::Values(2, 3, 4, 5, 6));

TEST(CohomologyBasis, GenericDegreeFourOrder) {
    const auto b = cohomology_basis(AlgebraSpec::generic(5), 4);
    EXPECT_EQ(b.labels(), (std::vector<std::string>{"δ∧γ_2", "δ∧γ_3", "δ∧γ_4", "δ∧γ_5", "γ_23", "γ_24", "γ_25",
                                                     "γ_34", "γ_35", "γ_45"}));
    EXPECT_EQ(b.elements[0].monomial, M({1, 2, 6, 10}));
    EXPECT_EQ(b.elements[4].monomial, M({2, 3, 6, 7}));
}

TEST(CohomologyBasis, DegreeOneAndTop) {
    for (const auto& s : {AlgebraSpec::generic(4), AlgebraSpec::ones(4), powers_of_three(4)}) {
        const auto h1 = cohomology_basis(s, 1);
        ASSERT_EQ(h1.size(), 2u);
        EXPECT_EQ(h1.elements[0].monomial, M({1}));
        EXPECT_EQ(h1.elements[1].monomial, M({8}));
        const auto top = cohomology_basis(s, 8);
        ASSERT_EQ(top.size(), 1u);
        EXPECT_EQ(top.elements[0].monomial, Monomial::top(4));
    }
}

TEST(CohomologyBasis, TopClassIsDeltaGammaWithSign) {
    // delta ^ Gamma = e^1 ^ e^{2n} ^ gamma_2 ^ ... ^ gamma_n
    const int n = 3;
    const auto top = cohomology_basis(AlgebraSpec::generic(n), 2 * n).elements.at(0);
    EXPECT_EQ(top.sign, oracle::permutation_sign({1, 6, 2, 4, 3, 5}));
}

TEST(CohomologyBasis, SignedElementsMatchWordOracle) {
    // Each basis element, read off its label structure, equals the ordered product of 2-forms.
    const auto s = AlgebraSpec::ones(4);
    for (int k = 0; k <= 8; ++k)
        for (const auto& e : cohomology_basis(s, k, BasisRole::Source).elements) {
            const auto& key = *e.key;
            std::vector<int> seq;
            if (key.side == 1) seq.push_back(1);
            for (int l : key.index) {
                if (l == 1) seq.insert(seq.end(), {1, 8});
                else seq.insert(seq.end(), {l, l + 3});
            }
            for (int t = 0; t < key.p; ++t) seq.insert(seq.end(), {key.R[t], key.S[t] + 3});
            if (key.side == 2) seq.push_back(8);
            EXPECT_EQ(e.as_form(4), oracle::word(4, seq)) << e.label;
        }
}

TEST(CohomologyBasis, OnesModeGroupsByPThenRS) {
    const auto b = cohomology_basis(AlgebraSpec::ones(3), 2);
    EXPECT_EQ(b.labels(), (std::vector<std::string>{"δ", "γ_2", "γ_3", "θ_2|3", "θ_3|2"}));
}

TEST(CohomologyBasis, ExplicitModeListsZeroWeightMonomials) {
    const auto s = AlgebraSpec::explicit_weights(3, {1, 2});
    const auto b = cohomology_basis(s, 2);
    for (const auto& e : b.elements) EXPECT_TRUE(is_zero_weight(s, e.monomial));
    EXPECT_EQ(static_cast<std::int64_t>(b.size()), betti_bruteforce(s, 2));
}

TEST(CohomologyBasis, TargetRoleHasSameElements) {
    for (const auto& s : {AlgebraSpec::generic(5), AlgebraSpec::ones(4)})
        for (int k = 0; k <= s.dim(); ++k) {
            auto a = cohomology_basis(s, k, BasisRole::Source).elements;
            auto b = cohomology_basis(s, k, BasisRole::Target).elements;
            ASSERT_EQ(a.size(), b.size());
            std::set<std::uint32_t> ma, mb;
            for (const auto& e : a) ma.insert(e.monomial.mask());
            for (const auto& e : b) mb.insert(e.monomial.mask());
            EXPECT_EQ(ma, mb);
        }
}

TEST(CohomologyBasis, DegreeOutOfRange) {
    EXPECT_THROW(cohomology_basis(AlgebraSpec::generic(2), 5), InvalidParameter);
}

TEST(Betti, ClosedFormSequences) {
    EXPECT_EQ(betti_sequence(AlgebraSpec::generic(5), false),
              (std::vector<std::int64_t>{1, 2, 5, 8, 10, 12, 10, 8, 5, 2, 1}));
    EXPECT_EQ(betti_sequence(AlgebraSpec::ones(3), false), (std::vector<std::int64_t>{1, 2, 5, 8, 5, 2, 1}));
    EXPECT_THROW(betti_closed_form(powers_of_three(3), 2), UnsupportedMode);
}

TEST(Betti, BruteForceExamples) {
    EXPECT_EQ(betti_bruteforce(AlgebraSpec::generic_witness(5), 4), 10);
    EXPECT_EQ(betti_bruteforce(AlgebraSpec::generic(5), 4), 10);
    EXPECT_EQ(betti_bruteforce(AlgebraSpec::ones(3), 2), 5);
    EXPECT_EQ(betti_bruteforce(AlgebraSpec::ones(3), 0), 1);
    EXPECT_THROW(betti_bruteforce(AlgebraSpec::ones(8), 2), SizeLimit);
}

TEST(Betti, ClosedFormMatchesBruteForce) {
    for (int n = 2; n <= 6; ++n) {
        EXPECT_EQ(betti_sequence(AlgebraSpec::generic(n), false), betti_sequence(AlgebraSpec::generic(n), true));
        EXPECT_EQ(betti_sequence(AlgebraSpec::ones(n), false), betti_sequence(AlgebraSpec::ones(n), true));
    }
}

TEST(Betti, BruteForceMatchesDenseRank) {
    // rank of d from a dense rational matrix built on the Leibniz oracle
    for (int n = 2; n <= 3; ++n) {
        std::vector<Rational> b;
        for (int j = 2; j <= n; ++j) b.push_back(j == 2 ? Rational(1) : Rational(-1, 2));
        const auto s = AlgebraSpec::explicit_weights(n, b);
        std::vector<std::size_t> ranks(2 * n + 2, 0);
        for (int k = 0; k < 2 * n; ++k) {
            const auto src = monomials_of_degree(n, k), tgt = monomials_of_degree(n, k + 1);
            RatMatrix D(tgt.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j) {
                const Form img = oracle::leibniz_differential(n, b, src[j]);
                for (std::size_t i = 0; i < tgt.size(); ++i) D(i, j) = img.coefficient(tgt[i]);
            }
            ranks[k] = rank(D);
        }
        for (int k = 0; k <= 2 * n; ++k) {
            const std::int64_t expected = binomial(2 * n, k) - static_cast<std::int64_t>(ranks[k]) -
                                          (k ? static_cast<std::int64_t>(ranks[k - 1]) : 0);
            EXPECT_EQ(betti_bruteforce(s, k), expected) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Betti, EulerCharacteristicVanishes) {
    for (int n = 2; n <= 5; ++n)
        for (const auto& s : {AlgebraSpec::generic(n), AlgebraSpec::ones(n), powers_of_three(n)}) {
            std::int64_t chi = 0;
            for (int k = 0; k <= 2 * n; ++k) chi += (k % 2 ? -1 : 1) * betti_bruteforce(s, k);
            EXPECT_EQ(chi, 0) << s.describe();
        }
}

TEST(Betti, PoincareSymmetry) {
    for (int n = 2; n <= 8; ++n)
        for (const auto& s : {AlgebraSpec::generic(n), AlgebraSpec::ones(n)})
            for (int k = 0; k <= 2 * n; ++k) EXPECT_EQ(betti_closed_form(s, k), betti_closed_form(s, 2 * n - k));
}

TEST(CohomologyBasis, SpansCohomology) {
    // Closed, of the right dimension, and independent modulo exact forms.
    for (int n = 2; n <= 5; ++n)
        for (const auto& s : {AlgebraSpec::generic(n), AlgebraSpec::ones(n)}) {
            const auto ib = integral_weights(s);
            for (int k = 0; k <= 2 * n; ++k) {
                const auto basis = cohomology_basis(s, k);
                ASSERT_EQ(static_cast<std::int64_t>(basis.size()), betti_bruteforce(s, k));
                for (const auto& e : basis.elements) ASSERT_TRUE(is_closed(s, e.as_form(n)));
                // Image of d_{k-1}: columns of the matrix whose rows are d of each monomial.
                SparseEliminator elim;
                std::size_t image_rank = 0;
                for (const auto& row : differential_rows(s, ib, k - 1))
                    if (elim.insert(row)) ++image_rank;
                const auto targets = monomials_of_degree(n, k);
                for (const auto& e : basis.elements) {
                    const auto pos = std::find(targets.begin(), targets.end(), e.monomial) - targets.begin();
                    ASSERT_TRUE(elim.insert(SparseRow{{static_cast<std::size_t>(pos), Integer(e.sign)}}))
                        << "exact combination in degree " << k;
                }
                EXPECT_EQ(elim.rank(), image_rank + basis.size());
            }
        }
}
