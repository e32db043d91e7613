#include <gtest/gtest.h>

#include <random>

#include "hardlef/exterior_algebra.hpp"
#include "oracles.hpp"

using namespace hardlef;

namespace {

Form e(int n, std::initializer_list<int> idx) { return Form(n, Monomial::from_indices(idx)); }

}

TEST(Wedge, AscendingPairHasNoSign) {
    const Form w = wedge(e(5, {2}), e(5, {3}));
    EXPECT_EQ(w, Form(5, Monomial::from_indices({2, 3}), 1));
}

TEST(Wedge, SwappedPairIsNegative) {
    EXPECT_EQ(wedge(e(5, {3}), e(5, {2})), Form(5, Monomial::from_indices({2, 3}), -1));
}

TEST(Wedge, CollisionVanishes) { EXPECT_TRUE(wedge(e(5, {2}), e(5, {2})).is_zero()); }

TEST(Wedge, ThreeFactorSignMatchesPermutationOracle) {
    const Form w = wedge(wedge(e(5, {2}), e(5, {4})), e(5, {3}));
    EXPECT_EQ(oracle::permutation_sign({2, 4, 3}), -1);
    EXPECT_EQ(w, Form(5, Monomial::from_indices({2, 3, 4}), -1));
}

TEST(Wedge, DimensionMismatchThrows) {
    EXPECT_THROW(wedge(e(2, {1}), e(3, {1})), DimensionMismatch);
    EXPECT_THROW(Form(2, Monomial::from_indices({5})), DimensionMismatch);
}

TEST(Coefficient, Extraction) {
    const Form f = e(5, {2, 3});
    EXPECT_EQ(coefficient(f, Monomial::from_indices({2, 3})), 1);
    EXPECT_EQ(coefficient(f, Monomial::from_indices({2, 4})), 0);
    Form g = Rational(3) * e(5, {2, 10}) + Rational(5) * e(5, {3, 10});
    EXPECT_EQ(coefficient(g, Monomial::from_indices({3, 10})), 5);
}

TEST(TopPairing, Examples) {
    EXPECT_EQ(top_pairing(e(2, {1, 2, 3}), e(2, {4})), 1);
    EXPECT_EQ(top_pairing(Form::unit(2), Form::unit(2)), 0);
    EXPECT_EQ(top_pairing(e(2, {1}), e(2, {2, 3, 4})), oracle::permutation_sign({1, 2, 3, 4}));
    EXPECT_EQ(top_pairing(e(2, {2}), e(2, {1, 3, 4})), oracle::permutation_sign({2, 1, 3, 4}));
}

TEST(Monomial, Basics) {
    const Monomial m = Monomial::from_indices({2, 5, 7});
    EXPECT_EQ(m.degree(), 3);
    EXPECT_EQ(m.indices(), (std::vector<int>{2, 5, 7}));
    EXPECT_EQ(Monomial::unit().degree(), 0);
    EXPECT_EQ(Monomial::unit().str(), "1");
    EXPECT_THROW(Monomial::from_indices({3, 2}), InvalidParameter);
    EXPECT_THROW(Monomial::from_indices({0}), InvalidParameter);
    EXPECT_TRUE(m.fits(4));
    EXPECT_FALSE(m.fits(3));
}

TEST(Monomial, EnumerationIsGradedLex) {
    const auto ms = monomials_of_degree(3, 2);
    ASSERT_EQ(ms.size(), 15u);
    EXPECT_EQ(ms.front(), Monomial::from_indices({1, 2}));
    EXPECT_EQ(ms[5], Monomial::from_indices({2, 3}));
    EXPECT_EQ(ms.back(), Monomial::from_indices({5, 6}));
    EXPECT_TRUE(std::is_sorted(ms.begin(), ms.end()));
}

TEST(Form, ZeroCoefficientsAreNeverStored) {
    Form f = e(3, {1, 2});
    f -= e(3, {1, 2});
    EXPECT_TRUE(f.is_zero());
    EXPECT_EQ(f.size(), 0u);
    Form g = e(3, {1});
    g *= Rational(0);
    EXPECT_TRUE(g.is_zero());
}

TEST(Form, HomogeneousPart) {
    const Form f = e(3, {1}) + e(3, {2, 3}) + e(3, {4, 5});
    EXPECT_FALSE(f.degree().has_value());
    EXPECT_EQ(f.homogeneous_part(2).degree(), 2);
    EXPECT_EQ(f.homogeneous_part(2).size(), 2u);
}

class WedgeProperties : public ::testing::TestWithParam<int> {};

TEST_P(WedgeProperties, GradedAnticommutative) {
    const int n = GetParam();
    std::mt19937 rng(1000 + n);
    for (int trial = 0; trial < 30; ++trial) {
        const int p = 1 + trial % 3, q = 1 + (trial / 3) % 3;
        const Form a = oracle::random_form(rng, n, p, 4), b = oracle::random_form(rng, n, q, 4);
        Form ba = wedge(b, a);
        if ((p * q) % 2) ba *= Rational(-1);
        EXPECT_EQ(wedge(a, b), ba);
    }
}

TEST_P(WedgeProperties, Associative) {
    const int n = GetParam();
    std::mt19937 rng(2000 + n);
    for (int trial = 0; trial < 30; ++trial) {
        const Form a = oracle::random_form(rng, n, 1 + trial % 2, 3);
        const Form b = oracle::random_form(rng, n, 1 + trial % 3, 3);
        const Form c = oracle::random_form(rng, n, 1, 3);
        EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    }
}

TEST_P(WedgeProperties, AgreesWithWordOracle) {
    const int n = GetParam();
    std::mt19937 rng(3000 + n);
    for (int trial = 0; trial < 30; ++trial) {
        const Form a = oracle::random_form(rng, n, 1 + trial % 3, 4);
        const Form b = oracle::random_form(rng, n, 1 + (trial / 2) % 3, 4);
        EXPECT_EQ(wedge(a, b), oracle::wedge(a, b));
    }
}

TEST_P(WedgeProperties, OddMonomialsSquareToZero) {
    const int n = GetParam();
    for (int k = 1; k <= 2 * n; k += 2)
        for (Monomial m : monomials_of_degree(n, k)) {
            const Form f(n, m);
            ASSERT_TRUE(wedge(f, f).is_zero());
        }
}

INSTANTIATE_TEST_SUITE_P(SmallN, WedgeProperties, ::testing::Values(1, 2, 3, 4, 5));

TEST(Power, ZerothPowerIsUnit) {
    const Form f = e(2, {1, 4}) + e(2, {2, 3});
    EXPECT_EQ(power(f, 0), Form::unit(2));
    EXPECT_EQ(power(f, 2), Form(2, Monomial::top(2), 2));
}
