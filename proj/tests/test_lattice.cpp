#include <gtest/gtest.h>

#include <cmath>

#include "hardlef/lattice.hpp"
#include "oracles.hpp"

using namespace hardlef;

namespace {

std::vector<Integer> ms(const std::vector<PellSolution>& ps) {
    std::vector<Integer> out;
    for (const auto& p : ps) out.push_back(p.m);
    return out;
}

} // namespace

TEST(IntegerHelpers, SquareFree) {
    EXPECT_TRUE(is_square_free(2));
    EXPECT_TRUE(is_square_free(30));
    EXPECT_FALSE(is_square_free(12));
    EXPECT_FALSE(is_square_free(49));
    EXPECT_EQ(*square_free_part(32), 2);
    EXPECT_EQ(*square_free_part(252), 7);
    EXPECT_EQ(*square_free_part(1), 1);
    Integer r;
    EXPECT_TRUE(is_perfect_square(144, &r));
    EXPECT_EQ(r, 12);
    EXPECT_FALSE(is_perfect_square(145));
}

TEST(IntegerHelpers, TrialFactor) {
    const auto f = trial_factor(Integer(360));
    EXPECT_TRUE(f.complete);
    EXPECT_EQ(f.primes, (std::vector<std::pair<Integer, int>>{{2, 3}, {3, 2}, {5, 1}}));
    EXPECT_EQ(first_primes(5), (std::vector<Integer>{2, 3, 5, 7, 11}));
}

TEST(Pell, SmallExamples) {
    const std::vector<std::tuple<int, int, int>> expected = {{2, 6, 4}, {3, 4, 2}, {5, 3, 1}, {7, 16, 6}, {13, 11, 3}};
    for (const auto& [d, m, k] : expected) {
        const auto p = pell_min_solution(d);
        EXPECT_EQ(p.m, m) << d;
        EXPECT_EQ(p.k, k) << d;
        EXPECT_TRUE(p.satisfies());
    }
}

TEST(Pell, MinimalAgainstExhaustiveSearch) {
    for (int d = 2; d <= 60; ++d) {
        if (!is_square_free(d)) continue;
        const auto p = pell_min_solution(d);
        ASSERT_TRUE(p.satisfies()) << d;
        const auto [x, y] = oracle::pell_search(d, p.k);
        EXPECT_EQ(y, p.k) << "d=" << d;
        EXPECT_EQ(x, p.m) << "d=" << d;
    }
}

TEST(Pell, Rejects) {
    EXPECT_THROW(pell_min_solution(1), InvalidParameter);
    EXPECT_THROW(pell_min_solution(8), InvalidParameter);
}

TEST(Case1Params, Defaults) {
    EXPECT_EQ(ms(case1_params(5)), (std::vector<Integer>{6, 4, 3, 16}));
    EXPECT_EQ(ms(case1_params(3, std::vector<Integer>{5, 13})), (std::vector<Integer>{3, 11}));
}

TEST(Case1Params, Errors) {
    EXPECT_THROW(case1_params(3, std::vector<Integer>{4, 5}), InvalidParameter);  // 4 not square-free
    EXPECT_THROW(case1_params(3, std::vector<Integer>{6, 10}), InvalidParameter); // not coprime
    EXPECT_THROW(case1_params(3, std::vector<Integer>{5}), InvalidParameter);
    EXPECT_THROW(case1_params(1), InvalidParameter);
}

TEST(TValue, MatchesAcosh) {
    for (int m : {3, 4, 6, 16, 55, 2981}) {
        const double expected = std::acosh(m / 2.0);
        EXPECT_NEAR(t_value(m).convert_to<double>(), expected, 1e-12 * expected);
    }
    // 2 cosh t_m = m to full precision
    const Real t = t_value(16);
    EXPECT_LT(abs(exp(t) + exp(-t) - 16), Real(1e-45));
}

TEST(Lattice, CaseIFive) {
    const auto L = build_lattice_case1(5, case1_params(5));
    EXPECT_EQ(L.E.rows(), 9u);
    EXPECT_EQ(L.det_E, 1);
    EXPECT_TRUE(L.verified());
    EXPECT_LT(L.residual, Real(kLatticeTolerance));
    EXPECT_LT(L.trace_residual, Real(kTraceTolerance));
    EXPECT_EQ(L.E(0, 0), 1);
    EXPECT_EQ(L.E(1, 2), -1);
    EXPECT_EQ(L.E(2, 1), 1);
    EXPECT_EQ(L.E(2, 2), 6);
    EXPECT_EQ(L.E(8, 8), 16);
    EXPECT_EQ(L.E(0, 1), 0);
    ASSERT_EQ(L.t_values.size(), 4u);
    EXPECT_NEAR(L.t_values[0].convert_to<double>(), 1.762747174039086, 1e-14);
    EXPECT_NEAR(L.t_values[3].convert_to<double>(), 2.768659383313574, 1e-14);
    EXPECT_EQ(L.presentation(), "Z ⋉_E Z^9, (a,p)·(b,q) = (a+b, p + E^a q)");
}

TEST(Lattice, CaseIIAllN) {
    for (int n = 2; n <= 6; ++n) {
        const auto L = build_lattice_case2(n, 3);
        EXPECT_TRUE(L.verified()) << n;
        EXPECT_EQ(L.E.rows(), static_cast<std::size_t>(2 * n - 1));
        for (int j = 0; j < n - 1; ++j) EXPECT_EQ(L.E(2 + 2 * j, 2 + 2 * j), 3);
        EXPECT_EQ(L.t0, t_value(3));
    }
    EXPECT_THROW(build_lattice_case2(3, 2), InvalidParameter);
}

TEST(Lattice, ConjugationByHand) {
    // P^{-1} diag(e^{t0 a}) P reproduces E when applied to an integer vector
    const auto L = build_lattice_case1(3, case1_params(3));
    RealMatrix V = detail::invert(L.P);
    RealMatrix D(5, 5);
    for (std::size_t i = 0; i < 5; ++i) D(i, i) = exp(L.t0 * L.diagonal[i]);
    const RealMatrix conj = V * (D * L.P);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c)
            EXPECT_LT(abs(conj(r, c) - Real(L.E(r, c).str())), Real(1e-30));
}

TEST(Lattice, WrongParameterCount) {
    EXPECT_THROW(build_lattice_case1(4, case1_params(3)), InvalidParameter);
}

TEST(Certificate, DefaultParametersPass) {
    const auto c = hypothesis1_certificate(case1_params(5));
    EXPECT_EQ(c.structural, StructuralStatus::Certified);
    EXPECT_TRUE(c.numeric_checked);
    EXPECT_TRUE(c.numeric_ok);
    EXPECT_TRUE(c.passed());
    EXPECT_NO_THROW(c.require());
    const auto from_m = hypothesis1_certificate(std::vector<Integer>{6, 4, 3, 16});
    EXPECT_TRUE(from_m.passed());
    EXPECT_EQ(from_m.square_free_parts[3], Integer(7));
}

TEST(Certificate, SharedPrimeReported) {
    const auto c = hypothesis1_certificate(std::vector<Integer>{6, 6});
    EXPECT_EQ(c.structural, StructuralStatus::SharedPrime);
    EXPECT_FALSE(c.passed());
    EXPECT_FALSE(c.numeric_ok);
    try {
        c.require();
        FAIL() << "shared prime accepted";
    } catch (const CertificateFailure& e) {
        EXPECT_EQ(e.offending_prime(), "2");
    }
}

TEST(Certificate, AltParametersShareThree) {
    const auto c = hypothesis1_certificate(std::vector<Integer>{4, 8, 55, 2981});
    EXPECT_EQ(c.structural, StructuralStatus::SharedPrime);
    EXPECT_EQ(c.offending_prime, "3");
    EXPECT_TRUE(c.numeric_ok);
}

TEST(Certificate, DefaultsUpToEight) {
    for (int n = 2; n <= 8; ++n) {
        const auto ps = case1_params(n);
        EXPECT_TRUE(hypothesis1_certificate(ps).passed()) << n;
        EXPECT_TRUE(build_lattice_case1(n, ps).verified()) << n;
    }
}

TEST(Certificate, RejectsBadInput) {
    EXPECT_THROW(hypothesis1_certificate(std::vector<PellSolution>{{2, 6, 5, true}}), InvalidParameter);
    EXPECT_THROW(hypothesis1_certificate(std::vector<Integer>{2}), InvalidParameter);
}

TEST(BinaryMagnitudeParams, Examples) {
    EXPECT_EQ(alt_remark_params(5, {1, 2, 3, 4}), (std::vector<Integer>{4, 8, 55, 2981}));
    EXPECT_EQ(alt_remark_params(2, {1}), (std::vector<Integer>{4}));
    EXPECT_TRUE(binary_magnitudes_separated({4, 8, 55, 2981}, {1, 2, 3, 4}));
    EXPECT_FALSE(binary_magnitudes_separated({3}, {1}));
}

TEST(BinaryMagnitudeParams, IntervalAgainstDoubleCosh) {
    const auto m = alt_remark_params(4, {2, 4, 5});
    for (std::size_t j = 0; j < m.size(); ++j) {
        const int k = std::vector<int>{2, 4, 5}[j];
        const double lo = 2 * std::cosh(std::ldexp(1.0, k - 1));
        const double mj = m[j].convert_to<double>();
        EXPECT_GE(mj, lo);
        EXPECT_LT(mj - 1, lo);
        EXPECT_LT(mj, 2 * std::cosh(std::ldexp(1.0, k)));
    }
}

TEST(BinaryMagnitudeParams, Errors) {
    EXPECT_THROW(alt_remark_params(3, {2, 1}), InvalidParameter);
    EXPECT_THROW(alt_remark_params(3, {1}), InvalidParameter);
    EXPECT_THROW(alt_remark_params(2, {0}), InvalidParameter);
    EXPECT_THROW(alt_remark_params(2, {21}), InvalidParameter);
}

TEST(BinaryMagnitudeParams, PellFromM) {
    const auto p = pell_from_m(2981);
    EXPECT_TRUE(p.satisfies());
    EXPECT_TRUE(is_square_free(p.d));
    EXPECT_EQ(pell_from_m(6).d, 2);
    EXPECT_EQ(pell_from_m(6).k, 4);
}
