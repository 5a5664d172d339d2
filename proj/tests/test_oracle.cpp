#include "oracles.hpp"

#include <abelian/lattice.hpp>
#include <abelian/oracle.hpp>

#include <gtest/gtest.h>

using namespace abelian;
using namespace abelian::lattice;
using abelian::oracle::ExponentMultiset;

namespace {

LambdaPair lam(integer num, integer den = 1) { return LambdaPair::from_lambda(Rational(num, den)); }

} // namespace

TEST(ExponentMultiset, ReducesModOneAndCancels)
{
    ExponentMultiset ms;
    ms.add_numerator(Rational(4, 3));
    EXPECT_EQ(ms.multiplicity(Rational(1, 3)), 1);
    ms.add_denominator(Rational(-2, 3));
    EXPECT_TRUE(ms.empty());
    ms.add_numerator(Rational(1, 3));
    EXPECT_FALSE(oracle::is_abelian(ms));
    EXPECT_TRUE(oracle::is_abelian(ExponentMultiset{}));
}

TEST(ExchangeExponents, Examples)
{
    EXPECT_TRUE(oracle::exchange_exponents({1, 2}, lam(1, 3)).empty());
    EXPECT_TRUE(oracle::exchange_exponents({3, 6}, lam(-1)).empty());
    EXPECT_FALSE(oracle::exchange_exponents({2, 5}, lam(-2, 3)).empty());
    for (integer num : {-3, 0, 1, 5}) {
        EXPECT_TRUE(oracle::exchange_exponents({0, 3}, lam(num, 7)).empty());
        EXPECT_TRUE(oracle::exchange_exponents({-4, 0}, lam(num, 7)).empty());
    }
}

TEST(ExchangeExponents, MatchesSortedFactorLists)
{
    for (integer m = -6; m <= 6; ++m) {
        for (integer n = -6; n <= 6; ++n) {
            if (m == 0 || n == 0) continue;
            for (integer d = 1; d <= 7; ++d) {
                for (integer a = -2 * d; a <= 2 * d; ++a) {
                    const Rational l(a, d);
                    auto lists = oracles::y_factor_lists(m, n, l);
                    EXPECT_EQ(oracle::exchange_exponents({m, n}, LambdaPair::from_lambda(l)).empty(), lists.cancels())
                        << m << "," << n << " " << l;
                }
            }
        }
    }
}

TEST(ExchangeExponents, EquivalentToClassificationAboveRankTwo)
{
    // lambda in {0, 1} puts a nome at 1 and is excluded (see ZeroLambda below).
    std::size_t checked = 0;
    for (integer m = -6; m <= 6; ++m) {
        for (integer n = -6; n <= 6; ++n) {
            if (m == 0 && n == 0) continue;
            const Surface s(m, n);
            for (integer d = 1; d <= 12; ++d) {
                for (integer a = -3 * d; a <= 3 * d; ++a) {
                    if (gcd(a, d) != 1) continue;
                    const auto lp = lam(a, d);
                    if (lp.lambda.is_zero() || lp.lambda_star.is_zero()) continue;
                    const bool exact = oracle::is_abelian(oracle::exchange_exponents(s, lp));
                    EXPECT_EQ(exact, classify_lambda(s, lp, 3).is_abelian()) << s.str() << " " << lp.lambda;
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 40000u);
}

TEST(ExchangeExponents, ZeroLambdaDegenerate)
{
    // The multiset is empty, the lattice verdict is NotAbelian by convention.
    EXPECT_TRUE(oracle::exchange_exponents({2, 3}, lam(0)).empty());
    EXPECT_FALSE(classify_lambda({2, 3}, lam(0), 3).is_abelian());
}

TEST(ReducedForm, Examples)
{
    const auto r12 = oracle::reduced_form({1, 2}, lam(1, 3));
    EXPECT_EQ(r12.mu_bar, r12.mu_bar_prime);
    EXPECT_TRUE(r12.to_multiset().empty());

    const auto r36 = oracle::reduced_form({3, 6}, lam(-1));
    EXPECT_TRUE(r36.integer_shortcut);
    EXPECT_TRUE(r36.numerator.empty());
    EXPECT_TRUE(r36.denominator.empty());

    const auto r25 = oracle::reduced_form({2, 5}, lam(-2, 3));
    EXPECT_EQ(r25.d, 3);
    EXPECT_EQ(r25.d_prime, 3);
    EXPECT_NE((r25.a - r25.b) % 3, 0);
    EXPECT_FALSE(r25.to_multiset().empty());

    EXPECT_THROW(oracle::reduced_form({0, 2}, lam(1, 3)), degenerate_parametrization);
}

TEST(ReducedForm, ReproducesExchangeExponents)
{
    for (integer m = -6; m <= 6; ++m) {
        for (integer n = -6; n <= 6; ++n) {
            if (m == 0 || n == 0) continue;
            for (integer d = 2; d <= 9; ++d) {
                for (integer a = -2 * d; a <= 2 * d; ++a) {
                    const auto lp = lam(a, d);
                    if (lp.lambda.is_integer()) continue;
                    EXPECT_EQ(oracle::reduced_form({m, n}, lp).to_multiset(), oracle::exchange_exponents({m, n}, lp))
                        << m << "," << n << " " << lp.lambda;
                }
            }
        }
    }
}

TEST(CentralityExponents, Examples)
{
    EXPECT_TRUE(oracle::centrality_exponents(3, 2).empty());
    EXPECT_FALSE(oracle::centrality_exponents(9, 4).empty());
    EXPECT_TRUE(oracle::centrality_exponents(9, 2).empty());
    EXPECT_THROW(oracle::centrality_exponents(0, 2), precondition_error);
}

TEST(CentralityExponents, EquivalentToSuperAbelianity)
{
    for (integer m = 1; m <= 15; m += 2) {
        for (integer l = -15; l <= 15; ++l) {
            if (gcd(m, l) != 1) continue;
            EXPECT_EQ(oracle::centrality_exponents(m, l).empty(), super_abelianity_check(m, l).super_abelian)
                << m << " " << l;
        }
    }
}

TEST(CosetCancellation, Detection)
{
    ExponentMultiset ms;
    for (integer j = 0; j < 3; ++j) ms.add_numerator(Rational(1, 7) + Rational(j, 3));
    EXPECT_TRUE(oracle::cancels_by_cosets(ms, 3));
    EXPECT_FALSE(oracle::cancels_by_cosets(ms, 2));
    ms.add_denominator(Rational(1, 7));
    EXPECT_FALSE(oracle::cancels_by_cosets(ms, 3));
    EXPECT_TRUE(oracle::cancels_by_cosets(ExponentMultiset{}, 5));
}

TEST(CosetCancellation, ExplainsCentralityAtSmallRank)
{
    // m = 9, lambda = 4: both sides are unions of cosets of Z/3.
    const auto ms = oracle::centrality_exponents(9, 4);
    EXPECT_FALSE(ms.empty());
    EXPECT_TRUE(oracle::cancels_by_cosets(ms, 3));
    EXPECT_FALSE(oracle::cancels_by_cosets(ms, 16));
}

TEST(CosetCancellation, NeverReachesExchangeFunctionsInBox)
{
    for (integer N : {3, 4, 5}) {
        for (integer m = -6; m <= 6; ++m) {
            for (integer n = -6; n <= 6; ++n) {
                if (m == 0 || n == 0) continue;
                for (integer d = 1; d <= 12; ++d) {
                    for (integer a = -3 * d; a <= 3 * d; ++a) {
                        const auto ms = oracle::exchange_exponents({m, n}, lam(a, d));
                        if (!ms.empty()) {
                            EXPECT_FALSE(oracle::cancels_by_cosets(ms, N)) << m << "," << n << " " << a << "/" << d;
                        }
                    }
                }
            }
        }
    }
}
