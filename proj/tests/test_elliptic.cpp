#include "oracles.hpp"

#include <abelian/elliptic.hpp>
#include <abelian/oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace abelian;
using namespace abelian::elliptic;
using lattice::LambdaPair;

namespace {

LambdaPair lam(integer num, integer den = 1) { return LambdaPair::from_lambda(Rational(num, den)); }

} // namespace

TEST(Context, Validation)
{
    EXPECT_THROW(EllipticContext(1, 0.5), domain_error);
    EXPECT_THROW(EllipticContext(3, 1.0), domain_error);
    EXPECT_THROW(EllipticContext(3, 0.0), domain_error);
    EXPECT_THROW(EllipticContext(3, 0.5, -1.0), domain_error);
    EXPECT_NO_THROW(EllipticContext(2, 0.9));
}

TEST(Theta, ZerosAndFunctionalEquation)
{
    EXPECT_LT(std::abs(theta(0.3, 1.0)), 1e-15);
    EXPECT_LT(std::abs(theta(0.3, 0.3)), 1e-15);
    const double a2 = 0.25;
    EXPECT_LT(std::abs(theta(a2, a2 * 0.5) + theta(a2, 0.5) / 0.5), 1e-12);
    const complex z(0.7, 0.2);
    EXPECT_LT(std::abs(theta(a2, a2 * z) + theta(a2, z) / z), 1e-12);
    EXPECT_LT(std::abs(theta(a2, 0.5 * z) - theta(a2, 0.5 / z)), 1e-12);
    EXPECT_THROW(theta(1.5, z), domain_error);
    EXPECT_THROW(theta(0.5, 0.0), domain_error);
}

TEST(Theta, ReducedMatchesUnreduced)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 0.8), ur(-3.0, 3.0), uphi(0.0, 6.28);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng);
        const complex z = std::polar(std::exp(ur(rng)), uphi(rng));
        const complex ref = oracles::theta_unreduced(a, z);
        if (!std::isfinite(std::abs(ref)) || std::abs(ref) > 1e100) continue;
        EXPECT_LT(std::abs(theta(a, z) - ref), 1e-11 * std::max(1.0, std::abs(ref))) << a << " " << z;
    }
}

TEST(UFunc, SymmetryAndPeriodicity)
{
    const EllipticContext ctx(3, 0.6);
    EXPECT_LT(std::abs(ufunc(ctx, 1.7) - ufunc(ctx, 1.0 / 1.7)), 1e-12);
    const complex z(1.3, 0.2);
    EXPECT_LT(std::abs(ufunc(ctx, std::pow(0.6, 3) * z) - ufunc(ctx, z)), 1e-10);
    EXPECT_EQ(ufunc(ctx, -z), ufunc(ctx, z));
    EXPECT_THROW(ufunc(ctx, 1.0), pole_error);
    EXPECT_THROW(ufunc(ctx, std::pow(0.6, 3)), pole_error);
}

TEST(UFunc, NomeVariantAgreesWithDefault)
{
    const EllipticContext ctx(3, 0.5);
    EXPECT_LT(std::abs(ufunc_a(ctx, ctx.nome(), 0.9) - ufunc(ctx, 0.9)), 1e-13);
    EXPECT_LT(std::abs(ufunc_a(ctx, 0.3, 2.1) - ufunc_a(ctx, 0.3, 1.0 / 2.1)), 1e-12);
}

TEST(UFunc, ReducedMatchesUnreducedForLargeArguments)
{
    const EllipticContext ctx(3, 0.6);
    const double a = 0.3;
    for (double r : {1.1, 3.0, 10.0, 50.0, 300.0, 1000.0}) {
        const complex z = std::polar(r, 0.37);
        const complex ref = oracles::ufunc_unreduced(ctx.q, ctx.N, a, z);
        EXPECT_LT(std::abs(ufunc_a(ctx, a, z) - ref), 1e-11 * std::max(1.0, std::abs(ref))) << r;
    }
}

TEST(CalF, Examples)
{
    const EllipticContext ctx(3, 0.6);
    const complex x(1.4, 0.0);
    EXPECT_EQ(calF(ctx, Rational(1, 3), 0, x), complex(1.0, 0.0));
    EXPECT_LT(std::abs(calF(ctx, Rational(1, 3), 1, x) - ufunc(ctx, x)), 1e-15);
    const complex prod = calF(ctx, Rational(1, 3), -1, x) * ufunc(ctx, ctx.shift(Rational(-1, 3)) * x);
    EXPECT_LT(std::abs(prod - 1.0), 1e-12);
}

TEST(YFunc, AbelianLinesGiveOne)
{
    const EllipticContext ctx(3, 0.6);
    EXPECT_LT(std::abs(yfunc(ctx, {1, 2}, lam(1, 3), 1.37) - 1.0), 1e-10);
    EXPECT_LT(std::abs(yfunc(ctx, {3, 6}, lam(-1), complex(0.9, 0.4)) - 1.0), 1e-10);
}

TEST(YFunc, WholeSurfaceWithFreeHalfNome)
{
    const EllipticContext ctx(3, 0.6);
    const complex x(0.8, 0.1);
    // s*^3 = q^{-3}: any cube root, including the complex ones.
    for (int j = 0; j < 3; ++j) {
        const complex s_star = std::polar(std::pow(0.6, -1.0), 2.0 * std::numbers::pi * j / 3.0);
        for (complex s : {complex(0.3, 0.0), complex(-0.7, 0.2), complex(2.0, 1.0)}) {
            EXPECT_LT(std::abs(yfunc(ctx, {0, 3}, HalfNomes{s, s_star}, x) - 1.0), 1e-10);
        }
    }
    EXPECT_LT(std::abs(yfunc(ctx, {0, 3}, lam(0), x) - 1.0), 1e-10);
}

TEST(YFunc, PerturbedLineIsNotOne)
{
    const EllipticContext ctx(3, 0.6);
    const lattice::Surface s(2, 5);
    const auto h = half_nomes(ctx, s, -2.0 / 3.0 + 0.01);
    const auto dev = max_deviation(Grid{}, [&](complex x) { return yfunc(ctx, s, h, x); });
    EXPECT_GT(dev.max_abs, 1e-3);
}

TEST(YFunc, ExactAndHalfNomePathsAgree)
{
    const EllipticContext ctx(3, 0.55);
    for (const auto& [m, n, num, den] : std::vector<std::tuple<integer, integer, integer, integer>>{
             {2, 5, -2, 3}, {3, 4, 1, 5}, {-2, 3, 3, 7}, {1, 2, 1, 3}}) {
        const lattice::Surface s(m, n);
        const auto lp = lam(num, den);
        const auto h = half_nomes(ctx, s, lp.lambda.to_double());
        for (complex x : Grid{}.points()) {
            const complex a = yfunc(ctx, s, lp, x);
            const complex b = yfunc(ctx, s, h, x);
            EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST(ExchangeFactor, Expansion)
{
    const EllipticContext ctx(3, 0.6);
    const lattice::Surface s(2, 5);
    const auto lp = lam(-2, 3);
    const complex x(1.1, 0.3);
    EXPECT_LT(std::abs(exchange_factor(ctx, s, lp, 1, 1, x) - yfunc(ctx, s, lp, x)), 1e-14);
    const complex expect = yfunc(ctx, s, lp, std::sqrt(0.6) * x) * yfunc(ctx, s, lp, x / std::sqrt(0.6));
    EXPECT_LT(std::abs(exchange_factor(ctx, s, lp, 2, 1, x) - expect), 1e-12 * std::abs(expect));
    EXPECT_THROW(exchange_factor(ctx, s, lp, 4, 1, x), precondition_error);
}

TEST(ExchangeFactor, UnitOnAbelianLines)
{
    const EllipticContext ctx(3, 0.6);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.7, 1.4), uphi(0.0, 6.28);
    for (int i = 0; i < 10; ++i) {
        const complex x = std::polar(ur(rng), uphi(rng));
        for (integer k = 1; k <= 3; ++k) {
            for (integer kp = 1; kp <= 3; ++kp) {
                EXPECT_LT(std::abs(exchange_factor(ctx, {3, 6}, lam(-1), k, kp, x) - 1.0), 1e-9);
                EXPECT_LT(std::abs(exchange_factor(ctx, {1, 2}, lam(1, 3), k, kp, x) - 1.0), 1e-9);
            }
        }
    }
}

TEST(CentralityRatio, Examples)
{
    const EllipticContext ctx(3, 0.55);
    EXPECT_LT(std::abs(centrality_ratio(ctx, 3, 2, 1.21) - 1.0), 1e-10);
    // m = 9, lambda = 4 at N = 3: the multiset is nonempty but made of full
    // cosets of Z/3, so the ratio is identically 1 anyway.
    const auto dev3 = max_deviation(Grid{}, [&](complex x) { return centrality_ratio(ctx, 9, 4, x); });
    EXPECT_LT(dev3.max_abs, 1e-9);
    for (integer N : {2, 7, 16}) {
        const EllipticContext big(N, 0.55);
        const auto dev = max_deviation(Grid{}, [&](complex x) { return centrality_ratio(big, 9, 4, x); });
        EXPECT_GT(dev.max_abs, 1e-3) << N;
    }
    EXPECT_LT(std::abs(centrality_ratio(ctx, 1, 1, 1.21) - 1.0), 1e-12);
}

TEST(Grid, DefaultShape)
{
    const auto pts = Grid{}.points();
    ASSERT_EQ(pts.size(), 40u);
    EXPECT_NEAR(std::abs(pts[0]), 0.8, 1e-15);
    EXPECT_NEAR(std::abs(pts[20]), 1.25, 1e-15);
}

TEST(MaxDeviation, SkipsPoles)
{
    const EllipticContext ctx(3, 0.6);
    const Grid g{1.0, 1.0, 4};
    const auto dev = max_deviation(g, [&](complex x) { return ufunc(ctx, x); });
    EXPECT_GT(dev.skipped, 0);
    EXPECT_EQ(dev.skipped + dev.evaluated, 8);
}

TEST(UFunc, CosetProductIsOne)
{
    // q^2 is the N-th root of the nome, so prod_{j<N} U(q^j x) telescopes to 1.
    for (integer N = 2; N <= 5; ++N) {
        const EllipticContext ctx(N, 0.6);
        for (complex x : Grid{}.points()) {
            complex prod(1.0, 0.0);
            for (integer j = 0; j < N; ++j) prod *= ufunc(ctx, std::pow(0.6, static_cast<double>(j)) * x);
            EXPECT_LT(std::abs(prod - 1.0), 1e-10);
        }
    }
}
