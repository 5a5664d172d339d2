#pragma once

// Poisson structure functions f(x) on abelianity lines.
//
// Two assemblies are provided for each line type:
//   compact: x d/dx of logarithms of U_a, with the log-derivative of every
//            theta factor taken from the quasi-periodically reduced series
//            (analytic chain rule, no numerical differentiation);
//   series:  the explicit sums over s of x^{±2} a^s / (1 - x^{±2} a^s)
//            combined as 2I(x) - I(qx) - I(x/q).
//
// Notation: T_a(y) = -y d/dy ln theta_a(y)
//                  = sum_{s>=0} y a^s/(1 - y a^s) - sum_{s>=1} y^{-1} a^s/(1 - y^{-1} a^s).
// It satisfies T_a(a y) = T_a(y) + 1 and T_a(y) + T_a(1/y) = -1.

#include <abelian/elliptic.hpp>
#include <abelian/errors.hpp>
#include <abelian/lattice.hpp>
#include <abelian/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

namespace abelian::poisson {

using elliptic::complex;
using elliptic::EllipticContext;
using lattice::Surface;

namespace detail {

inline int series_order(double a, double magnitude, double eps)
{
    const double M = std::max(1.0, magnitude);
    const double n = (std::log(eps) + std::log1p(-a) - std::log(2.0 * M)) / std::log(a);
    return std::max(1, static_cast<int>(std::ceil(n)) + 1);
}

inline void check_pole(double a, complex y, double tol)
{
    if (y == complex(0.0, 0.0) || elliptic::detail::lattice_distance(a, y) < 10.0 * tol) {
        throw pole_error("log-derivative argument on a pole: y in a^Z");
    }
}

/// sum_{s >= first} y a^s / (1 - y a^s)
inline complex geometric_sum(double a, complex y, int first, double eps)
{
    const int n_max = series_order(a, std::abs(y), eps);
    complex acc(0.0, 0.0);
    double as = std::pow(a, first);
    for (int s = first; s <= n_max; ++s) {
        const complex t = y * as;
        acc += t / (1.0 - t);
        as *= a;
    }
    return acc;
}

} // namespace detail

/// T_a(x), summed directly.
inline complex theta_logderiv_series(double a, complex x, double eps = 1e-16, double tol = 1e-10)
{
    elliptic::detail::check_nome(a);
    detail::check_pole(a, x, tol);
    return detail::geometric_sum(a, x, 0, eps) - detail::geometric_sum(a, 1.0 / x, 1, eps);
}

/// T_a(x) after moving x into a <= |x| < 1 with T_a(a^k w) = T_a(w) + k.
inline complex theta_logderiv(double a, complex x, double eps = 1e-16, double tol = 1e-10)
{
    elliptic::detail::check_nome(a);
    detail::check_pole(a, x, tol);
    const integer k = elliptic::detail::annulus_shift(a, std::abs(x));
    const complex w = x * std::pow(a, -static_cast<double>(k));
    return theta_logderiv_series(a, w, eps, tol) + static_cast<double>(k);
}

/// z d/dz ln U_a(z). The arguments z^{±2} contribute a chain-rule factor ±2.
inline complex ufunc_a_logderiv(const EllipticContext& ctx, double a, complex z)
{
    const complex z2 = z * z;
    const double q2 = ctx.q * ctx.q;
    auto T = [&](complex y) { return theta_logderiv(a, y, ctx.eps_trunc, ctx.tol); };
    return 2.0 * (T(z2) - T(q2 * z2) + T(q2 / z2) - T(1.0 / z2));
}

// ---------------------------------------------------------------------------
// Type (a): integer lambda

struct PoissonParamsA {
    Surface surface;
    integer lambda;
    integer w;        ///< gcd(lambda, m), sign of m
    integer w_star;   ///< gcd(lambda*, n), sign of n
    integer ell;      ///< m / w, reduced denominator of lambda/m
    integer ell_star; ///< n / w*
};

inline PoissonParamsA make_params_a(const Surface& s, integer lambda)
{
    if (s.has_zero_index()) throw precondition_error("type (a) structure function needs m, n != 0");
    const integer lambda_star = 1 - lambda;
    auto signed_gcd = [](integer v, integer ref) {
        const integer g = gcd(v, ref);
        return ref < 0 ? -g : g;
    };
    PoissonParamsA p{s, lambda, signed_gcd(lambda, s.m()), signed_gcd(lambda_star, s.n()), 0, 0};
    p.ell = s.m() / p.w;
    p.ell_star = s.n() / p.w_star;
    return p;
}

inline complex f_type_a(const EllipticContext& ctx, const PoissonParamsA& p, complex x)
{
    const double N = static_cast<double>(ctx.N);
    const double a1 = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.ell));
    const double a2 = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.ell_star));
    const double c1 = static_cast<double>(p.surface.m()) / static_cast<double>(p.ell);
    const double c2 = static_cast<double>(p.surface.n()) / static_cast<double>(p.ell_star);
    const complex bracket = c1 * ufunc_a_logderiv(ctx, a1, x) + c2 * ufunc_a_logderiv(ctx, a2, x);
    return -N * static_cast<double>(p.lambda) * std::log(ctx.q) * bracket;
}

namespace detail {

/// sum_{s>=0} y a^s/(1-y a^s) - sum_{s>=1} y^{-1} a^s/(1-y^{-1} a^s), written out.
inline complex bracket_sum(const EllipticContext& ctx, double a, complex x2)
{
    check_pole(a, x2, ctx.tol);
    return geometric_sum(a, x2, 0, ctx.eps_trunc) - geometric_sum(a, 1.0 / x2, 1, ctx.eps_trunc);
}

template <class I>
complex second_difference(const EllipticContext& ctx, complex x, I&& integrand)
{
    return 2.0 * integrand(x) - integrand(ctx.q * x) - integrand(x / ctx.q);
}

} // namespace detail

inline complex f_type_a_series(const EllipticContext& ctx, const PoissonParamsA& p, complex x)
{
    const double N = static_cast<double>(ctx.N);
    const double a1 = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.ell));
    const double a2 = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.ell_star));
    const double c1 = static_cast<double>(p.surface.m()) / static_cast<double>(p.ell);
    const double c2 = static_cast<double>(p.surface.n()) / static_cast<double>(p.ell_star);
    auto I = [&](complex y) {
        const complex y2 = y * y;
        return c1 * detail::bracket_sum(ctx, a1, y2) + c2 * detail::bracket_sum(ctx, a2, y2);
    };
    return -2.0 * N * static_cast<double>(p.lambda) * std::log(ctx.q) * detail::second_difference(ctx, x, I);
}

// ---------------------------------------------------------------------------
// Type (b): lambda/m - lambda*/n integral, d | m+n

struct PoissonParamsB {
    Surface surface;
    Rational lambda;
    integer d;  ///< reduced denominator of lambda/m, divides m+n
    integer mu; ///< m mod d
};

/// Parameters of a condition-2 line. With `allow_integer_overlap` an integer
/// lambda whose data also satisfies condition 2 is accepted with mu = 0,
/// which is where the type (a) and type (b) formulas meet.
inline PoissonParamsB make_params_b(const Surface& s, const Rational& lambda, bool allow_integer_overlap = false)
{
    if (s.has_zero_index()) throw precondition_error("type (b) structure function needs m, n != 0");
    const auto lam = lattice::LambdaPair::from_lambda(lambda);
    const auto d = lattice::detail::condition2_denominator(s, lam);
    if (!d) throw precondition_error("lambda = " + lambda.str() + " is not a condition-2 line on S_{" + s.str() + "}");
    const integer mu = mod_floor(s.m(), *d);
    if (mu == 0 && !allow_integer_overlap) {
        throw precondition_error("remainder of m by d vanishes (integer lambda): use the type (a) formula");
    }
    return {s, lambda, *d, mu};
}

namespace detail {

struct TypeBWeights {
    double main;  ///< 1 + mu^2/(mn)
    double base;  ///< d mu/(mn)
    double shift; ///< d/(mn)
    double outer; ///< (m+n)/d
};

inline TypeBWeights weights(const PoissonParamsB& p)
{
    const double m = static_cast<double>(p.surface.m());
    const double n = static_cast<double>(p.surface.n());
    const double d = static_cast<double>(p.d);
    const double mu = static_cast<double>(p.mu);
    return {1.0 + mu * mu / (m * n), d * mu / (m * n), d / (m * n), (m + n) / d};
}

/// s = q^{-N lambda/m}, so p = s^2.
inline double half_nome(const EllipticContext& ctx, const PoissonParamsB& p)
{
    const Rational e = -(p.lambda / Rational(p.surface.m()));
    return ctx.shift(e);
}

} // namespace detail

inline complex f_type_b(const EllipticContext& ctx, const PoissonParamsB& p, complex x)
{
    const double N = static_cast<double>(ctx.N);
    const double a = ctx.nome();
    const double ad = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.d));
    const auto w = detail::weights(p);
    const double s = detail::half_nome(ctx, p);

    complex bracket = w.main * ufunc_a_logderiv(ctx, ad, x) - w.base * ufunc_a_logderiv(ctx, a, x);
    for (integer k = 1; k < p.mu; ++k) {
        const double sk = std::pow(s, static_cast<double>(k));
        bracket += w.shift * static_cast<double>(k - p.mu) *
                   (ufunc_a_logderiv(ctx, a, sk * x) + ufunc_a_logderiv(ctx, a, x / sk));
    }
    return -N * p.lambda.to_double() * std::log(ctx.q) * w.outer * bracket;
}

inline complex f_type_b_series(const EllipticContext& ctx, const PoissonParamsB& p, complex x)
{
    const double N = static_cast<double>(ctx.N);
    const double a = ctx.nome();
    const double ad = std::pow(ctx.q, 2.0 * N / static_cast<double>(p.d));
    const auto w = detail::weights(p);
    const double s = detail::half_nome(ctx, p);
    const double nome_p = s * s;

    auto I = [&](complex y) {
        const complex y2 = y * y;
        const complex yi2 = 1.0 / y2;
        complex acc = w.main * detail::bracket_sum(ctx, ad, y2) + w.base * detail::bracket_sum(ctx, a, y2);
        for (integer k = 0; k < p.mu; ++k) {
            const double pk = std::pow(nome_p, static_cast<double>(k));
            for (complex arg : {y2 * pk, y2 / pk, yi2 * pk, yi2 / pk}) detail::check_pole(a, arg, ctx.tol);
            const complex term = detail::geometric_sum(a, y2 * pk, 0, ctx.eps_trunc) +
                                 detail::geometric_sum(a, y2 / pk, 1, ctx.eps_trunc) -
                                 detail::geometric_sum(a, yi2 * pk, 0, ctx.eps_trunc) -
                                 detail::geometric_sum(a, yi2 / pk, 1, ctx.eps_trunc);
            acc += w.shift * static_cast<double>(k - p.mu) * term;
        }
        return acc;
    };
    return -2.0 * N * p.lambda.to_double() * std::log(ctx.q) * w.outer * detail::second_difference(ctx, x, I);
}

// ---------------------------------------------------------------------------

inline complex structure_function(const EllipticContext& ctx, const PoissonParamsA& p, complex x)
{
    return f_type_a(ctx, p, x);
}

inline complex structure_function(const EllipticContext& ctx, const PoissonParamsB& p, complex x)
{
    return f_type_b(ctx, p, x);
}

/// f^{(k,k')}(x) = sum_{i,j} f(q^{i-j} x), i and j in (1-k)/2 .. (k-1)/2.
template <class Params>
complex f_kk(const EllipticContext& ctx, const Params& p, integer k, integer kp, complex x)
{
    complex acc(0.0, 0.0);
    elliptic::detail::for_each_fusion_shift(ctx, k, kp, x, [&](complex y) { acc += structure_function(ctx, p, y); });
    return acc;
}

} // namespace abelian::poisson
