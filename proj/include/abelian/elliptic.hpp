#pragma once

// Floating-point evaluation of the short Jacobi theta function and the
// elliptic structure functions built from it.
//
// Conventions:
//   theta_a(z) = (z; a)_inf (a/z; a)_inf,   0 < a < 1
//   U_a(z)     = q^{2/N-2} theta_a(q^2 z^2) theta_a(q^2 z^-2) / (theta_a(z^2) theta_a(z^-2))
//   U(z)       = U_{q^{2N}}(z)
//
// theta is evaluated after moving z into the annulus a <= |z| < 1 with
// theta_a(a^k z) = (-1)^k a^{-k(k-1)/2} z^{-k} theta_a(z). U_a is invariant
// under z^2 -> a z^2, and its argument is reduced that way first.

#include <abelian/errors.hpp>
#include <abelian/lattice.hpp>
#include <abelian/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace abelian::elliptic {

using complex = std::complex<double>;
using lattice::LambdaPair;
using lattice::Surface;

struct EllipticContext {
    integer N = 3;
    double q = 0.5;
    double eps_trunc = 1e-16;
    double tol = 1e-10;

    EllipticContext() = default;
    EllipticContext(integer N_, double q_, double eps = 1e-16, double tol_ = 1e-10)
        : N(N_), q(q_), eps_trunc(eps), tol(tol_)
    {
        validate();
    }

    void validate() const
    {
        if (N < 2) throw domain_error("N must be >= 2");
        if (!(q > 0.0 && q < 1.0)) throw domain_error("q must lie in (0,1)");
        if (!(eps_trunc > 0.0) || !(tol > 0.0)) throw domain_error("eps_trunc and tol must be positive");
    }

    /// q^{2N}, the nome of the theta functions inside U.
    double nome() const { return std::pow(q, 2.0 * static_cast<double>(N)); }

    /// q^{N t}: the factor carried by a U argument with exponent t.
    double shift(const Rational& t) const { return std::pow(q, static_cast<double>(N) * t.to_double()); }
};

namespace detail {

inline void check_nome(double a)
{
    if (!(a > 0.0 && a < 1.0)) throw domain_error("theta nome must lie in (0,1)");
}

/// Number of factors after which the dropped tail of the log-product is below eps.
inline int truncation_order(double a, double eps)
{
    const double n = std::ceil(std::log(eps) / std::log(a));
    return std::max(1, static_cast<int>(n) + 1);
}

/// theta_a(w) for a <= |w| <= 1, straight from the product.
inline complex theta_product(double a, complex w, double eps)
{
    const int n_max = truncation_order(a, eps);
    complex acc(1.0, 0.0);
    const complex aw = a / w;
    double an = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        acc *= (1.0 - w * an) * (1.0 - aw * an);
        an *= a;
    }
    return acc;
}

/// Integer k with |z| a^{-k} in [a, 1).
inline integer annulus_shift(double a, double abs_z)
{
    const double r = std::log(abs_z) / std::log(a);
    auto k = static_cast<integer>(std::ceil(r)) - 1;
    // guard against rounding at the annulus edges
    double w = abs_z * std::pow(a, -static_cast<double>(k));
    if (w >= 1.0) ++k;
    else if (w < a) --k;
    return k;
}

/// Distance of z from the lattice a^Z, measured as min_k |z a^{-k} - 1|.
inline double lattice_distance(double a, complex z)
{
    const double k = std::round(std::log(std::abs(z)) / std::log(a));
    return std::abs(z * std::pow(a, -k) - 1.0);
}

} // namespace detail

inline complex theta(double a, complex z, double eps = 1e-16)
{
    detail::check_nome(a);
    if (z == complex(0.0, 0.0) || !std::isfinite(std::abs(z))) throw domain_error("theta argument must be finite and nonzero");
    const integer k = detail::annulus_shift(a, std::abs(z));
    if (k == 0) return detail::theta_product(a, z, eps);
    const complex w = z * std::pow(a, -static_cast<double>(k));
    const double kd = static_cast<double>(k);
    const complex log_factor = -0.5 * kd * (kd - 1.0) * std::log(a) - kd * std::log(w);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_factor) * detail::theta_product(a, w, eps);
}

/// U_a(z) with the nome a in place of q^{2N}.
inline complex ufunc_a(const EllipticContext& ctx, double a, complex z)
{
    detail::check_nome(a);
    if (z == complex(0.0, 0.0)) throw domain_error("U argument must be nonzero");
    complex w = z * z;
    // U_a is invariant under w -> a w: move w to a < |w| <= 1.
    const integer k = detail::annulus_shift(a, std::abs(w));
    w *= std::pow(a, -static_cast<double>(k));
    if (detail::lattice_distance(a, w) < 10.0 * ctx.tol) {
        throw pole_error("U_a argument on a pole: z^2 in a^Z");
    }
    const double q2 = ctx.q * ctx.q;
    const double pref = std::pow(ctx.q, 2.0 / static_cast<double>(ctx.N) - 2.0);
    const complex num = theta(a, q2 * w, ctx.eps_trunc) * theta(a, q2 / w, ctx.eps_trunc);
    const complex den = theta(a, w, ctx.eps_trunc) * theta(a, 1.0 / w, ctx.eps_trunc);
    return pref * num / den;
}

inline complex ufunc(const EllipticContext& ctx, complex z) { return ufunc_a(ctx, ctx.nome(), z); }

/// U(q^{N t} x) with t reduced modulo 1 first.
inline complex ufunc_shifted(const EllipticContext& ctx, const Rational& t, complex x)
{
    return ufunc(ctx, ctx.shift(t.frac()) * x);
}

/// F_a(x) for s = q^{N s_exponent}.
inline complex calF(const EllipticContext& ctx, const Rational& s_exponent, integer a, complex x)
{
    complex acc(1.0, 0.0);
    if (a > 0) {
        for (integer l = 0; l < a; ++l) acc *= ufunc_shifted(ctx, s_exponent * Rational(l), x);
    } else if (a < 0) {
        for (integer l = 1; l <= -a; ++l) acc /= ufunc_shifted(ctx, s_exponent * Rational(-l), x);
    }
    return acc;
}

/// Explicit half-nomes s = -p^{1/2} and s* = -p*^{1/2}.
struct HalfNomes {
    complex s;
    complex s_star;
};

/// s = q^{-N lambda/m}, s* = q^{-N lambda*/n} for real (possibly perturbed) lambda.
inline HalfNomes half_nomes(const EllipticContext& ctx, const Surface& surf, double lambda)
{
    if (surf.has_zero_index()) {
        throw degenerate_parametrization("lambda parametrization undefined on S_{" + surf.str() + "}");
    }
    const double N = static_cast<double>(ctx.N);
    const double lambda_star = 1.0 - lambda;
    return {std::pow(ctx.q, -N * lambda / static_cast<double>(surf.m())),
            std::pow(ctx.q, -N * lambda_star / static_cast<double>(surf.n()))};
}

namespace detail {

/// prod over the four blocks of Y with U evaluated through `u_of_power`,
/// where u_of_power(which, k) = U(h^k x) for h = s (which = 0) or s* (which = 1).
template <class UOfPower>
complex y_product(integer m, integer n, UOfPower&& u_of_power)
{
    const integer am = std::abs(m), an = std::abs(n);
    complex num(1.0, 0.0), den(1.0, 0.0);
    if (am != 0 && an != 0) {
        for (integer l = 1; l <= am; ++l) num *= u_of_power(0, -l);
        for (integer l = 1; l < an; ++l) num *= u_of_power(1, l);
        for (integer l = 1; l < am; ++l) den *= u_of_power(0, l);
        for (integer l = 1; l <= an; ++l) den *= u_of_power(1, -l);
    } else if (am == 0) {
        for (integer l = 0; l < an; ++l) num *= u_of_power(1, l);
        for (integer l = 1; l <= an; ++l) den *= u_of_power(1, -l);
    } else {
        for (integer l = 1; l <= am; ++l) num *= u_of_power(0, -l);
        for (integer l = 0; l < am; ++l) den *= u_of_power(0, l);
    }
    return num / den;
}

} // namespace detail

/// Y_{m,n}(x) from explicit (possibly complex) half-nomes.
inline complex yfunc(const EllipticContext& ctx, const Surface& surf, const HalfNomes& h, complex x)
{
    return detail::y_product(surf.m(), surf.n(), [&](int which, integer k) {
        const complex base = which == 0 ? h.s : h.s_star;
        return ufunc(ctx, std::pow(base, static_cast<double>(k)) * x);
    });
}

/// Y_{m,n}(x) on the line with exact coordinate `lam`. Each U argument is
/// q^{N t} x with the exponent t reduced modulo 1 before evaluation. On
/// S_{0,n} (S_{m,0}) the surface relation fixes s* = q^{-N/n} (s = q^{-N/m}).
inline complex yfunc(const EllipticContext& ctx, const Surface& surf, const LambdaPair& lam, complex x)
{
    const integer m = surf.m(), n = surf.n();
    Rational e_p(0), e_ps(0);
    if (m != 0 && n != 0) {
        e_p = -lam.lambda / Rational(m);
        e_ps = -lam.lambda_star / Rational(n);
    } else if (m == 0) {
        e_ps = Rational(-1, n);
    } else {
        e_p = Rational(-1, m);
    }
    return detail::y_product(m, n, [&](int which, integer k) {
        const Rational& e = which == 0 ? e_p : e_ps;
        return ufunc_shifted(ctx, e * Rational(k), x);
    });
}

namespace detail {

/// Calls f(q^{i-j} x) for i, j running over (1-k)/2 .. (k-1)/2 in unit steps.
template <class F>
void for_each_fusion_shift(const EllipticContext& ctx, integer k, integer kp, complex x, F&& f)
{
    if (k < 1 || kp < 1 || k > ctx.N || kp > ctx.N) throw precondition_error("fusion indices must satisfy 1 <= k, k' <= N");
    for (integer i2 = 1 - k; i2 <= k - 1; i2 += 2) {
        for (integer j2 = 1 - kp; j2 <= kp - 1; j2 += 2) {
            f(std::pow(ctx.q, 0.5 * static_cast<double>(i2 - j2)) * x);
        }
    }
}

} // namespace detail

inline complex exchange_factor(const EllipticContext& ctx, const Surface& surf, const LambdaPair& lam, integer k,
                               integer kp, complex x)
{
    complex acc(1.0, 0.0);
    detail::for_each_fusion_shift(ctx, k, kp, x, [&](complex y) { acc *= yfunc(ctx, surf, lam, y); });
    return acc;
}

/// prod_{k=1}^{m} U(s*^{-k} x) / U(s^{-k} x) on S_{m,-m}, with
/// s = q^{-N lambda/m} and s* = q^{-N(lambda-1)/m}.
inline complex centrality_ratio(const EllipticContext& ctx, integer m, integer lambda, complex x)
{
    if (m <= 0) throw precondition_error("centrality_ratio requires m > 0");
    complex acc(1.0, 0.0);
    for (integer k = 1; k <= m; ++k) {
        acc *= ufunc_shifted(ctx, Rational((lambda - 1) * k, m), x);
        acc /= ufunc_shifted(ctx, Rational(lambda * k, m), x);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Verification grids

struct Grid {
    double r1 = 0.8;
    double r2 = 1.25;
    int count = 20;

    /// x = r e^{i pi j / count}, j = 0..count-1, for r in {r1, r2}.
    std::vector<complex> points() const
    {
        std::vector<complex> out;
        out.reserve(2 * static_cast<std::size_t>(count));
        for (double r : {r1, r2}) {
            for (int j = 0; j < count; ++j) {
                out.push_back(std::polar(r, std::numbers::pi * j / count));
            }
        }
        return out;
    }
};

struct Deviation {
    double max_abs = 0.0;
    int evaluated = 0;
    int skipped = 0; ///< points dropped as pole-adjacent
};

/// max |f(x) - target| over the grid, skipping points that hit a pole.
inline Deviation max_deviation(const Grid& grid, const std::function<complex(complex)>& f,
                               complex target = complex(1.0, 0.0))
{
    Deviation d;
    for (complex x : grid.points()) {
        try {
            const complex v = f(x);
            d.max_abs = std::max(d.max_abs, std::abs(v - target));
            ++d.evaluated;
        } catch (const pole_error&) {
            ++d.skipped;
        }
    }
    return d;
}

} // namespace abelian::elliptic
