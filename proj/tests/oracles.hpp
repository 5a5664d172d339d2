#pragma once

// Independent reference computations used only by the tests. None of these
// call into the classification code they are checking.

#include <abelian/abelian.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

using abelian::integer;
using abelian::Rational;
using cplx = std::complex<double>;

/// Sorted list of (t mod 1) over numerator factors, and the same for the
/// denominator. The ratio cancels iff the two sorted lists coincide.
struct FactorLists {
    std::vector<Rational> num;
    std::vector<Rational> den;

    bool cancels()
    {
        std::sort(num.begin(), num.end());
        std::sort(den.begin(), den.end());
        return num == den;
    }
};

/// Factor exponents of Y_{m,n} written out from the four-product form
/// prod_{l=1}^{|m|} U(s^{-l}x) prod_{l=1}^{|n|-1} U(s*^l x) /
/// (prod_{l=1}^{|m|-1} U(s^l x) prod_{l=1}^{|n|} U(s*^{-l} x)), with
/// s = q^{-N lambda/m}, s* = q^{-N lambda*/n}. Only valid for m, n != 0.
inline FactorLists y_factor_lists(integer m, integer n, const Rational& lambda)
{
    const Rational ep = -lambda / Rational(m);
    const Rational eps = -(Rational(1) - lambda) / Rational(n);
    FactorLists f;
    for (integer l = 1; l <= std::abs(m); ++l) f.num.push_back((ep * Rational(-l)).frac());
    for (integer l = 1; l < std::abs(n); ++l) f.num.push_back((eps * Rational(l)).frac());
    for (integer l = 1; l < std::abs(m); ++l) f.den.push_back((ep * Rational(l)).frac());
    for (integer l = 1; l <= std::abs(n); ++l) f.den.push_back((eps * Rational(-l)).frac());
    return f;
}

/// Search for a permutation sigma of {1..m} with
/// (lambda - 1) k = lambda sigma(k) mod m for every k, by backtracking.
inline bool sigma_matching_exists(integer m, integer lambda)
{
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    auto residue = [m](integer v) { return ((v % m) + m) % m; };
    std::function<bool(integer)> place = [&](integer k) -> bool {
        if (k > m) return true;
        for (integer s = 1; s <= m; ++s) {
            if (used[static_cast<std::size_t>(s)]) continue;
            if (residue((lambda - 1) * k) != residue(lambda * s)) continue;
            used[static_cast<std::size_t>(s)] = true;
            if (place(k + 1)) return true;
            used[static_cast<std::size_t>(s)] = false;
        }
        return false;
    };
    return place(1);
}

/// Same question answered with std::next_permutation (small m only).
inline bool sigma_matching_exhaustive(integer m, integer lambda)
{
    std::vector<integer> sigma(static_cast<std::size_t>(m));
    for (integer k = 0; k < m; ++k) sigma[static_cast<std::size_t>(k)] = k + 1;
    auto residue = [m](integer v) { return ((v % m) + m) % m; };
    do {
        bool ok = true;
        for (integer k = 1; k <= m && ok; ++k) {
            ok = residue((lambda - 1) * k) == residue(lambda * sigma[static_cast<std::size_t>(k - 1)]);
        }
        if (ok) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

/// Condition 2 checked straight from its statement.
inline bool condition2_direct(integer m, integer n, const Rational& lambda)
{
    if (lambda.is_integer()) return false;
    const Rational x = lambda / Rational(m);
    const Rational diff = x - (Rational(1) - lambda) / Rational(n);
    return diff.is_integer() && (m + n) % x.denominator() == 0;
}

/// All surfaces (m', n') in a box that satisfy m' n lambda + n' m lambda* = m n,
/// i.e. contain the line of `lambda` on S_{m,n}, other than S_{m,n} itself.
inline std::vector<abelian::lattice::Surface> diophantine_box(integer m, integer n, const Rational& lambda,
                                                              integer box)
{
    std::vector<abelian::lattice::Surface> out;
    const Rational lambda_star = Rational(1) - lambda;
    for (integer mp = -box; mp <= box; ++mp) {
        for (integer np = -box; np <= box; ++np) {
            if ((mp == 0 && np == 0) || (mp == m && np == n)) continue;
            if (Rational(mp * n) * lambda + Rational(np * m) * lambda_star == Rational(m * n)) out.emplace_back(mp, np);
        }
    }
    return out;
}

/// theta_a(z) from the product with no argument reduction, many factors.
inline cplx theta_unreduced(double a, cplx z, int factors = 4000)
{
    cplx acc(1.0, 0.0);
    double an = 1.0;
    for (int n = 0; n < factors; ++n) {
        acc *= (1.0 - z * an) * (1.0 - a / z * an);
        an *= a;
        if (an < 1e-300) break;
    }
    return acc;
}

/// U_a(z) from unreduced theta products.
inline cplx ufunc_unreduced(double q, integer N, double a, cplx z)
{
    const cplx w = z * z;
    const double q2 = q * q;
    const double pref = std::pow(q, 2.0 / static_cast<double>(N) - 2.0);
    return pref * theta_unreduced(a, q2 * w) * theta_unreduced(a, q2 / w) /
           (theta_unreduced(a, w) * theta_unreduced(a, 1.0 / w));
}

/// x d/dx ln g(x) by a central difference with relative step h.
inline cplx log_derivative_fd(const std::function<cplx(cplx)>& g, cplx x, double h = 1e-6)
{
    return std::log(g(x * (1.0 + h)) / g(x * (1.0 - h))) / (2.0 * h);
}

} // namespace oracles
