#pragma once

// Exact geometry of critical surfaces S_{m,n} and the arithmetic
// classification of abelianity lines.
//
// A line in moduli space is stored through the q-exponents of the two
// half-nomes s = -p^{1/2} = q^{N e_p} and s* = -p*^{1/2} = q^{N e_p*}. On a
// surface with m, n != 0 the same line is read as a pair (lambda, lambda*)
// with e_p = -lambda/m, e_p* = -lambda*/n and lambda + lambda* = 1.

#include <abelian/errors.hpp>
#include <abelian/rational.hpp>

#include <compare>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abelian::lattice {

class Surface {
public:
    Surface(integer m, integer n) : m_(m), n_(n)
    {
        if (m == 0 && n == 0) throw precondition_error("S_{0,0} is not a critical surface");
    }

    integer m() const { return m_; }
    integer n() const { return n_; }

    /// S_{1,-1} or S_{-1,1}: the critical level c = -N.
    bool is_critical_level() const { return (m_ == 1 && n_ == -1) || (m_ == -1 && n_ == 1); }
    bool has_zero_index() const { return m_ == 0 || n_ == 0; }

    std::string str() const { return std::to_string(m_) + "," + std::to_string(n_); }

    friend bool operator==(const Surface&, const Surface&) = default;
    friend auto operator<=>(const Surface&, const Surface&) = default;

private:
    integer m_;
    integer n_;
};

struct LineParams {
    Rational e_p;
    Rational e_pstar;
    Rational c_over_N;

    static LineParams from_exponents(Rational e_p, Rational e_pstar)
    {
        Rational c = e_p - e_pstar;
        return {e_p, e_pstar, c};
    }

    /// |s| < 1 and |s*| < 1 for every q in (0,1), i.e. |p|, |p*| < 1.
    bool algebra_valid() const { return e_p > Rational(0) && e_pstar > Rational(0); }

    /// Whether S_{m,n} contains this line: m e_p + n e_p* = -1.
    bool lies_on(const Surface& s) const { return e_p * s.m() + e_pstar * s.n() == Rational(-1); }

    friend bool operator==(const LineParams& a, const LineParams& b)
    {
        return a.e_p == b.e_p && a.e_pstar == b.e_pstar;
    }
};

struct LambdaPair {
    Rational lambda;
    Rational lambda_star;

    static LambdaPair from_lambda(Rational lambda) { return {lambda, Rational(1) - lambda}; }

    LambdaPair(Rational l, Rational ls) : lambda(l), lambda_star(ls)
    {
        if (lambda + lambda_star != Rational(1)) {
            throw precondition_error("lambda + lambda* must equal 1, got " + lambda.str() + " + " +
                                     lambda_star.str());
        }
    }

    friend bool operator==(const LambdaPair&, const LambdaPair&) = default;
};

/// Half-nome exponents of the line with coordinate `lam` on `s`.
inline LineParams line_of(const Surface& s, const LambdaPair& lam)
{
    if (s.has_zero_index()) {
        throw degenerate_parametrization("lambda parametrization undefined on S_{" + s.str() + "}");
    }
    return LineParams::from_exponents(-lam.lambda / Rational(s.m()), -lam.lambda_star / Rational(s.n()));
}

enum class VerdictTag { NotAbelian, IntegerLambda, Condition2, WholeSurface, ExtendedCenter, SuperAbelian };

inline const char* to_string(VerdictTag tag)
{
    switch (tag) {
    case VerdictTag::NotAbelian: return "NotAbelian";
    case VerdictTag::IntegerLambda: return "IntegerLambda";
    case VerdictTag::Condition2: return "Condition2";
    case VerdictTag::WholeSurface: return "WholeSurface";
    case VerdictTag::ExtendedCenter: return "ExtendedCenter";
    case VerdictTag::SuperAbelian: return "SuperAbelian";
    }
    return "?";
}

struct Witnesses {
    integer d = 0;
    integer gamma = 0;
    integer gamma_prime = 0;
    integer g = 0;
    integer beta0 = 0;
    integer beta0_prime = 0;

    friend bool operator==(const Witnesses&, const Witnesses&) = default;
};

struct AbelianityVerdict {
    VerdictTag tag = VerdictTag::NotAbelian;
    std::optional<Witnesses> witnesses;
    /// N = 2: the conditions are sufficient only, a negative verdict is not definitive.
    bool n_caveat = false;

    bool is_abelian() const { return tag != VerdictTag::NotAbelian; }
};

// ---------------------------------------------------------------------------
// Intersections

inline integer determinant(const Surface& s1, const Surface& s2)
{
    return detail::narrow(detail::wide(s2.m()) * s1.n() - detail::wide(s1.m()) * s2.n());
}

/// Common line of two surfaces, or nullopt when they do not meet.
inline std::optional<LineParams> intersect_surfaces(const Surface& s1, const Surface& s2)
{
    const integer det = determinant(s1, s2);
    if (s1.m() == s2.m() || s1.n() == s2.n() || det == 0) return std::nullopt;
    const Rational e_p(s2.n() - s1.n(), det);
    const Rational e_pstar(s1.m() - s2.m(), det);
    LineParams line = LineParams::from_exponents(e_p, e_pstar);
    // c/N from the central-charge formula must match e_p - e_p*.
    if (line.c_over_N != Rational(s2.m() + s2.n() - s1.m() - s1.n(), det)) {
        throw std::logic_error("central charge mismatch in intersect_surfaces");
    }
    return line;
}

/// (lambda, lambda*) of the intersection line, read on `s1`.
inline LambdaPair lambda_of_intersection(const Surface& s1, const Surface& s2)
{
    if (!intersect_surfaces(s1, s2)) {
        throw no_intersection("S_{" + s1.str() + "} and S_{" + s2.str() + "} do not intersect");
    }
    if (s1.has_zero_index()) {
        throw degenerate_parametrization("lambda/m undefined on S_{" + s1.str() + "}");
    }
    const integer det = determinant(s1, s2);
    const Rational lambda = Rational(s1.m()) * Rational(s1.n() - s2.n(), det);
    const Rational lambda_star = Rational(s1.n()) * Rational(s2.m() - s1.m(), det);
    return LambdaPair(lambda, lambda_star); // ctor checks lambda + lambda* = 1
}

/// Surfaces through the line S1 ∩ S2, stepping along the primitive lattice
/// direction: (m',n') + t (m-m', n-n')/gcd(m-m', n-n') for t in [t_min, t_max].
inline std::vector<Surface> surfaces_through_line(const Surface& s1, const Surface& s2, integer t_min,
                                                  integer t_max)
{
    const auto line = intersect_surfaces(s1, s2);
    if (!line) throw no_intersection("S_{" + s1.str() + "} and S_{" + s2.str() + "} do not intersect");

    const integer dm = s1.m() - s2.m();
    const integer dn = s1.n() - s2.n();
    const integer g0 = gcd(dm, dn);
    std::vector<Surface> out;
    for (integer t = t_min; t <= t_max; ++t) {
        const integer m = s2.m() + t * (dm / g0);
        const integer n = s2.n() + t * (dn / g0);
        if (m == 0 && n == 0) continue;
        Surface cand(m, n);
        const Surface& ref = (cand == s1) ? s2 : s1;
        const auto again = intersect_surfaces(ref, cand);
        if (!again || !(*again == *line) || !line->lies_on(cand)) {
            throw std::logic_error("surfaces_through_line: S_{" + cand.str() + "} is not on the line");
        }
        out.push_back(cand);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bezout helpers

/// (beta0, beta0') with beta0 m - beta0' lambda = 1 and 1 <= beta0' <= m-1
/// (beta0' = 0 when m = 1). Requires m > 0 and gcd(m, lambda) = 1.
inline std::pair<integer, integer> canonical_beta(integer m, integer lambda)
{
    const auto [x, y, g] = extended_gcd(m, lambda);
    if (g != 1) throw precondition_error("m and lambda are not coprime");
    // x m + y lambda = 1, so beta0' = -y modulo m.
    const integer beta_prime = mod_floor(-y, m);
    const detail::wide num = 1 + detail::wide(beta_prime) * lambda;
    return {detail::narrow(num / m), beta_prime};
}

/// (l, l') with l m + l' n = gcd(m, n), choosing the smallest non-negative l'.
inline std::pair<integer, integer> canonical_bezout(integer m, integer n)
{
    const auto [x, y, g] = extended_gcd(m, n);
    const integer step = std::abs(m / g);
    const integer l_prime = mod_floor(y, step);
    // (l' - y) is a multiple of m/g; shift l by the matching multiple of n/g.
    const integer j = (l_prime - y) / (m / g);
    return {x - j * (n / g), l_prime};
}

// ---------------------------------------------------------------------------
// Super-abelianity on S_{m,-m}

struct SuperAbelianityResult {
    bool super_abelian = false;
    /// 0 on success, otherwise the index (1, 2 or 3) of the first failing condition.
    int failed_condition = 0;
    /// (beta0, beta0'); absent when gcd(m, lambda) != 1.
    std::optional<std::pair<integer, integer>> bezout;
    integer m_used = 0;
    bool reduced_from_negative = false;
};

inline SuperAbelianityResult super_abelianity_check(integer m, integer lambda)
{
    if (m == 0) throw precondition_error("super-abelianity requires m != 0");
    SuperAbelianityResult r;
    r.reduced_from_negative = m < 0;
    r.m_used = std::abs(m);
    const integer mm = r.m_used;

    if (gcd(mm, lambda) == 1) r.bezout = canonical_beta(mm, lambda);

    if (mm % 2 == 0) {
        r.failed_condition = 1;
    } else if (!r.bezout) {
        r.failed_condition = 2;
    } else if (gcd(mm, r.bezout->second + 1) != 1) {
        r.failed_condition = 3;
    }
    r.super_abelian = r.failed_condition == 0;
    return r;
}

// ---------------------------------------------------------------------------
// Classification of a line on a single surface

namespace detail {

inline void check_rank(integer N)
{
    if (N < 2) throw precondition_error("N must be at least 2");
}

/// Condition 2: lambda/m - lambda*/n integral and the common reduced
/// denominator d divides m+n.
inline std::optional<integer> condition2_denominator(const Surface& s, const LambdaPair& lam)
{
    const Rational a = lam.lambda / Rational(s.m());
    const Rational b = lam.lambda_star / Rational(s.n());
    if (!(a - b).is_integer()) return std::nullopt;
    const integer d = a.denominator();
    if (b.denominator() != d) return std::nullopt;
    if ((s.m() + s.n()) % d != 0) return std::nullopt;
    return d;
}

} // namespace detail

inline AbelianityVerdict classify_lambda(const Surface& s, const LambdaPair& lam, integer N)
{
    detail::check_rank(N);
    AbelianityVerdict v;
    v.n_caveat = (N == 2);

    if (s.has_zero_index()) {
        v.tag = VerdictTag::WholeSurface;
        return v;
    }
    if (s.is_critical_level()) {
        v.tag = VerdictTag::ExtendedCenter;
        return v;
    }
    // lambda = 0 or lambda* = 0 puts a nome at 1; condition 1 needs non-vanishing integers.
    if (lam.lambda.is_zero() || lam.lambda_star.is_zero()) return v;

    if (lam.lambda.is_integer()) {
        v.tag = VerdictTag::IntegerLambda;
        if (s.n() == -s.m()) {
            const auto sa = super_abelianity_check(s.m(), lam.lambda.numerator());
            if (sa.super_abelian) {
                v.tag = VerdictTag::SuperAbelian;
                Witnesses w;
                w.beta0 = sa.bezout->first;
                w.beta0_prime = sa.bezout->second;
                v.witnesses = w;
            }
        }
        return v;
    }

    if (const auto d = detail::condition2_denominator(s, lam)) {
        v.tag = VerdictTag::Condition2;
        Witnesses w;
        w.d = *d;
        w.gamma = mod_floor((lam.lambda / Rational(s.m())).numerator(), *d);
        w.g = gcd(s.m(), s.n());
        // gamma' g + gamma (m+n)/d = 1
        w.gamma_prime = (1 - w.gamma * ((s.m() + s.n()) / *d)) / w.g;
        v.witnesses = w;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Classification of an intersection (both sides)

/// Which of the intersection conditions (a), (b), (c), (c') hold for one side.
struct IntersectionCases {
    bool a = false;
    bool b = false;
    bool c = false;       ///< the other surface is S_{±(1,-1)}
    bool c_prime = false; ///< this surface is S_{±(1,-1)}

    bool any() const { return a || b || c || c_prime; }
};

struct SideReport {
    Surface surface;
    std::optional<LambdaPair> lambda; ///< absent on S_{0,n} / S_{m,0}
    AbelianityVerdict verdict;
    IntersectionCases cases;
};

struct IntersectionClassification {
    LineParams line;
    SideReport first;
    SideReport second;
};

inline IntersectionCases intersection_cases(const Surface& self, const Surface& other)
{
    const integer det = determinant(self, other);
    IntersectionCases tc;
    tc.a = Rational(self.m() * (self.n() - other.n()), det).is_integer();
    tc.b = Rational(self.m() + self.n() - other.m() - other.n(), det).is_integer() &&
           (self.m() + self.n()) != 0 && (other.m() + other.n()) != 0;
    tc.c = other.is_critical_level();
    tc.c_prime = self.is_critical_level();
    return tc;
}

inline IntersectionClassification classify_intersection(const Surface& s1, const Surface& s2, integer N)
{
    detail::check_rank(N);
    const auto line = intersect_surfaces(s1, s2);
    if (!line) throw no_intersection("S_{" + s1.str() + "} and S_{" + s2.str() + "} do not intersect");

    auto side = [&](const Surface& self, const Surface& other) {
        std::optional<LambdaPair> lam;
        AbelianityVerdict verdict;
        if (self.has_zero_index()) {
            verdict = classify_lambda(self, LambdaPair::from_lambda(Rational(0)), N);
        } else {
            lam = lambda_of_intersection(self, other);
            verdict = classify_lambda(self, *lam, N);
        }
        const IntersectionCases tc = intersection_cases(self, other);
        if (tc.any() != verdict.is_abelian()) {
            throw std::logic_error("intersection conditions disagree with the lambda classification on S_{" +
                                   self.str() + "} ∩ S_{" + other.str() + "}");
        }
        return SideReport{self, lam, verdict, tc};
    };
    return {*line, side(s1, s2), side(s2, s1)};
}

// ---------------------------------------------------------------------------
// Condition-2 families

struct LambdaFamily {
    Surface surface;
    integer d;
    integer gamma;
    integer gamma_prime;
    integer g;
    integer ell;       ///< Bezout: ell m + ell' n = g
    integer ell_prime;

    Rational lambda_over_m(integer k) const
    {
        return Rational(gamma_prime * ell) + Rational(gamma, d) + Rational(k * surface.n(), g);
    }
    Rational lambda_star_over_n(integer k) const
    {
        return Rational(gamma_prime * ell_prime) + Rational(gamma, d) - Rational(k * surface.m(), g);
    }
    LambdaPair member(integer k) const
    {
        return LambdaPair(lambda_over_m(k) * Rational(surface.m()),
                          lambda_star_over_n(k) * Rational(surface.n()));
    }
};

/// All families of non-integer lambda satisfying condition 2 on `s`.
///
/// Divisors d of m+n that also divide m give integer lambda (the remainder
/// of |m| by d vanishes) and belong to condition 1; they are not emitted.
inline std::vector<LambdaFamily> solve_condition2(const Surface& s)
{
    const integer m = s.m(), n = s.n();
    if (m == 0 || n == 0) throw precondition_error("solve_condition2 requires m, n != 0");
    if (m + n == 0) throw precondition_error("solve_condition2 requires m + n != 0");

    const integer g = gcd(m, n);
    const auto [ell, ell_prime] = canonical_bezout(m, n);
    const integer total = std::abs(m + n);

    std::vector<LambdaFamily> out;
    for (integer d = 2; d <= total; ++d) {
        if (total % d != 0) continue;
        const integer cofactor = (m + n) / d;
        if (gcd(cofactor, g) != 1) continue;
        if (m % d == 0) continue;
        for (integer gamma = 1; gamma < d; ++gamma) {
            if (gcd(gamma, d) != 1) continue;
            const integer rest = 1 - gamma * cofactor;
            if (rest % g != 0) continue;
            LambdaFamily fam{s, d, gamma, rest / g, g, ell, ell_prime};
            for (integer k = -2; k <= 2; ++k) {
                const auto v = classify_lambda(s, fam.member(k), 3);
                if (v.tag != VerdictTag::Condition2 || v.witnesses->d != d) {
                    throw std::logic_error("solve_condition2: family member fails condition 2");
                }
            }
            out.push_back(fam);
        }
    }
    if (out.empty()) throw empty_family("no cross-cancellation family on S_{" + s.str() + "}");
    return out;
}

// ---------------------------------------------------------------------------
// Realizing a line as intersections

namespace detail {

/// Primitive direction of the solution set of m' n lambda + n' m lambda* = m n,
/// oriented with a positive n-component.
inline std::pair<integer, integer> line_direction(const Surface& s, const LambdaPair& lam)
{
    const integer P = lam.lambda.numerator();
    const integer Q = lam.lambda.denominator();
    // d_m n P + d_n m (Q - P) = 0
    integer dm = abelian::detail::narrow(abelian::detail::wide(s.m()) * (Q - P));
    integer dn = abelian::detail::narrow(-abelian::detail::wide(s.n()) * P);
    const integer g = gcd(dm, dn);
    dm /= g;
    dn /= g;
    if (dn < 0) {
        dm = -dm;
        dn = -dn;
    }
    return {dm, dn};
}

inline void check_realizable(const Surface& s, const LambdaPair& lam)
{
    if (s.has_zero_index()) {
        throw precondition_error("realization requires m, n != 0 on S_{" + s.str() + "}");
    }
    if (lam.lambda.is_zero() || lam.lambda_star.is_zero()) {
        throw precondition_error("lambda = 0 or lambda* = 0 is not the intersection of two surfaces");
    }
}

inline bool reproduces(const Surface& s, const LambdaPair& lam, const Surface& cand)
{
    if (!intersect_surfaces(s, cand)) return false;
    return lambda_of_intersection(s, cand) == lam;
}

} // namespace detail

/// `count` distinct surfaces S' with lambda_of_intersection(s, S') == lam,
/// walking the primitive direction of the line from `s` towards decreasing n'.
inline std::vector<Surface> realize_line_as_intersections(const Surface& s, const LambdaPair& lam,
                                                          integer count)
{
    detail::check_realizable(s, lam);
    if (count < 0) throw precondition_error("count must be non-negative");
    const auto [dm, dn] = detail::line_direction(s, lam);
    std::vector<Surface> out;
    for (integer j = 1; static_cast<integer>(out.size()) < count; ++j) {
        const integer m = s.m() - j * dm;
        const integer n = s.n() - j * dn;
        if (m == 0 && n == 0) continue;
        Surface cand(m, n);
        if (!detail::reproduces(s, lam, cand)) {
            throw std::logic_error("realize_line_as_intersections: S_{" + cand.str() + "} rejected");
        }
        out.push_back(cand);
    }
    return out;
}

enum class PartnerRoute {
    IntegerBezout,      ///< m' = m(l0 + k lambda*), n' = n(l0' - k lambda)
    Condition2Shift,    ///< m' = m - b u, n' = n + a u
    GenericAsStated,    ///< m' = (a+1) m + d, n' = (a+1) n
    GenericSignCorrected, ///< m' = (1-a) m + d, n' = (1-a) n
    PrimitiveFallback,
};

inline const char* to_string(PartnerRoute r)
{
    switch (r) {
    case PartnerRoute::IntegerBezout: return "IntegerBezout";
    case PartnerRoute::Condition2Shift: return "Condition2Shift";
    case PartnerRoute::GenericAsStated: return "GenericAsStated";
    case PartnerRoute::GenericSignCorrected: return "GenericSignCorrected";
    case PartnerRoute::PrimitiveFallback: return "PrimitiveFallback";
    }
    return "?";
}

struct PartnerConstruction {
    Surface partner;
    PartnerRoute route;
    /// Candidates produced by the closed-form construction that failed verification.
    std::vector<Surface> rejected;
};

/// One partner surface S' realizing `lam` on `s`, built by the closed-form
/// construction for the line's type. Every candidate passes through the
/// verification gate; rejected candidates are reported and the search moves
/// on (ultimately to the primitive-direction family).
inline PartnerConstruction construct_partner(const Surface& s, const LambdaPair& lam)
{
    detail::check_realizable(s, lam);
    std::vector<Surface> rejected;
    auto accept = [&](integer m, integer n) -> std::optional<Surface> {
        if (m == 0 && n == 0) return std::nullopt;
        Surface cand(m, n);
        if (cand == s) return std::nullopt;
        if (detail::reproduces(s, lam, cand)) return cand;
        rejected.push_back(cand);
        return std::nullopt;
    };

    const Rational a_over_d = lam.lambda / Rational(s.m());
    const Rational b_over_d = lam.lambda_star / Rational(s.n());

    if (lam.lambda.is_integer()) {
        const integer l = lam.lambda.numerator();
        const integer ls = lam.lambda_star.numerator();
        const auto [l0, l0p, g] = extended_gcd(l, ls); // g == 1 since l + ls = 1
        for (integer k : {0, 1, -1, 2, -2, 3, -3}) {
            if (auto c = accept(s.m() * (l0 + k * ls), s.n() * (l0p - k * l))) {
                return {*c, PartnerRoute::IntegerBezout, rejected};
            }
        }
    } else if ((a_over_d - b_over_d).is_integer()) {
        const integer a = a_over_d.numerator();
        const integer b = b_over_d.numerator();
        const integer G = gcd(a, b);
        for (integer v : {1, -1, 2, -2}) {
            if (auto c = accept(s.m() - (b / G) * v, s.n() + (a / G) * v)) {
                return {*c, PartnerRoute::Condition2Shift, rejected};
            }
        }
    } else {
        const integer a = a_over_d.numerator();
        const integer d = a_over_d.denominator();
        if (auto c = accept((a + 1) * s.m() + d, (a + 1) * s.n())) {
            return {*c, PartnerRoute::GenericAsStated, rejected};
        }
        if (auto c = accept((1 - a) * s.m() + d, (1 - a) * s.n())) {
            return {*c, PartnerRoute::GenericSignCorrected, rejected};
        }
    }
    const auto fam = realize_line_as_intersections(s, lam, 1);
    return {fam.front(), PartnerRoute::PrimitiveFallback, rejected};
}

} // namespace abelian::lattice
