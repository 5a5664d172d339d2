#pragma once

// Exact cancellation oracle for ratios of U-functions.
//
// Every U factor in the exchange function has an argument q^{N t} x up to a
// sign. U depends on its argument squared and is invariant under
// x -> q^N x, so a factor is fully identified by t mod 1. A ratio of U
// products is identically 1 (as far as whole-U cancellation goes) exactly
// when the signed multiset of reduced exponents is empty.
//
// Nothing here consults the lattice classification.

#include <abelian/errors.hpp>
#include <abelian/lattice.hpp>
#include <abelian/rational.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <vector>

namespace abelian::oracle {

using lattice::LambdaPair;
using lattice::Surface;

class ExponentMultiset {
public:
    using map_type = std::map<Rational, integer>;

    /// Adds `multiplicity` copies of t (negative: denominator factors).
    void add(const Rational& t, integer multiplicity = 1)
    {
        if (multiplicity == 0) return;
        const Rational key = t.frac();
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, multiplicity);
            return;
        }
        it->second += multiplicity;
        if (it->second == 0) entries_.erase(it);
    }

    void add_numerator(const Rational& t) { add(t, 1); }
    void add_denominator(const Rational& t) { add(t, -1); }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const map_type& entries() const { return entries_; }

    integer multiplicity(const Rational& t) const
    {
        auto it = entries_.find(t.frac());
        return it == entries_.end() ? 0 : it->second;
    }

    friend bool operator==(const ExponentMultiset&, const ExponentMultiset&) = default;

private:
    map_type entries_;
};

inline bool is_abelian(const ExponentMultiset& mset) { return mset.empty(); }

/// Whether the multiset is a signed sum of complete cosets {t + j/N : j = 0..N-1}.
///
/// q^2 is the N-th root of the nome q^{2N}, and the theta factors of
/// prod_{j=0}^{N-1} U(q^j x) telescope to 1. A nonempty multiset of this
/// shape therefore still gives a ratio identically equal to 1, a cancellation
/// that pairwise matching of U factors does not see.
inline bool cancels_by_cosets(const ExponentMultiset& mset, integer N)
{
    if (N < 1) throw precondition_error("cancels_by_cosets requires N >= 1");
    // class representative t mod 1/N, then position j within the coset
    std::map<Rational, std::vector<integer>> classes;
    for (const auto& [t, mult] : mset.entries()) {
        const Rational base = (t * Rational(N)).frac() / Rational(N);
        const integer j = ((t - base) * Rational(N)).numerator();
        auto& row = classes[base];
        row.resize(static_cast<std::size_t>(N), 0);
        row[static_cast<std::size_t>(j)] += mult;
    }
    for (const auto& [base, row] : classes) {
        if (std::any_of(row.begin(), row.end(), [&](integer v) { return v != row.front(); })) return false;
    }
    return true;
}

/// Reduced exponents of Y_{m,n} = F*_n F*_{-n} / (F_m F_{-m}).
///
/// Numerator: s^{-l}, l = 1..|m| and s*^{l}, l = 0..|n|-1.
/// Denominator: s^{l}, l = 0..|m|-1 and s*^{-l}, l = 1..|n|.
/// When m, n != 0 the two U(x) factors (l = 0) cancel and this is the
/// four-product form. On S_{0,n} (resp. S_{m,0}) the surface relation
/// s*^n = q^{-N} (resp. s^m = q^{-N}) fixes the exponent and `lam` is unused.
inline ExponentMultiset exchange_exponents(const Surface& s, const LambdaPair& lam)
{
    const integer m = s.m(), n = s.n();
    const integer am = std::abs(m), an = std::abs(n);
    const Rational e_p = (m != 0) ? (n != 0 ? -lam.lambda / Rational(m) : Rational(-1, m)) : Rational(0);
    const Rational e_ps = (n != 0) ? (m != 0 ? -lam.lambda_star / Rational(n) : Rational(-1, n)) : Rational(0);

    ExponentMultiset out;
    for (integer l = 1; l <= am; ++l) out.add_numerator(e_p * Rational(-l));
    for (integer l = 0; l < an; ++l) out.add_numerator(e_ps * Rational(l));
    for (integer l = 0; l < am; ++l) out.add_denominator(e_p * Rational(l));
    for (integer l = 1; l <= an; ++l) out.add_denominator(e_ps * Rational(-l));
    return out;
}

/// The products left after removing complete residue cycles:
/// prod_{j=1}^{mu} U(q^{Naj/d}x) / prod_{j=d-mu+1}^{d-1} U(q^{Naj/d}x) for the p-part
/// (mu replaced by min(mu, d-mu)), and the mirror image for the p*-part.
struct ReducedForm {
    bool integer_shortcut = false;
    integer a = 0, d = 1, mu_bar = 0;
    integer b = 0, d_prime = 1, mu_bar_prime = 0;
    std::vector<Rational> numerator;
    std::vector<Rational> denominator;

    ExponentMultiset to_multiset() const
    {
        ExponentMultiset out;
        for (const auto& t : numerator) out.add_numerator(t);
        for (const auto& t : denominator) out.add_denominator(t);
        return out;
    }
};

inline ReducedForm reduced_form(const Surface& s, const LambdaPair& lam)
{
    if (s.has_zero_index()) {
        throw degenerate_parametrization("reduced form needs m, n != 0 on S_{" + s.str() + "}");
    }
    ReducedForm r;
    if (lam.lambda.is_integer()) {
        r.integer_shortcut = true;
        return r;
    }
    const Rational x = lam.lambda / Rational(s.m());
    const Rational y = lam.lambda_star / Rational(s.n());
    r.a = x.numerator();
    r.d = x.denominator();
    r.b = y.numerator();
    r.d_prime = y.denominator();
    const integer mu = std::abs(s.m()) % r.d;
    const integer mu_p = std::abs(s.n()) % r.d_prime;
    r.mu_bar = std::min(mu, r.d - mu);
    r.mu_bar_prime = std::min(mu_p, r.d_prime - mu_p);

    for (integer j = 1; j <= r.mu_bar; ++j) r.numerator.push_back(Rational(r.a * j, r.d).frac());
    for (integer j = r.d_prime - r.mu_bar_prime + 1; j <= r.d_prime - 1; ++j) {
        r.numerator.push_back(Rational(r.b * j, r.d_prime).frac());
    }
    for (integer j = r.d - r.mu_bar + 1; j <= r.d - 1; ++j) r.denominator.push_back(Rational(r.a * j, r.d).frac());
    for (integer j = 1; j <= r.mu_bar_prime; ++j) r.denominator.push_back(Rational(r.b * j, r.d_prime).frac());
    return r;
}

/// Exponents of prod_{k=1}^{m} U(s*^{-k} x) / U(s^{-k} x) on S_{m,-m}.
inline ExponentMultiset centrality_exponents(integer m, integer lambda)
{
    if (m <= 0) throw precondition_error("centrality_exponents requires m > 0");
    ExponentMultiset out;
    for (integer k = 1; k <= m; ++k) {
        out.add_numerator(Rational((lambda - 1) * k, m));
        out.add_denominator(Rational(lambda * k, m));
    }
    return out;
}

} // namespace abelian::oracle
