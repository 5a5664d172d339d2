// Walks through one line end to end: intersect two surfaces, classify the
// line on both sides, confirm the verdict numerically, list other surfaces
// through it, and evaluate the Poisson structure function both ways.

#include <abelian/abelian.hpp>

#include <cstdio>

using namespace abelian;

int main()
{
    const lattice::Surface s1(3, 6), s2(2, 5);

    const auto cls = lattice::classify_intersection(s1, s2, 3);
    std::printf("S_{%s} ∩ S_{%s}: e_p = %s, e_p* = %s, c/N = %s\n", s1.str().c_str(), s2.str().c_str(),
                cls.line.e_p.str().c_str(), cls.line.e_pstar.str().c_str(), cls.line.c_over_N.str().c_str());
    for (const auto* side : {&cls.first, &cls.second}) {
        std::printf("  on S_{%s}: lambda = %s, %s\n", side->surface.str().c_str(), side->lambda->lambda.str().c_str(),
                    lattice::to_string(side->verdict.tag));
    }

    // Exact verdict against |Y - 1| on the default grid.
    const elliptic::EllipticContext ctx(3, 0.5);
    const auto lam = *cls.first.lambda;
    const auto dev = elliptic::max_deviation(elliptic::Grid{}, [&](elliptic::complex x) {
        return elliptic::yfunc(ctx, s1, lam, x);
    });
    std::printf("  max |Y - 1| on S_{%s} over %d points: %.3e\n", s1.str().c_str(), dev.evaluated, dev.max_abs);

    std::printf("  surfaces through the line:");
    for (const auto& s : lattice::surfaces_through_line(s1, s2, -3, 3)) std::printf(" (%s)", s.str().c_str());
    std::printf("\n");

    // Integer lambda: type (a) structure function, compact and series forms.
    // Here l = l* = 3 = N, so U_{q^2} is constant and f vanishes identically;
    // S_{5,7} with lambda = 2 gives a nonzero one.
    const elliptic::EllipticContext ctx6(3, 0.6);
    const elliptic::complex x = std::polar(0.9, 0.3);
    for (const auto& pa : {poisson::make_params_a(s1, lam.lambda.numerator()), poisson::make_params_a({5, 7}, 2)}) {
        const auto fc = poisson::f_type_a(ctx6, pa, x);
        const auto fs = poisson::f_type_a_series(ctx6, pa, x);
        std::printf("  S_{%s}, lambda = %lld: f(0.9 e^{0.3i}) compact %.12f%+.12fi, series %.12f%+.12fi\n",
                    pa.surface.str().c_str(), static_cast<long long>(pa.lambda), fc.real(), fc.imag(), fs.real(),
                    fs.imag());
    }

    // A condition-2 line on S_{1,2}.
    const lattice::Surface s(1, 2);
    for (const auto& fam : lattice::solve_condition2(s)) {
        const auto member = fam.member(0);
        std::printf("S_{1,2} family d = %lld, gamma = %lld: lambda = %s (%s)\n", static_cast<long long>(fam.d),
                    static_cast<long long>(fam.gamma), member.lambda.str().c_str(),
                    lattice::to_string(lattice::classify_lambda(s, member, 3).tag));
    }
    return 0;
}
