#pragma once

// Command-line front end. `run` parses arguments, dispatches to one
// subcommand and writes its machine-readable output.
//
// Exit codes: 0 success, 1 an exact verdict and its numeric (or oracle)
// witness disagree, 2 invalid input.

#include <abelian/abelian.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace abelian::cli {

using json = nlohmann::ordered_json;
using lattice::AbelianityVerdict;
using lattice::LambdaPair;
using lattice::LineParams;
using lattice::Surface;

/// Thresholds separating "identically one" from "generically not one" on a grid.
inline constexpr double abelian_threshold = 1e-9;
inline constexpr double non_abelian_threshold = 1e-4;

enum class Format { json, csv };

// ---------------------------------------------------------------------------
// Parsing

inline Surface parse_surface(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw precondition_error("surface must be given as \"m,n\", got '" + std::string(text) + "'");
    }
    auto whole = [&](std::string_view part) {
        const Rational r = Rational::parse(part);
        if (!r.is_integer()) throw precondition_error("surface indices must be integers: '" + std::string(text) + "'");
        return r.numerator();
    };
    return Surface(whole(text.substr(0, comma)), whole(text.substr(comma + 1)));
}

inline elliptic::Grid parse_grid(std::string_view text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw precondition_error("grid must be \"r1,r2,count\"");
    try {
        elliptic::Grid g{std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
        if (!(g.r1 > 0.0) || !(g.r2 > 0.0) || g.count <= 0) throw precondition_error("grid radii and count must be positive");
        return g;
    } catch (const std::logic_error&) {
        throw precondition_error("malformed grid '" + std::string(text) + "'");
    }
}

// ---------------------------------------------------------------------------
// Reports

/// One surface's view of a line, with its optional witnesses.
struct VerdictReport {
    Surface surface;
    std::optional<LambdaPair> lambda;
    std::optional<LineParams> line;
    AbelianityVerdict verdict;
    std::optional<lattice::IntersectionCases> cases;
    std::optional<bool> oracle_abelian;
    std::optional<double> max_abs_y_minus_1;
};

inline json to_json(const LineParams& line)
{
    json j;
    j["e_p"] = line.e_p.str();
    j["e_pstar"] = line.e_pstar.str();
    j["c_over_N"] = line.c_over_N.str();
    j["algebra_valid"] = line.algebra_valid();
    return j;
}

inline json to_json(const LambdaPair& lam)
{
    json j;
    j["lambda"] = lam.lambda.str();
    j["lambda_star"] = lam.lambda_star.str();
    return j;
}

inline json to_json(const AbelianityVerdict& v)
{
    json j;
    j["tag"] = lattice::to_string(v.tag);
    j["abelian"] = v.is_abelian();
    j["n_caveat"] = v.n_caveat;
    if (v.witnesses) {
        const auto& w = *v.witnesses;
        json wj;
        wj["d"] = w.d;
        wj["gamma"] = w.gamma;
        wj["gamma_prime"] = w.gamma_prime;
        wj["g"] = w.g;
        wj["beta0"] = w.beta0;
        wj["beta0_prime"] = w.beta0_prime;
        j["witnesses"] = wj;
    } else {
        j["witnesses"] = nullptr;
    }
    return j;
}

inline json to_json(const lattice::IntersectionCases& c)
{
    json j;
    j["a"] = c.a;
    j["b"] = c.b;
    j["c"] = c.c;
    j["c_prime"] = c.c_prime;
    return j;
}

inline json to_json(const VerdictReport& r)
{
    json j;
    j["surface"] = r.surface.str();
    j["lambda"] = r.lambda ? to_json(*r.lambda) : json(nullptr);
    j["line"] = r.line ? to_json(*r.line) : json(nullptr);
    j["verdict"] = to_json(r.verdict);
    if (r.cases) j["cases"] = to_json(*r.cases);
    if (r.oracle_abelian) j["oracle_abelian"] = *r.oracle_abelian;
    if (r.max_abs_y_minus_1) j["max_abs_y_minus_1"] = *r.max_abs_y_minus_1;
    return j;
}

inline std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

inline const std::string& verdict_csv_header()
{
    static const std::string h =
        "surface_m,surface_n,lambda,lambda_star,e_p,e_pstar,c_over_N,tag,abelian,n_caveat,"
        "d,gamma,gamma_prime,g,beta0,beta0_prime,oracle_abelian,max_abs_y_minus_1";
    return h;
}

inline std::string verdict_csv_row(const VerdictReport& r)
{
    std::ostringstream os;
    auto opt = [&](bool has, const std::string& v) { os << ',' << (has ? v : ""); };
    os << r.surface.m() << ',' << r.surface.n();
    opt(r.lambda.has_value(), r.lambda ? r.lambda->lambda.str() : "");
    opt(r.lambda.has_value(), r.lambda ? r.lambda->lambda_star.str() : "");
    opt(r.line.has_value(), r.line ? r.line->e_p.str() : "");
    opt(r.line.has_value(), r.line ? r.line->e_pstar.str() : "");
    opt(r.line.has_value(), r.line ? r.line->c_over_N.str() : "");
    os << ',' << lattice::to_string(r.verdict.tag) << ',' << (r.verdict.is_abelian() ? "true" : "false") << ','
       << (r.verdict.n_caveat ? "true" : "false");
    const auto& w = r.verdict.witnesses;
    for (integer v : {w ? w->d : 0, w ? w->gamma : 0, w ? w->gamma_prime : 0, w ? w->g : 0, w ? w->beta0 : 0,
                      w ? w->beta0_prime : 0}) {
        opt(w.has_value(), std::to_string(v));
    }
    opt(r.oracle_abelian.has_value(), r.oracle_abelian ? (*r.oracle_abelian ? "true" : "false") : "");
    opt(r.max_abs_y_minus_1.has_value(), r.max_abs_y_minus_1 ? format_double(*r.max_abs_y_minus_1) : "");
    return os.str();
}

/// Serializes reports deterministically: one JSON object per line, or a CSV
/// table with a fixed header.
inline std::string emit(const std::vector<VerdictReport>& reports, Format format)
{
    std::string out;
    if (format == Format::csv) {
        out += verdict_csv_header() + "\n";
        for (const auto& r : reports) out += verdict_csv_row(r) + "\n";
        return out;
    }
    for (const auto& r : reports) out += to_json(r).dump() + "\n";
    return out;
}

inline std::string emit(const VerdictReport& report, Format format) { return emit(std::vector{report}, format); }

// ---------------------------------------------------------------------------
// Subcommands

struct Outcome {
    std::string text;
    int code = 0;
};

/// Oracle verdict of a (surface, lambda) pair. lambda in {0, 1} puts a
/// nome at 1, where every U factor collapses; it is reported but not compared.
inline bool oracle_comparable(const Surface& s, const LambdaPair& lam)
{
    return s.has_zero_index() || !(lam.lambda.is_zero() || lam.lambda_star.is_zero());
}

inline VerdictReport side_report(const lattice::SideReport& side)
{
    VerdictReport r{side.surface, side.lambda, std::nullopt, side.verdict, side.cases, std::nullopt, std::nullopt};
    const auto lam = side.lambda.value_or(LambdaPair::from_lambda(Rational(0)));
    r.oracle_abelian = oracle::is_abelian(oracle::exchange_exponents(side.surface, lam));
    if (side.lambda) r.line = lattice::line_of(side.surface, *side.lambda);
    return r;
}

inline bool oracle_disagrees(const VerdictReport& r, integer N)
{
    if (!r.oracle_abelian || N == 2) return false;
    const auto lam = r.lambda.value_or(LambdaPair::from_lambda(Rational(0)));
    if (!oracle_comparable(r.surface, lam)) return false;
    return *r.oracle_abelian != r.verdict.is_abelian();
}

inline Outcome cmd_intersect(const Surface& s1, const Surface& s2, integer N, Format format)
{
    const auto line = lattice::intersect_surfaces(s1, s2);
    if (format == Format::csv) {
        std::vector<VerdictReport> reports;
        if (line) {
            const auto cls = lattice::classify_intersection(s1, s2, N);
            reports = {side_report(cls.first), side_report(cls.second)};
        }
        return {emit(reports, Format::csv), 0};
    }
    json j;
    j["s1"] = s1.str();
    j["s2"] = s2.str();
    j["N"] = N;
    int code = 0;
    if (!line) {
        j["intersection"] = nullptr;
    } else {
        const auto cls = lattice::classify_intersection(s1, s2, N);
        const auto r1 = side_report(cls.first);
        const auto r2 = side_report(cls.second);
        json inter;
        inter["line"] = to_json(cls.line);
        inter["lambda"]["s1"] = r1.lambda ? to_json(*r1.lambda) : json(nullptr);
        inter["lambda"]["s2"] = r2.lambda ? to_json(*r2.lambda) : json(nullptr);
        inter["verdict"]["s1"] = to_json(r1.verdict);
        inter["verdict"]["s2"] = to_json(r2.verdict);
        inter["cases"]["s1"] = to_json(*r1.cases);
        inter["cases"]["s2"] = to_json(*r2.cases);
        inter["oracle_abelian"]["s1"] = *r1.oracle_abelian;
        inter["oracle_abelian"]["s2"] = *r2.oracle_abelian;
        j["intersection"] = inter;
        if (oracle_disagrees(r1, N) || oracle_disagrees(r2, N)) code = 1;
    }
    return {j.dump() + "\n", code};
}

inline Outcome cmd_classify(const Surface& s, const LambdaPair& lam, integer N, Format format)
{
    VerdictReport r{s, lam, std::nullopt, lattice::classify_lambda(s, lam, N), std::nullopt, std::nullopt,
                    std::nullopt};
    if (!s.has_zero_index()) r.line = lattice::line_of(s, lam);
    r.oracle_abelian = oracle::is_abelian(oracle::exchange_exponents(s, lam));
    return {emit(r, format), oracle_disagrees(r, N) ? 1 : 0};
}

inline Outcome cmd_enumerate_lines(const Surface& s, integer k_min, integer k_max)
{
    json j;
    j["surface"] = s.str();
    json fams = json::array();
    try {
        for (const auto& f : lattice::solve_condition2(s)) {
            json fj;
            fj["d"] = f.d;
            fj["gamma"] = f.gamma;
            fj["gamma_prime"] = f.gamma_prime;
            fj["g"] = f.g;
            fj["ell"] = f.ell;
            fj["ell_prime"] = f.ell_prime;
            json members = json::array();
            for (integer k = k_min; k <= k_max; ++k) {
                json mj;
                mj["k"] = k;
                mj["lambda_over_m"] = f.lambda_over_m(k).str();
                mj["lambda_star_over_n"] = f.lambda_star_over_n(k).str();
                const auto lam = f.member(k);
                mj["lambda"] = lam.lambda.str();
                mj["lambda_star"] = lam.lambda_star.str();
                members.push_back(mj);
            }
            fj["members"] = members;
            fams.push_back(fj);
        }
        j["empty"] = false;
    } catch (const empty_family&) {
        j["empty"] = true;
    }
    j["families"] = fams;
    return {j.dump() + "\n", 0};
}

inline Outcome cmd_surfaces_through(const Surface& s1, const Surface& s2, integer t_min, integer t_max)
{
    const auto surfaces = lattice::surfaces_through_line(s1, s2, t_min, t_max);
    json j;
    j["s1"] = s1.str();
    j["s2"] = s2.str();
    j["line"] = to_json(*lattice::intersect_surfaces(s1, s2));
    json arr = json::array();
    for (const auto& s : surfaces) arr.push_back(s.str());
    j["surfaces"] = arr;
    return {j.dump() + "\n", 0};
}

inline Outcome cmd_verify_y(const Surface& s, const LambdaPair& lam, const elliptic::EllipticContext& ctx,
                            const elliptic::Grid& grid, Format format)
{
    VerdictReport r{s, lam, std::nullopt, lattice::classify_lambda(s, lam, ctx.N), std::nullopt, std::nullopt,
                    std::nullopt};
    if (!s.has_zero_index()) r.line = lattice::line_of(s, lam);
    r.oracle_abelian = oracle::is_abelian(oracle::exchange_exponents(s, lam));
    const auto dev = elliptic::max_deviation(grid, [&](elliptic::complex x) { return elliptic::yfunc(ctx, s, lam, x); });
    r.max_abs_y_minus_1 = dev.max_abs;

    // A nonempty multiset made of complete cosets still gives Y = 1.
    const auto mset = oracle::exchange_exponents(s, lam);
    const bool coset = !mset.empty() && oracle::cancels_by_cosets(mset, ctx.N);
    bool consistent = !oracle_disagrees(r, ctx.N);
    if (r.verdict.is_abelian()) {
        consistent = consistent && dev.max_abs < abelian_threshold;
    } else if (!r.verdict.n_caveat && oracle_comparable(s, lam)) {
        consistent = consistent && (coset ? dev.max_abs < abelian_threshold : dev.max_abs > non_abelian_threshold);
    }
    if (format == Format::csv) return {emit(r, format), consistent ? 0 : 1};

    json j = to_json(r);
    j["N"] = ctx.N;
    j["q"] = ctx.q;
    j["grid"] = {{"r1", grid.r1}, {"r2", grid.r2}, {"count", grid.count}};
    j["evaluated"] = dev.evaluated;
    j["skipped"] = dev.skipped;
    j["coset_cancellation"] = coset;
    j["consistent"] = consistent;
    return {j.dump() + "\n", consistent ? 0 : 1};
}

inline Outcome cmd_verify_super(integer m, integer lambda, const elliptic::EllipticContext& ctx,
                                const elliptic::Grid& grid)
{
    const auto check = lattice::super_abelianity_check(m, lambda);
    const integer mm = check.m_used;
    const auto mset = oracle::centrality_exponents(mm, lambda);
    const bool oracle_empty = oracle::is_abelian(mset);
    const bool coset = !oracle_empty && oracle::cancels_by_cosets(mset, ctx.N);
    const auto dev = elliptic::max_deviation(
        grid, [&](elliptic::complex x) { return elliptic::centrality_ratio(ctx, mm, lambda, x); });
    bool consistent = oracle_empty == check.super_abelian;
    if (check.super_abelian) {
        consistent = consistent && dev.max_abs < abelian_threshold;
    } else {
        consistent = consistent && (coset ? dev.max_abs < abelian_threshold : dev.max_abs > non_abelian_threshold);
    }

    json j;
    j["m"] = m;
    j["lambda"] = lambda;
    j["N"] = ctx.N;
    j["q"] = ctx.q;
    json cj;
    cj["super_abelian"] = check.super_abelian;
    cj["failed_condition"] = check.failed_condition;
    cj["m_used"] = check.m_used;
    cj["reduced_from_negative"] = check.reduced_from_negative;
    if (check.bezout) {
        cj["beta0"] = check.bezout->first;
        cj["beta0_prime"] = check.bezout->second;
    } else {
        cj["beta0"] = nullptr;
        cj["beta0_prime"] = nullptr;
    }
    j["check"] = cj;
    j["oracle_empty"] = oracle_empty;
    j["coset_cancellation"] = coset;
    j["max_abs_ratio_minus_1"] = dev.max_abs;
    j["evaluated"] = dev.evaluated;
    j["skipped"] = dev.skipped;
    j["result"] = check.super_abelian ? "pass" : "fail";
    j["consistent"] = consistent;
    return {j.dump() + "\n", consistent ? 0 : 1};
}

enum class Route { compact, series };

inline Outcome cmd_poisson(const Surface& s, const LambdaPair& lam, const elliptic::EllipticContext& ctx,
                           const elliptic::Grid& grid, integer k, integer kp, Route route)
{
    const auto verdict = lattice::classify_lambda(s, lam, ctx.N);
    std::function<elliptic::complex(elliptic::complex)> f;
    if (lam.lambda.is_integer() && verdict.is_abelian() && !s.has_zero_index()) {
        const auto p = poisson::make_params_a(s, lam.lambda.numerator());
        f = [=](elliptic::complex x) {
            return route == Route::compact ? poisson::f_type_a(ctx, p, x) : poisson::f_type_a_series(ctx, p, x);
        };
    } else if (verdict.tag == lattice::VerdictTag::Condition2) {
        const auto p = poisson::make_params_b(s, lam.lambda);
        f = [=](elliptic::complex x) {
            return route == Route::compact ? poisson::f_type_b(ctx, p, x) : poisson::f_type_b_series(ctx, p, x);
        };
    } else {
        throw precondition_error("lambda = " + lam.lambda.str() + " is not a type (a) or (b) abelianity line on S_{" +
                                 s.str() + "}");
    }

    std::ostringstream os;
    os << "x_re,x_im,f_re,f_im\n";
    for (elliptic::complex x : grid.points()) {
        elliptic::complex v(0.0, 0.0);
        try {
            elliptic::detail::for_each_fusion_shift(ctx, k, kp, x, [&](elliptic::complex y) { v += f(y); });
        } catch (const pole_error&) {
            continue;
        }
        os << format_double(x.real()) << ',' << format_double(x.imag()) << ',' << format_double(v.real()) << ','
           << format_double(v.imag()) << '\n';
    }
    return {os.str(), 0};
}

inline Outcome cmd_scan(integer box, integer N)
{
    if (box < 0) throw precondition_error("box must be non-negative");
    std::vector<Surface> all;
    for (integer m = -box; m <= box; ++m) {
        for (integer n = -box; n <= box; ++n) {
            if (m != 0 || n != 0) all.emplace_back(m, n);
        }
    }
    // `all` is sorted by (m, n), so pairs come out sorted by (m, n, m', n').
    std::string out;
    int code = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t k = i + 1; k < all.size(); ++k) {
            const auto line = lattice::intersect_surfaces(all[i], all[k]);
            if (!line) continue;
            const auto cls = lattice::classify_intersection(all[i], all[k], N);
            const auto r1 = side_report(cls.first);
            const auto r2 = side_report(cls.second);
            json j;
            j["s1"] = all[i].str();
            j["s2"] = all[k].str();
            j["line"] = to_json(cls.line);
            j["lambda_s1"] = r1.lambda ? json(r1.lambda->lambda.str()) : json(nullptr);
            j["lambda_s2"] = r2.lambda ? json(r2.lambda->lambda.str()) : json(nullptr);
            j["verdict_s1"] = lattice::to_string(r1.verdict.tag);
            j["verdict_s2"] = lattice::to_string(r2.verdict.tag);
            j["oracle_s1"] = *r1.oracle_abelian;
            j["oracle_s2"] = *r2.oracle_abelian;
            out += j.dump() + "\n";
            if (oracle_disagrees(r1, N) || oracle_disagrees(r2, N)) code = 1;
        }
    }
    return {out, code};
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Abelianity lines of elliptic W-algebra structure functions"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "Also write the output stream to this file");

    std::string s1_text, s2_text, s_text, lambda_text, grid_text, format_text = "json", route_text = "compact";
    integer N = 3, m_arg = 0, lambda_int = 0, t_min = 0, t_max = 0, k_min = -2, k_max = 2, box = 3, k = 1, kp = 1;
    double q = 0.5;

    auto add_rank = [&](CLI::App* sub) { sub->add_option("--N", N, "Rank N (default 3)")->check(CLI::Range(2, 1 << 20)); };
    auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--q", q, "Deformation parameter q in (0,1)");
        sub->add_option("--grid", grid_text, "Grid \"r1,r2,count\" (default 0.8,1.25,20)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* intersect = app.add_subcommand("intersect", "Intersect two critical surfaces and classify the line");
    intersect->add_option("--s1", s1_text, "First surface \"m,n\"")->required();
    intersect->add_option("--s2", s2_text, "Second surface \"m,n\"")->required();
    add_rank(intersect);
    add_format(intersect);

    auto* classify = app.add_subcommand("classify", "Classify a line given by lambda on a surface");
    classify->add_option("--s", s_text, "Surface \"m,n\"")->required();
    classify->add_option("--lambda", lambda_text, "Exact lambda \"a/b\"")->required();
    add_rank(classify);
    add_format(classify);

    auto* enumerate = app.add_subcommand("enumerate-lines", "List the condition-2 families of a surface");
    enumerate->add_option("--s", s_text, "Surface \"m,n\"")->required();
    enumerate->add_option("--k-min", k_min, "First family index k");
    enumerate->add_option("--k-max", k_max, "Last family index k");

    auto* through = app.add_subcommand("surfaces-through", "Surfaces containing the line S1 ∩ S2");
    through->add_option("--s1", s1_text, "First surface \"m,n\"")->required();
    through->add_option("--s2", s2_text, "Second surface \"m,n\"")->required();
    through->add_option("--t-min", t_min, "First step")->required();
    through->add_option("--t-max", t_max, "Last step")->required();

    auto* verify_y = app.add_subcommand("verify-y", "Check the exact verdict against |Y - 1| on a grid");
    verify_y->add_option("--s", s_text, "Surface \"m,n\"")->required();
    verify_y->add_option("--lambda", lambda_text, "Exact lambda \"a/b\"");
    verify_y->add_option("--s2", s2_text, "Take lambda from the intersection with this surface");
    add_rank(verify_y);
    add_numeric(verify_y);
    add_format(verify_y);

    auto* verify_super = app.add_subcommand("verify-super", "Check super-abelianity on S_{m,-m}");
    verify_super->add_option("--m", m_arg, "Surface index m")->required();
    verify_super->add_option("--lambda", lambda_int, "Integer lambda")->required();
    add_rank(verify_super);
    add_numeric(verify_super);

    auto* poisson_cmd = app.add_subcommand("poisson", "Stream f^{(k,k')}(x) on a grid as CSV");
    poisson_cmd->add_option("--s", s_text, "Surface \"m,n\"")->required();
    poisson_cmd->add_option("--lambda", lambda_text, "Exact lambda \"a/b\"")->required();
    poisson_cmd->add_option("--k", k, "Fusion index k");
    poisson_cmd->add_option("--kp", kp, "Fusion index k'");
    poisson_cmd->add_option("--route", route_text, "compact or series")->check(CLI::IsMember({"compact", "series"}));
    add_rank(poisson_cmd);
    add_numeric(poisson_cmd);

    auto* scan = app.add_subcommand("scan", "Classify every intersecting pair with |m|,|n| <= box");
    scan->add_option("--box", box, "Box half-width")->required();
    add_rank(scan);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("abelian_cli");
    for (const auto& a : args) argv_store.push_back(a);
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Outcome result;
    try {
        const Format format = format_text == "csv" ? Format::csv : Format::json;
        auto numeric_context = [&]() {
            elliptic::EllipticContext ctx;
            ctx.N = N;
            ctx.q = q;
            ctx.validate();
            return ctx;
        };
        auto grid = [&]() { return grid_text.empty() ? elliptic::Grid{} : parse_grid(grid_text); };

        if (intersect->parsed()) {
            result = cmd_intersect(parse_surface(s1_text), parse_surface(s2_text), N, format);
        } else if (classify->parsed()) {
            result = cmd_classify(parse_surface(s_text), LambdaPair::from_lambda(Rational::parse(lambda_text)), N, format);
        } else if (enumerate->parsed()) {
            result = cmd_enumerate_lines(parse_surface(s_text), k_min, k_max);
        } else if (through->parsed()) {
            result = cmd_surfaces_through(parse_surface(s1_text), parse_surface(s2_text), t_min, t_max);
        } else if (verify_y->parsed()) {
            const Surface s = parse_surface(s_text);
            std::optional<LambdaPair> lam;
            if (!lambda_text.empty()) lam = LambdaPair::from_lambda(Rational::parse(lambda_text));
            if (!s2_text.empty()) {
                const auto from_line = lattice::lambda_of_intersection(s, parse_surface(s2_text));
                if (lam && !(*lam == from_line)) throw precondition_error("--lambda disagrees with --s2");
                lam = from_line;
            }
            if (!lam) {
                if (!s.has_zero_index()) throw precondition_error("verify-y needs --lambda or --s2");
                lam = LambdaPair::from_lambda(Rational(0));
            }
            result = cmd_verify_y(s, *lam, numeric_context(), grid(), format);
        } else if (verify_super->parsed()) {
            result = cmd_verify_super(m_arg, lambda_int, numeric_context(), grid());
        } else if (poisson_cmd->parsed()) {
            result = cmd_poisson(parse_surface(s_text), LambdaPair::from_lambda(Rational::parse(lambda_text)),
                                 numeric_context(), grid(), k, kp, route_text == "series" ? Route::series : Route::compact);
        } else if (scan->parsed()) {
            result = cmd_scan(box, N);
        }
    } catch (const abelian::error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    out << result.text;
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << out_path << "' for writing\n";
            return 2;
        }
        file << result.text;
    }
    return result.code;
}

} // namespace abelian::cli
