// cornerlab: corner-counting operators, box norms, circle-method sums and the
// weight comparison experiments behind them, over a single JSON-emitting CLI.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cornerlab/circle.hpp"
#include "cornerlab/counting.hpp"
#include "cornerlab/experiments.hpp"
#include "cornerlab/inverse.hpp"
#include "cornerlab/norms.hpp"

using namespace cornerlab;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Ordered flat JSON object writer with 17-significant-digit floats.
class Json {
public:
    Json& add(const std::string& k, double v) { return raw(k, fmt(v)); }
    Json& add(const std::string& k, std::int64_t v) { return raw(k, std::to_string(v)); }
    Json& add(const std::string& k, const std::string& v) { return raw(k, "\"" + v + "\""); }
    Json& add(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
    Json& raw(const std::string& k, const std::string& v) {
        if (!body_.empty()) body_ += ',';
        body_ += "\"" + k + "\":" + v;
        return *this;
    }
    std::string str() const { return "{" + body_ + "}"; }

private:
    std::string body_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GridFn load_grid(const std::string& arg, std::int64_t n) {
    if (arg == "ones") {
        if (n <= 0) throw ArgError("--N required for the 'ones' grid");
        return GridFn::ones(n);
    }
    return grid_from_json(read_file(arg));
}

LineFn load_line(const std::string& arg, std::int64_t n) {
    if (arg == "ones") {
        if (n <= 0) throw ArgError("--N required for the 'ones' line");
        return LineFn::ones(n);
    }
    return line_from_json(read_file(arg));
}

void emit(const std::string& line, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(line.c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        std::ofstream out(out_path);
        out << line << "\n";
    }
}

struct CountOpts {
    std::string op = "corners";
    std::string f0 = "ones", f1 = "ones", f2 = "ones";
    std::string poly;
    std::int64_t rho = 0;
    double w = 0.0;
    std::int64_t V = 1, r = 0, N = 0;
    int d = 2;
    std::string phases;  // JSON line file reused as phase values for --op prime
    std::string out;
};

int run_count(const CountOpts& o) {
    GridFn f0 = load_grid(o.f0, o.N), f1 = load_grid(o.f1, o.N), f2 = load_grid(o.f2, o.N);
    OperatorResult res;
    Json params;
    params.add("cmd", std::string("count")).add("op", o.op).add("N", o.N);
    if (o.op == "corners") {
        res = lambda_corners(f0, f1, f2, o.N);
    } else if (o.op == "poly") {
        res = lambda_poly(f0, f1, f2, IntPoly::parse(o.poly), o.N);
        params.add("poly", o.poly);
    } else if (o.op == "model") {
        res = lambda_model(f0, f1, f2, o.N, o.d);
        params.add("d", static_cast<std::int64_t>(o.d));
    } else if (o.op == "wtrick" || o.op == "star" || o.op == "prime") {
        WTrickContext ctx = build_w_trick(IntPoly::parse(o.poly), o.rho, o.w);
        params.add("poly", o.poly).add("rho", o.rho).add("w", o.w);
        if (o.op == "wtrick") {
            res = lambda_w(f0, f1, f2, ctx, o.N);
        } else if (o.op == "star") {
            res = lambda_star(f0, f1, f2, ctx, o.N);
        } else {
            PhaseFn a(o.N);
            if (!o.phases.empty()) {
                LineFn pf = line_from_json(read_file(o.phases));
                a = PhaseFn(pf.len());
                for (std::int64_t i = 0; i < pf.len(); ++i)
                    a.set(i, pf.values()[static_cast<std::size_t>(i)].real());
            }
            res = lambda_prime(a, f1, f2, ctx, o.V, o.r, o.N);
            params.add("V", o.V).add("r", o.r);
        }
    } else {
        throw ArgError("count: unknown --op " + o.op);
    }
    Json out;
    out.raw("params", params.str())
        .add("value_re", res.value.real())
        .add("value_im", res.value.imag())
        .add("normalization", res.normalization)
        .add("count_equivalent", res.count_equivalent)
        .add("path_agreement_error", res.path_agreement_error);
    emit(out.str(), o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corner-counting operators, box norms and circle-method diagnostics"};
    app.require_subcommand(1);
    int threads = 0;
    std::int64_t budget = 0;
    app.add_option("--threads", threads, "cap on internal parallelism");
    app.add_option("--budget", budget, "work budget override (fused multiply-adds)");

    CountOpts c;
    auto* count = app.add_subcommand("count", "corner-counting operators");
    count->add_option("--op", c.op, "corners|poly|model|wtrick|star|prime")->required();
    count->add_option("--f0", c.f0);
    count->add_option("--f1", c.f1);
    count->add_option("--f2", c.f2);
    count->add_option("--poly", c.poly);
    count->add_option("--rho", c.rho);
    count->add_option("--w", c.w);
    count->add_option("--V", c.V);
    count->add_option("--r", c.r);
    count->add_option("--d", c.d);
    count->add_option("--N", c.N)->required();
    count->add_option("--phases", c.phases);
    count->add_option("--out", c.out);

    std::string w_poly;
    std::int64_t w_K = 0, w_scan = 0;
    double w_xi = 0.0;
    bool w_has_xi = false;
    std::string w_out;
    auto* weyl = app.add_subcommand("weyl", "exponential sums of a polynomial");
    weyl->add_option("--poly", w_poly)->required();
    weyl->add_option("--K", w_K)->required();
    auto* xi_opt = weyl->add_option("--xi", w_xi);
    auto* scan_opt = weyl->add_option("--scan-grid", w_scan);
    xi_opt->excludes(scan_opt);
    scan_opt->excludes(xi_opt);
    weyl->add_option("--out", w_out);

    std::string u_poly;
    std::int64_t u_rho = 0, u_V = 1, u_N = 0, u_grid_mult = 4;
    double u_w = 0.0;
    std::string u_out;
    auto* unif = app.add_subcommand("uniformity", "Fourier-uniformity scan of the difference weight");
    unif->add_option("--P", u_poly)->required();
    unif->add_option("--rho", u_rho)->required();
    unif->add_option("--w", u_w)->required();
    unif->add_option("--V", u_V);
    unif->add_option("--N", u_N)->required();
    unif->add_option("--grid-mult", u_grid_mult);
    unif->add_option("--out", u_out);

    std::string m_poly;
    std::int64_t m_K = 0;
    int m_s = 0;
    double m_eps = 0.25;
    std::string m_out;
    auto* moments = app.add_subcommand("moments", "even moments of the Weyl sum, split by arcs");
    moments->add_option("--poly", m_poly)->required();
    moments->add_option("--K", m_K)->required();
    moments->add_option("--s", m_s)->required();
    moments->add_option("--epsilon", m_eps);
    moments->add_option("--out", m_out);

    std::string n_input, n_box, n_check, n_out;
    bool n_unnormalized = false;
    std::int64_t n_N = 0;
    auto* norm = app.add_subcommand("norm", "box and Gowers norms");
    norm->add_option("--input", n_input)->required();
    norm->add_option("--box", n_box)->required();
    norm->add_flag("--unnormalized", n_unnormalized);
    norm->add_option("--check", n_check,
                     "inductive|permutation|monotonicity|enlarging|trimming|subprogression");
    norm->add_option("--N", n_N);
    norm->add_option("--out", n_out);

    std::string i_kind, i_input, i_out, i_dirs = "e1,e2";
    std::int64_t i_H = 0, i_M = 0, i_N = 0, i_Np = 0;
    auto* inverse = app.add_subcommand("inverse", "inverse-theorem witnesses");
    inverse->add_option("--kind", i_kind, "u1|u2|u1xu1|u2xu1")->required();
    inverse->add_option("--input", i_input)->required();
    inverse->add_option("--H", i_H);
    inverse->add_option("--M", i_M);
    inverse->add_option("--N", i_N);
    inverse->add_option("--Nprime", i_Np);
    inverse->add_option("--dirs", i_dirs);
    inverse->add_option("--out", i_out);

    std::string e_kind, e_out, e_poly = "-1+0*z+1*z^2";
    std::int64_t e_rho = 1, e_N = 0, e_M = 0, e_V = 1, e_r = 0, e_n = 96, e_qmax = 8;
    double e_w = 4.0, e_eps = 0.05, e_T = 0.0, e_density = 0.5;
    std::uint64_t e_seed = 0;
    std::string e_R = "0.5*z";
    auto* exper = app.add_subcommand("experiment",
                                     "compare|supersaturation|vdc|sarkozy|smoothweight|fraction");
    exper->add_option("kind", e_kind)->required();
    exper->add_option("--P", e_poly);
    exper->add_option("--rho", e_rho);
    exper->add_option("--w", e_w);
    exper->add_option("--N", e_N);
    exper->add_option("--n", e_n);
    exper->add_option("--M", e_M);
    exper->add_option("--V", e_V);
    exper->add_option("--r", e_r);
    exper->add_option("--T", e_T);
    exper->add_option("--epsilon", e_eps);
    exper->add_option("--density", e_density);
    exper->add_option("--seed", e_seed);
    exper->add_option("--qmax", e_qmax);
    exper->add_option("--R", e_R);
    exper->add_option("--out", e_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (threads > 0) set_max_threads(threads);
    if (budget > 0) set_work_budget(budget);

    try {
        if (*count) return run_count(c);

        if (*weyl) {
            IntPoly Q = IntPoly::parse(w_poly);
            Json params;
            params.add("cmd", std::string("weyl")).add("poly", w_poly).add("K", w_K);
            if (w_scan > 0) {
                auto S = weyl_sum_grid(Q, w_K, w_scan);
                double best = -1.0;
                std::int64_t best_k = 0;
                for (std::int64_t k = 0; k < w_scan; ++k) {
                    double a = std::abs(S[static_cast<std::size_t>(k)]);
                    if (a > best) {
                        best = a;
                        best_k = k;
                    }
                }
                Json out;
                out.raw("params", params.add("scan_grid", w_scan).str())
                    .add("max_abs", best)
                    .add("argmax_xi", static_cast<double>(best_k) / static_cast<double>(w_scan));
                emit(out.str(), w_out);
            } else {
                cplx s = weyl_sum(Q, w_K, w_xi);
                Json out;
                out.raw("params", params.add("xi", w_xi).str())
                    .add("re", s.real())
                    .add("im", s.imag());
                emit(out.str(), w_out);
            }
            return 0;
        }

        if (*unif) {
            WTrickContext ctx = build_w_trick(IntPoly::parse(u_poly), u_rho, u_w);
            UniformityReport rep = uniformity_scan(ctx, u_N, u_V, u_grid_mult);
            Json params;
            params.add("cmd", std::string("uniformity"))
                .add("P", u_poly)
                .add("rho", u_rho)
                .add("w", u_w)
                .add("V", u_V)
                .add("N", u_N)
                .add("grid_mult", u_grid_mult);
            Json out;
            out.raw("params", params.str())
                .add("max_abs", rep.max_abs)
                .add("argmax_theta", rep.argmax_theta)
                .add("argmax_r", rep.argmax_r)
                .add("trivial_bound", rep.trivial_bound);
            emit(out.str(), u_out);
            return 0;
        }

        if (*moments) {
            IntPoly Q = IntPoly::parse(m_poly);
            MomentReport rep = moment_report(Q, m_K, Q.degree(), m_eps, m_s);
            Json params;
            params.add("cmd", std::string("moments"))
                .add("poly", m_poly)
                .add("K", m_K)
                .add("s", static_cast<std::int64_t>(m_s))
                .add("epsilon", m_eps);
            Json out;
            out.raw("params", params.str())
                .add("minor_moment", rep.minor_moment)
                .add("major_moment", rep.major_moment)
                .add("total_moment", rep.total_moment)
                .add("bound_ratio", rep.bound_ratio)
                .add("grid", rep.grid);
            emit(out.str(), m_out);
            return 0;
        }

        if (*norm) {
            std::string text = read_file(n_input);
            BoxSpec spec = BoxSpec::parse(n_box);
            Json params;
            params.add("cmd", std::string("norm")).add("box", n_box).add(
                "unnormalized", n_unnormalized);
            bool is_line = text.find("\"line\"") != std::string::npos;
            Json out;
            if (!n_check.empty()) {
                GridFn f = grid_from_json(text);
                BoxProperty variant;
                if (n_check == "inductive")
                    variant = BoxProperty::kInductiveFormula;
                else if (n_check == "permutation")
                    variant = BoxProperty::kPermutation;
                else if (n_check == "monotonicity")
                    variant = BoxProperty::kMonotonicity;
                else if (n_check == "enlarging")
                    variant = BoxProperty::kEnlarging;
                else if (n_check == "trimming")
                    variant = BoxProperty::kTrimming;
                else if (n_check == "subprogression")
                    variant = BoxProperty::kSubProgression;
                else
                    throw ArgError("norm: unknown --check " + n_check);
                BoxPropertyReport rep = check_box_properties(f, spec, variant);
                out.raw("params", params.add("check", n_check).str())
                    .add("lhs", rep.lhs)
                    .add("rhs", rep.rhs)
                    .add("bound", rep.bound)
                    .add("realized", rep.realized)
                    .add("holds", rep.holds);
            } else if (n_unnormalized) {
                std::vector<Direction> dirs;
                for (const BoxFactor& bf : spec.factors) dirs.push_back(bf.dir);
                NormResult res = is_line
                                     ? unnormalized_box_norm_line(line_from_json(text), spec.s())
                                     : unnormalized_box_norm(grid_from_json(text), dirs);
                out.raw("params", params.str())
                    .add("value_pow", res.value_pow)
                    .add("s", static_cast<std::int64_t>(res.s))
                    .add("value", res.value);
            } else {
                NormResult res = is_line ? box_norm_line(line_from_json(text), spec)
                                         : box_norm(grid_from_json(text), spec);
                out.raw("params", params.str())
                    .add("value_pow", res.value_pow)
                    .add("s", static_cast<std::int64_t>(res.s))
                    .add("value", res.value);
            }
            emit(out.str(), n_out);
            return 0;
        }

        if (*inverse) {
            std::string text = read_file(i_input);
            Json params;
            params.add("cmd", std::string("inverse")).add("kind", i_kind);
            Witness wit;
            if (i_kind == "u1") {
                LineFn f = line_from_json(text);
                if (i_N <= 0) i_N = f.len();
                if (i_Np <= 0) i_Np = 2 * i_N;
                wit = u1_witness_line(f, i_N, i_Np);
            } else if (i_kind == "u2") {
                LineFn f = line_from_json(text);
                if (i_M <= 0) i_M = 4 * f.len();
                wit = u2_witness_line(f, i_M);
            } else if (i_kind == "u1xu1") {
                GridFn f = grid_from_json(text);
                Direction v1 = Direction::e1(), v2 = Direction::e2();
                if (i_dirs == "e1,e2-e1") v2 = Direction::e2_minus_e1();
                if (i_dirs == "e2,e2-e1") {
                    v1 = Direction::e2();
                    v2 = Direction::e2_minus_e1();
                }
                wit = u1xu1_witness(f, v1, v2);
            } else if (i_kind == "u2xu1") {
                GridFn f = grid_from_json(text);
                if (i_H <= 0) i_H = f.n() / 4;
                wit = u2xu1_witness(f, i_H);
            } else {
                throw ArgError("inverse: unknown --kind " + i_kind);
            }
            Json out;
            out.raw("params", params.str())
                .add("correlation", wit.correlation)
                .add("norm_pow", wit.norm_pow)
                .add("implied_delta", wit.implied_delta)
                .add("direction_ok", wit.direction_ok)
                .add("realized_constant", wit.realized_constant)
                .add("freq", wit.freq);
            emit(out.str(), i_out);
            return 0;
        }

        if (*exper) {
            Json params;
            params.add("cmd", std::string("experiment")).add("kind", e_kind).add("seed",
                static_cast<std::int64_t>(e_seed));
            if (e_kind == "compare") {
                WTrickContext ctx = build_w_trick(IntPoly::parse(e_poly), e_rho, e_w);
                if (e_N <= 0) e_N = 1296;
                CompareStudy st = compare_study(ctx, e_N, {e_density}, {e_seed}, true, 4);
                std::string lines;
                for (const CompareRow& row : st.rows) {
                    Json jr;
                    jr.add("density", row.density)
                        .add("seed", static_cast<std::int64_t>(row.seed))
                        .add("context", row.context_label)
                        .add("lambda_w", row.lambda_w)
                        .add("lambda_model", row.lambda_model)
                        .add("lambda_star", row.lambda_star)
                        .add("star_two_path_error", row.star_two_path_error)
                        .add("star_over_n2", row.star_over_n2)
                        .add("star_over_n2_nontrivial", row.star_over_n2_nontrivial)
                        .add("uniformity_max_abs", st.uniformity_max_abs);
                    if (!lines.empty()) lines += "\n";
                    lines += Json().raw("params", params.str()).raw("row", jr.str()).str();
                }
                emit(lines, e_out);
            } else if (e_kind == "supersaturation") {
                PointSet2D A = generate_set(SetKind::kRandom, e_n, e_density, e_seed);
                if (e_M <= 0) e_M = e_n / 12;
                VarnavidesReport rep = varnavides_subsample(A, e_M);
                Json out;
                out.raw("params", params.add("n", e_n).add("M", e_M).add("density", e_density).str())
                    .add("good_pairs", rep.good_pairs)
                    .add("coverage_check", rep.coverage_check)
                    .add("corner_lower_bound", rep.corner_lower_bound);
                emit(out.str(), e_out);
            } else if (e_kind == "vdc") {
                if (e_N <= 0) e_N = 512;
                std::mt19937_64 rng(e_seed);
                std::uniform_real_distribution<double> u(0.0, 1.0);
                LineFn f(0, e_N);
                for (std::int64_t x = 0; x < e_N; ++x)
                    f.set(x, cplx{0.6, 0.0} + 0.4 * e_of(u(rng)));
                VdcReport rep = van_der_corput_check(f, e_N, 10, 0.3);
                Json out;
                out.raw("params", params.add("N", e_N).str())
                    .add("lhs", rep.lhs)
                    .add("rhs1", rep.rhs1)
                    .add("rhs2", rep.rhs2)
                    .add("hypothesis_met", rep.hypothesis_met)
                    .add("holds", rep.holds);
                emit(out.str(), e_out);
            } else if (e_kind == "sarkozy") {
                if (e_N <= 0) e_N = 512;
                LineFn f0 = LineFn::ones(e_N), f1 = LineFn::ones(e_N);
                SarkozyReport rep = sarkozy_check(f0, f1, IntPoly::parse(e_poly), e_N, e_qmax);
                Json out;
                out.raw("params", params.add("N", e_N).add("poly", e_poly).str())
                    .add("poly_correlation", rep.poly_correlation)
                    .add("best_q", rep.best_q)
                    .add("best_linear_correlation", rep.best_linear_correlation)
                    .add("n_prime", rep.n_prime);
                emit(out.str(), e_out);
            } else if (e_kind == "smoothweight") {
                if (e_N <= 0) e_N = 4096;
                SmoothedWeightReport rep = smoothed_weight(e_N, 2, e_eps);
                Json out;
                out.raw("params", params.add("N", e_N).add("epsilon", e_eps).str())
                    .add("l1_distance", rep.l1_distance)
                    .add("l1_ratio", rep.l1_ratio)
                    .add("lipschitz", rep.lipschitz)
                    .add("lipschitz_ratio", rep.lipschitz_ratio);
                emit(out.str(), e_out);
            } else if (e_kind == "fraction") {
                WTrickContext ctx = build_w_trick(IntPoly::parse(e_poly), e_rho, e_w);
                if (e_T <= 0.0) e_T = 1296.0;
                FractionComparisonReport rep =
                    fraction_comparison_report(RealPoly::parse(e_R), ctx, e_V, e_r, e_T);
                Json out;
                out.raw("params",
                        params.add("P", e_poly).add("R", e_R).add("V", e_V).add("r", e_r).add(
                            "T", e_T).str())
                    .add("composed_norm", rep.composed_norm)
                    .add("direct_norm", rep.direct_norm)
                    .add("ratio", rep.ratio)
                    .add("both_zero", rep.both_zero)
                    .add("hypothesis_ok", rep.hypothesis_ok);
                emit(out.str(), e_out);
            } else {
                throw ArgError("experiment: unknown kind " + e_kind);
            }
            return 0;
        }
    } catch (const ArgError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const ComputeError& e) {
        Json out;
        out.add("error", e.name()).add("detail", std::string(e.what()));
        std::fputs(out.str().c_str(), stdout);
        std::fputc('\n', stdout);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
