#include "cornerlab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>

#include "cornerlab/circle.hpp"
#include "cornerlab/counting.hpp"

namespace cornerlab {

PointSet2D::PointSet2D(std::int64_t n) : n_(n) {
    if (n <= 0) throw ArgError("PointSet2D: n must be positive");
    words_ = (n + 63) / 64;
    rows_.assign(static_cast<std::size_t>(n),
                 std::vector<std::uint64_t>(static_cast<std::size_t>(words_), 0));
}

void PointSet2D::insert(std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= n_ || y >= n_) throw ArgError("PointSet2D: point out of range");
    auto& word = rows_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x >> 6)];
    std::uint64_t bit = 1ULL << (x & 63);
    if (!(word & bit)) {
        word |= bit;
        ++count_;
    }
}

std::vector<std::pair<std::int64_t, std::int64_t>> PointSet2D::points() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (std::int64_t y = 0; y < n_; ++y)
        for (std::int64_t x = 0; x < n_; ++x)
            if (has(x, y)) out.emplace_back(x, y);
    return out;
}

GridFn PointSet2D::to_grid() const {
    GridFn g(n_);
    for (std::int64_t y = 0; y < n_; ++y)
        for (std::int64_t x = 0; x < n_; ++x)
            if (has(x, y)) g.set(x, y, cplx{1.0, 0.0});
    g.mark_one_bounded();
    return g;
}

std::int64_t PointSet2D::corners_at_shift(std::int64_t t) const {
    if (t < 0 || t >= n_) {
        if (t >= n_ || t <= -n_) return 0;
        // Negative shifts: membership loop.
        std::int64_t c = 0;
        for (std::int64_t y = 0; y < n_; ++y)
            for (std::int64_t x = 0; x < n_; ++x)
                if (has(x, y) && has(x + t, y) && has(x, y + t)) ++c;
        return c;
    }
    const std::int64_t word_shift = t >> 6;
    const int bit_shift = static_cast<int>(t & 63);
    std::int64_t total = 0;
    std::vector<std::uint64_t> shifted(static_cast<std::size_t>(words_));
    for (std::int64_t y = 0; y + t < n_; ++y) {
        const auto& row = rows_[static_cast<std::size_t>(y)];
        const auto& row2 = rows_[static_cast<std::size_t>(y + t)];
        // shifted = row >> t (bitwise across words).
        for (std::int64_t wi = 0; wi < words_; ++wi) {
            std::uint64_t lo = wi + word_shift < words_
                                   ? row[static_cast<std::size_t>(wi + word_shift)]
                                   : 0;
            std::uint64_t hi = wi + word_shift + 1 < words_
                                   ? row[static_cast<std::size_t>(wi + word_shift + 1)]
                                   : 0;
            shifted[static_cast<std::size_t>(wi)] =
                bit_shift == 0 ? lo : (lo >> bit_shift) | (hi << (64 - bit_shift));
        }
        for (std::int64_t wi = 0; wi < words_; ++wi)
            total += std::popcount(row[static_cast<std::size_t>(wi)] &
                                   shifted[static_cast<std::size_t>(wi)] &
                                   row2[static_cast<std::size_t>(wi)]);
    }
    return total;
}

namespace {

// Greedy first-fit 3-AP-free subset of [0, limit).
std::vector<std::int64_t> greedy_ap3_free(std::int64_t limit) {
    std::vector<bool> in(static_cast<std::size_t>(limit), false);
    std::vector<std::int64_t> out;
    for (std::int64_t t = 0; t < limit; ++t) {
        bool ok = true;
        // Adding t forms an AP (a, b, t) iff a = 2b - t with a, b already in.
        for (std::int64_t b : out) {
            std::int64_t a = 2 * b - t;
            if (a >= 0 && a < limit && in[static_cast<std::size_t>(a)]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            in[static_cast<std::size_t>(t)] = true;
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

PointSet2D generate_set(SetKind kind, std::int64_t n, double density, std::uint64_t seed,
                        const std::string& path) {
    PointSet2D A(n);
    switch (kind) {
        case SetKind::kRandom: {
            if (!(density > 0.0 && density <= 1.0))
                throw ArgError("generate_set: density must lie in (0,1]");
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (std::int64_t y = 0; y < n; ++y)
                for (std::int64_t x = 0; x < n; ++x)
                    if (u(rng) < density) A.insert(x, y);
            return A;
        }
        case SetKind::kDiagonalFree: {
            auto S = greedy_ap3_free(3 * n - 2);
            std::vector<bool> in(static_cast<std::size_t>(3 * n - 2), false);
            for (std::int64_t s : S) in[static_cast<std::size_t>(s)] = true;
            for (std::int64_t y = 0; y < n; ++y)
                for (std::int64_t x = 0; x < n; ++x)
                    if (in[static_cast<std::size_t>(x + 2 * y)]) A.insert(x, y);
            return A;
        }
        case SetKind::kFile: {
            std::ifstream in(path);
            if (!in) throw ArgError("generate_set: cannot open " + path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            GridFn g = grid_from_json(text);
            PointSet2D B(g.n());
            for (std::int64_t y = 0; y < g.n(); ++y)
                for (std::int64_t x = 0; x < g.n(); ++x)
                    if (g.at(x, y) != cplx{0.0, 0.0}) B.insert(x, y);
            return B;
        }
    }
    throw ArgError("generate_set: unknown kind");
}

std::int64_t count_corners(const PointSet2D& A, const IntPoly& P, bool nontrivial_only) {
    if (P.leading() <= 0) throw ArgError("count_corners: leading coefficient must be positive");
    const std::int64_t K = scale_k(P.leading(), P.degree(), A.n());
    std::int64_t total = 0;
    for (std::int64_t z = 0; z < K; ++z) {
        std::int64_t t = P.eval_i64(z);
        if (nontrivial_only && t == 0) continue;
        total += A.corners_at_shift(t);
    }
    return total;
}

VarnavidesReport varnavides_subsample(const PointSet2D& A, std::int64_t M) {
    const std::int64_t n = A.n();
    if (M < 1 || M > n / 3) throw ArgError("varnavides_subsample: need 1 <= M <= n/3");
    VarnavidesReport rep;
    rep.coverage_check = true;
    rep.d_max = n / (3 * M);
    const double thresh = A.density() / 2.0 * static_cast<double>(M) * static_cast<double>(M);
    for (std::int64_t d = 1; d <= rep.d_max; ++d) {
        std::int64_t coverage = 0;
        std::int64_t good = 0;
        for (std::int64_t uy = -d * (M - 1); uy < n; ++uy)
            for (std::int64_t ux = -d * (M - 1); ux < n; ++ux) {
                std::int64_t members = 0;
                for (std::int64_t ky = 0; ky < M; ++ky)
                    for (std::int64_t kx = 0; kx < M; ++kx)
                        if (A.has(ux + d * kx, uy + d * ky)) ++members;
                coverage += members;
                if (static_cast<double>(members) >= thresh) ++good;
            }
        if (coverage != M * M * A.size()) rep.coverage_check = false;
        rep.good_per_d.push_back(good);
        rep.good_pairs += good;
    }
    rep.corner_lower_bound = rep.good_pairs / (M * M * M);
    return rep;
}

CompareStudy compare_study(const WTrickContext& ctx, std::int64_t N,
                           const std::vector<double>& densities,
                           const std::vector<std::uint64_t>& seeds, bool with_uniformity_scan,
                           std::int64_t grid_mult) {
    if (N < 1) throw ArgError("compare_study: N must be positive");
    const std::int64_t K = scale_k(ctx, N);
    if (K < 1) throw ComputeError("N-too-small", "compare_study: scale K vanishes");
    CompareStudy study;
    Weight nu = weight_nu(N, ctx.d);
    Weight star = weight_nu_star(ctx, N);
    std::vector<std::int64_t> shifts(static_cast<std::size_t>(K));
    for (std::int64_t z = 0; z < K; ++z) shifts[static_cast<std::size_t>(z)] = ctx.p_tilde.eval_i64(z);

    for (double density : densities) {
        for (std::uint64_t seed : seeds) {
            PointSet2D A = generate_set(SetKind::kRandom, N, density, seed);
            // One exact profile serves every operator.
            std::vector<double> profile(static_cast<std::size_t>(N), 0.0);
            parallel_blocks(N, 16, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t t = lo; t < hi; ++t)
                    profile[static_cast<std::size_t>(t)] =
                        static_cast<double>(A.corners_at_shift(t));
            });
            auto prof_at = [&](std::int64_t t) {
                return t >= 0 && t < N ? profile[static_cast<std::size_t>(t)] : 0.0;
            };
            double lam_w = 0.0, lam_w_nt = 0.0;
            for (std::int64_t t : shifts) {
                lam_w += prof_at(t);
                if (t != 0) lam_w_nt += prof_at(t);
            }
            lam_w /= static_cast<double>(K);
            lam_w_nt /= static_cast<double>(K);
            double lam_model = 0.0;
            for (std::int64_t t = 0; t < N; ++t) lam_model += nu.at(t) * prof_at(t);
            lam_model /= static_cast<double>(N);
            double lam_model_nt = lam_model - nu.at(0) * prof_at(0) / static_cast<double>(N);
            double star_diff = lam_w - lam_model;
            double star_weighted = 0.0;
            for (std::int64_t t = star.offset(); t < star.offset() + star.len(); ++t)
                star_weighted += star.at(t) * prof_at(t);
            star_weighted /= static_cast<double>(N);

            CompareRow row;
            row.density = density;
            row.seed = seed;
            row.context_label = "W=" + ctx.W.str();
            row.lambda_w = lam_w;
            row.lambda_model = lam_model;
            row.lambda_star = star_diff;
            row.star_two_path_error =
                std::abs(star_diff - star_weighted) / std::max(1.0, std::abs(star_diff));
            row.star_over_n2 =
                std::abs(star_diff) / (static_cast<double>(N) * static_cast<double>(N));
            row.lambda_star_nontrivial = lam_w_nt - lam_model_nt;
            row.star_over_n2_nontrivial = std::abs(row.lambda_star_nontrivial) /
                                          (static_cast<double>(N) * static_cast<double>(N));
            study.rows.push_back(row);
        }
    }
    if (with_uniformity_scan) {
        std::int64_t V = ctx.W == 1 ? 1 : ctx.W.convert_to<std::int64_t>();
        UniformityReport u = uniformity_scan_weight(star, N, V, grid_mult);
        study.uniformity_max_abs = u.max_abs;
        study.uniformity_trivial = u.trivial_bound;
    }
    return study;
}

SmoothedWeightReport smoothed_weight(std::int64_t N, int d, double eps) {
    if (!(eps > 0.0 && eps < 0.25)) throw ArgError("smoothed_weight: eps must lie in (0, 1/4)");
    SmoothedWeightReport rep;
    Weight nu = weight_nu(N, d);
    rep.nu_eps = Weight(N, 0, N);
    const double en = eps * static_cast<double>(N);
    auto ramp = [&](std::int64_t z) -> double {
        double t = static_cast<double>(z);
        if (t < en || t > static_cast<double>(N - 1)) return 0.0;
        double up = (t - en) / en;                                   // 0 at eps N, 1 at 2 eps N
        double down = (static_cast<double>(N - 1) - t) / en;         // 1 at (1-eps)N-1, 0 at N-1
        return std::max(0.0, std::min({1.0, up, down}));
    };
    for (std::int64_t z = 0; z < N; ++z) rep.nu_eps.set(z, nu.at(z) * ramp(z));

    double l1 = 0.0;
    for (std::int64_t z = 0; z < N; ++z) l1 += std::abs(rep.nu_eps.at(z) - nu.at(z));
    rep.l1_distance = l1;
    rep.l1_ratio = l1 / (std::pow(eps, 1.0 / d) * static_cast<double>(N));
    double lip = 0.0;
    for (std::int64_t z = 0; z + 1 < N; ++z)
        lip = std::max(lip, std::abs(rep.nu_eps.at(z + 1) - rep.nu_eps.at(z)));
    rep.lipschitz = lip;
    rep.lipschitz_ratio = lip * std::pow(eps, 3.0) * static_cast<double>(N);
    rep.equal_from = static_cast<std::int64_t>(std::ceil(2.0 * en));
    rep.equal_to = static_cast<std::int64_t>(std::floor((1.0 - eps) * N)) - 1;
    return rep;
}

SarkozyReport sarkozy_check(const LineFn& f0, const LineFn& f1, const IntPoly& Q, std::int64_t N,
                            std::int64_t q_max, std::int64_t n_prime) {
    if (Q.degree() < 2) throw ArgError("sarkozy_check: polynomial degree must be at least 2");
    if (Q.leading() <= 0) throw ArgError("sarkozy_check: leading coefficient must be positive");
    SarkozyReport rep;
    const std::int64_t K = scale_k(Q.leading(), Q.degree(), N);
    if (K < 1) throw ComputeError("N-too-small", "sarkozy_check: scale K vanishes");

    cplx poly{0.0, 0.0};
    for (std::int64_t z = 0; z < K; ++z) {
        std::int64_t t = Q.eval_i64(z);
        cplx inner{0.0, 0.0};
        for (std::int64_t x = -std::llabs(t); x < N + std::llabs(t); ++x)
            inner += f0.at(x) * f1.at(x + t);
        poly += inner;
    }
    rep.poly_correlation = std::abs(poly) / static_cast<double>(K);

    rep.n_prime = n_prime > 0 ? n_prime : std::max<std::int64_t>(2, N / 8);
    rep.per_q.resize(static_cast<std::size_t>(q_max), 0.0);
    for (std::int64_t q = 1; q <= q_max; ++q) {
        double total = 0.0;
        for (std::int64_t x = -q * rep.n_prime; x < N; ++x) {
            cplx inner{0.0, 0.0};
            for (std::int64_t z = 0; z < rep.n_prime; ++z) inner += f1.at(x + q * z);
            total += std::abs(inner) / static_cast<double>(rep.n_prime);
        }
        rep.per_q[static_cast<std::size_t>(q - 1)] = total;
        if (total > rep.best_linear_correlation) {
            rep.best_linear_correlation = total;
            rep.best_q = q;
        }
    }
    return rep;
}

FractionComparisonReport fraction_comparison_report(const RealPoly& R, const WTrickContext& ctx,
                                                    std::int64_t V, std::int64_t r, double T) {
    if (R.degree() < 1) throw ComputeError("degree-zero", "fraction_comparison_report");
    FractionComparisonReport rep;
    rep.hypothesis_ok = gcd_coprimality_check(ctx, V, r).ok;

    IntPoly tv = v_trick_poly(ctx.p_tilde, r, V);
    // R o tv with double coefficients, via exact integer powers of tv.
    std::vector<double> comp(static_cast<std::size_t>(R.degree() * tv.degree()) + 1, 0.0);
    comp[0] += R.coeffs[0];
    IntPoly power = IntPoly::from_i64({1});
    for (int i = 1; i <= R.degree(); ++i) {
        power = power * tv;
        double ri = R.coeffs[static_cast<std::size_t>(i)];
        if (ri == 0.0) continue;
        for (int k = 0; k <= power.degree(); ++k)
            comp[static_cast<std::size_t>(k)] += ri * power.coeff(k).convert_to<double>();
    }
    RealPoly composed(std::move(comp));

    BigInt vd = leading_coeff_vd(ctx, V, r);
    double scale = std::pow(T / vd.convert_to<double>(), 1.0 / ctx.d);
    rep.composed_norm = smoothness_norm(composed, scale);
    rep.direct_norm = smoothness_norm(R, T);
    if (rep.composed_norm == 0.0 && rep.direct_norm == 0.0) {
        rep.both_zero = true;
        rep.ratio = 0.0;
    } else {
        rep.ratio = rep.composed_norm > 0.0 ? rep.direct_norm / rep.composed_norm
                                            : std::numeric_limits<double>::infinity();
    }
    return rep;
}

}  // namespace cornerlab
