#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "cornerlab/counting.hpp"
#include "cornerlab/experiments.hpp"

using namespace cornerlab;

namespace {

WTrickContext ref_ctx() { return build_w_trick(IntPoly::from_i64({-1, 0, 1}), 1, 4.0); }

// Independent corner re-enumeration over the explicit point list.
std::int64_t reenumerate(const PointSet2D& A, const IntPoly& P, bool nontrivial) {
    std::set<std::pair<std::int64_t, std::int64_t>> S;
    for (auto& p : A.points()) S.insert(p);
    auto has = [&](std::int64_t x, std::int64_t y) { return S.count({x, y}) > 0; };
    std::int64_t K = scale_k(P.leading(), P.degree(), A.n());
    std::int64_t total = 0;
    for (std::int64_t z = 0; z < K; ++z) {
        std::int64_t t = P.eval_i64(z);
        if (nontrivial && t == 0) continue;
        for (auto& [x, y] : A.points())
            if (has(x + t, y) && has(x, y + t)) ++total;
    }
    return total;
}

}  // namespace

TEST_CASE("generate_set") {
    PointSet2D full = generate_set(SetKind::kRandom, 16, 1.0, 7);
    CHECK(full.size() == 256);
    PointSet2D a = generate_set(SetKind::kRandom, 32, 0.4, 99);
    PointSet2D b = generate_set(SetKind::kRandom, 32, 0.4, 99);
    CHECK(a.points() == b.points());
    PointSet2D c = generate_set(SetKind::kRandom, 32, 0.4, 100);
    CHECK(a.points() != c.points());
    CHECK_THROWS_AS(generate_set(SetKind::kRandom, 8, 0.0, 1), ArgError);
}

TEST_CASE("diagonal-free generator has no nontrivial linear corners") {
    IntPoly linear = IntPoly::from_i64({0, 1});
    for (std::int64_t n : {16, 64, 128}) {
        PointSet2D A = generate_set(SetKind::kDiagonalFree, n, 0.0, 0);
        CHECK(A.size() > 0);
        CHECK(count_corners(A, linear, true) == 0);
        // Trivial corners are exactly the points themselves.
        CHECK(count_corners(A, linear, false) == A.size());
    }
}

TEST_CASE("count_corners examples") {
    IntPoly linear = IntPoly::from_i64({0, 1});
    PointSet2D A(2);
    A.insert(0, 0);
    A.insert(1, 0);
    A.insert(0, 1);
    CHECK(count_corners(A, linear, true) == 1);

    IntPoly z2 = IntPoly::from_i64({0, 0, 1});
    PointSet2D full(4);
    for (std::int64_t y = 0; y < 4; ++y)
        for (std::int64_t x = 0; x < 4; ++x) full.insert(x, y);
    CHECK(count_corners(full, z2, true) == 9);
    CHECK(count_corners(full, z2, false) == 25);

    // K * lambda equals the exact count for indicator inputs.
    WTrickContext ctx = ref_ctx();
    PointSet2D R = generate_set(SetKind::kRandom, 96, 0.5, 5);
    GridFn g = R.to_grid();
    OperatorResult lw = lambda_w(g, g, g, ctx, 96);
    std::int64_t exact = count_corners(R, ctx.p_tilde, false);
    CHECK(lw.count_equivalent == doctest::Approx(static_cast<double>(exact)).epsilon(1e-9));
}

TEST_CASE("count_corners matches independent re-enumeration") {
    IntPoly linear = IntPoly::from_i64({0, 1});
    IntPoly z2 = IntPoly::from_i64({0, 0, 1});
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        PointSet2D A = generate_set(SetKind::kRandom, 48, 0.35, 1000 + seed);
        for (const IntPoly& P : {linear, z2}) {
            CHECK(count_corners(A, P, true) == reenumerate(A, P, true));
            CHECK(count_corners(A, P, false) == reenumerate(A, P, false));
        }
    }
}

TEST_CASE("varnavides subsampling") {
    // Full grid: cell occupancies factor into 1-d counts, so the good count
    // has an independent closed form; fully interior cells are all full.
    const std::int64_t n = 24, M = 4;
    PointSet2D full = generate_set(SetKind::kRandom, n, 1.0, 0);
    VarnavidesReport rf = varnavides_subsample(full, M);
    CHECK(rf.coverage_check);
    std::int64_t expected_pairs = 0;
    for (std::int64_t d = 1; d <= n / (3 * M); ++d) {
        std::vector<std::int64_t> cnt;
        for (std::int64_t u = -d * (M - 1); u < n; ++u) {
            std::int64_t c = 0;
            for (std::int64_t k = 0; k < M; ++k)
                if (u + d * k >= 0 && u + d * k < n) ++c;
            cnt.push_back(c);
        }
        std::int64_t good = 0;
        for (std::int64_t a : cnt)
            for (std::int64_t b : cnt)
                if (2 * a * b >= M * M) ++good;
        expected_pairs += good;
    }
    CHECK(rf.good_pairs == expected_pairs);

    // Coverage identity is exact for random sets.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        PointSet2D A = generate_set(SetKind::kRandom, 40, 0.3 + 0.05 * seed, 300 + seed);
        VarnavidesReport r = varnavides_subsample(A, 5);
        CHECK(r.coverage_check);
    }

    // The proof's per-d lower bound X(d) >= (density/9) n^2 at density 1/2.
    PointSet2D A = generate_set(SetKind::kRandom, 96, 0.5, 42);
    VarnavidesReport r = varnavides_subsample(A, 8);
    CHECK(r.coverage_check);
    double bar = A.density() / 9.0 * 96.0 * 96.0;
    for (std::int64_t x : r.good_per_d) CHECK(static_cast<double>(x) >= bar);

    CHECK_THROWS_AS(varnavides_subsample(A, 40), ArgError);
}

TEST_CASE("compare study on the full grid matches the closed-form mass") {
    WTrickContext ctx = ref_ctx();
    std::int64_t N = 96;
    CompareStudy st = compare_study(ctx, N, {1.0}, {0});
    REQUIRE(st.rows.size() == 1);
    const CompareRow& row = st.rows[0];
    CHECK(row.star_two_path_error <= 1e-9);
    // Independent weight-mass evaluation: Lambda* = (1/N) sum_t nu*(t) (N-t)_+^2.
    Weight star = weight_nu_star(ctx, N);
    double expect = 0.0;
    for (std::int64_t t = star.offset(); t < star.offset() + star.len(); ++t) {
        double base = static_cast<double>(std::max<std::int64_t>(0, N - std::llabs(t)));
        expect += star.at(t) * base * base;
    }
    expect /= static_cast<double>(N);
    CHECK(row.lambda_star == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("compare study cross-checks the direct operators") {
    WTrickContext ctx = ref_ctx();
    std::int64_t N = 96;
    CompareStudy st = compare_study(ctx, N, {0.5}, {3});
    REQUIRE(st.rows.size() == 1);
    PointSet2D A = generate_set(SetKind::kRandom, N, 0.5, 3);
    GridFn g = A.to_grid();
    OperatorResult lw = lambda_w(g, g, g, ctx, N);
    OperatorResult lm = lambda_model(g, g, g, N, ctx.d);
    CHECK(st.rows[0].lambda_w == doctest::Approx(lw.value.real()).epsilon(1e-9));
    CHECK(st.rows[0].lambda_model == doctest::Approx(lm.value.real()).epsilon(1e-9));
}

TEST_CASE("smoothed weight") {
    std::int64_t N = 4096;
    SmoothedWeightReport r1 = smoothed_weight(N, 2, 0.01);
    SmoothedWeightReport r2 = smoothed_weight(N, 2, 0.02);
    SmoothedWeightReport r4 = smoothed_weight(N, 2, 0.04);
    // Scaling: the l1 ratio is stable within ±50% across the eps ladder.
    double mid = r2.l1_ratio;
    CHECK(r1.l1_ratio >= 0.5 * mid);
    CHECK(r1.l1_ratio <= 1.5 * mid);
    CHECK(r4.l1_ratio >= 0.5 * mid);
    CHECK(r4.l1_ratio <= 1.5 * mid);

    // Exact equality with nu away from the boundary.
    Weight nu = weight_nu(N, 2);
    for (std::int64_t z = r2.equal_from; z <= r2.equal_to; z += 97)
        CHECK(r2.nu_eps.at(z) == nu.at(z));
    // Vanishing outside [eps N, N-1].
    CHECK(r2.nu_eps.at(10) == 0.0);
    CHECK(r2.nu_eps.at(N - 1) == 0.0);
    CHECK(r2.lipschitz > 0.0);
    CHECK_THROWS_AS(smoothed_weight(N, 2, 0.3), ArgError);
}

TEST_CASE("sarkozy check") {
    std::int64_t N = 256;
    IntPoly z2 = IntPoly::from_i64({0, 0, 1});
    LineFn ones = LineFn::ones(N);
    // Full indicators: E_z (N - z^2)_+ = N - 77.5 at K = 16.
    SarkozyReport full = sarkozy_check(ones, ones, z2, N);
    CHECK(full.poly_correlation == doctest::Approx(static_cast<double>(N) - 77.5));
    CHECK(full.best_linear_correlation >= 0.9 * static_cast<double>(N));

    // 3-periodic phase: the best linear progression has difference 3.
    LineFn f1(0, N);
    for (std::int64_t x = 0; x < N; ++x)
        f1.set(x, e_of(static_cast<double>(x) / 3.0));
    LineFn f0(0, N);
    for (std::int64_t x = 0; x < N; ++x)
        f0.set(x, std::conj(e_of(static_cast<double>(x) / 3.0)));
    SarkozyReport rep = sarkozy_check(f0, f1, z2, N, 8);
    CHECK(rep.best_q == 3);
    CHECK(rep.poly_correlation >= 0.3 * static_cast<double>(N));

    // Random signs: everything small.
    std::mt19937_64 rng(4);
    LineFn r0(0, N), r1(0, N);
    for (std::int64_t x = 0; x < N; ++x) {
        r0.set(x, cplx{rng() & 1 ? 1.0 : -1.0, 0.0});
        r1.set(x, cplx{rng() & 1 ? 1.0 : -1.0, 0.0});
    }
    SarkozyReport rr = sarkozy_check(r0, r1, z2, N, 8);
    CHECK(rr.poly_correlation <= 0.2 * static_cast<double>(N));

    CHECK_THROWS_AS(sarkozy_check(ones, ones, IntPoly::from_i64({0, 1}), N), ArgError);
}

TEST_CASE("fraction comparison report") {
    WTrickContext ctx = ref_ctx();
    // Integer-slope polynomial: both norms vanish.
    auto zero = fraction_comparison_report(RealPoly({0.0, 1.0}), ctx, 6, 0, 1296.0);
    CHECK(zero.both_zero);

    // Reference instance: R(z) = 0.5 z, V = 6, r = 0, T = 6^4.
    auto rep = fraction_comparison_report(RealPoly({0.0, 0.5}), ctx, 6, 0, 1296.0);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.composed_norm == doctest::Approx(3.0));
    CHECK(rep.direct_norm == doctest::Approx(648.0));
    CHECK(rep.ratio == doctest::Approx(216.0));

    auto all_int = fraction_comparison_report(RealPoly({0.0, 2.0, 3.0}), ctx, 6, 0, 1296.0);
    CHECK(all_int.both_zero);
}
