#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cornerlab/polynomial.hpp"
#include "cornerlab/weights.hpp"

using namespace cornerlab;

TEST_CASE("v_trick_poly examples") {
    IntPoly Q = IntPoly::from_i64({0, 0, 1});  // z^2
    IntPoly t = v_trick_poly(Q, 1, 3);
    CHECK(t == IntPoly::from_i64({0, 2, 3}));  // 3z^2 + 2z

    IntPoly P = IntPoly::from_i64({7, -3, 2, 5});
    IntPoly drop = v_trick_poly(P, 0, 1);
    CHECK(drop == IntPoly::from_i64({0, -3, 2, 5}));
}

TEST_CASE("v_trick_poly composition and exactness") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> coef(-100, 100);
    std::uniform_int_distribution<int> deg(1, 5);
    std::uniform_int_distribution<std::int64_t> vdist(1, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<BigInt> c;
        int d = deg(rng);
        for (int j = 0; j <= d; ++j) c.emplace_back(coef(rng));
        IntPoly Q(std::move(c));
        std::int64_t V = vdist(rng);
        std::int64_t r = std::uniform_int_distribution<std::int64_t>(0, V - 1)(rng);
        IntPoly t = v_trick_poly(Q, r, V);
        // V * Q_{[r,V]}(z) + Q(r) == Q(Vz + r) as exact polynomials.
        std::vector<BigInt> scaled = t.coeffs();
        for (auto& v : scaled) v *= V;
        scaled[0] += Q.eval(BigInt(r));
        CHECK(IntPoly(scaled) == Q.compose_affine(BigInt(r), BigInt(V)));

        // Composition of two tricks.
        std::int64_t V2 = vdist(rng) % 8 + 1;
        std::int64_t r2 = std::uniform_int_distribution<std::int64_t>(0, V2 - 1)(rng);
        CHECK(v_trick_poly(v_trick_poly(Q, r, V), r2, V2) ==
              v_trick_poly(Q, V * r2 + r, V * V2));
    }
}

TEST_CASE("primorial") {
    CHECK(primorial_below(2.0) == 1);
    CHECK(primorial_below(3.0) == 2);
    CHECK(primorial_below(4.0) == 6);
    CHECK(primorial_below(7.0) == 30);   // strict: primes < 7
    CHECK(primorial_below(7.5) == 210);
    CHECK(primorial_below(12.0) == 2310);
}

TEST_CASE("build_w_trick reference context") {
    IntPoly P = IntPoly::from_i64({-1, 0, 1});  // z^2 - 1
    WTrickContext ctx = build_w_trick(P, 1, 4.0);
    CHECK(ctx.W == 6);
    CHECK(ctx.d == 2);
    CHECK(ctx.beta1() == -2);
    CHECK(ctx.beta_d() == 1);
    CHECK(ctx.p_tilde == IntPoly::from_i64({0, 1, 6}));  // 6z^2 + z
    CHECK(ctx.W_d == 6);
    CHECK_FALSE(ctx.sign_flipped);
}

TEST_CASE("build_w_trick error paths") {
    CHECK_THROWS_AS(build_w_trick(IntPoly::from_i64({0, 1}), 0, 4.0), ArgError);  // degree 1
    CHECK_THROWS_AS(build_w_trick(IntPoly::from_i64({-1, 0, 1}), 2, 4.0), ComputeError);
    // Double root: (z-1)^2.
    try {
        build_w_trick(IntPoly::from_i64({1, -2, 1}), 1, 4.0);
        CHECK(false);
    } catch (const ComputeError& e) {
        CHECK(e.name() == "root-multiplicity");
    }
}

TEST_CASE("auxiliary polynomial invariants over random valid inputs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> coef(-6, 6);
    std::uniform_int_distribution<std::int64_t> rho_d(-10, 10);
    std::uniform_int_distribution<int> deg(2, 5);
    std::uniform_real_distribution<double> wdist(2.0, 8.0);
    int built = 0;
    while (built < 40) {
        // P(z) := sum beta_j (rho - z)^j has root rho by construction.
        int d = deg(rng);
        std::vector<BigInt> beta(static_cast<std::size_t>(d + 1), BigInt(0));
        for (int j = 1; j <= d; ++j) beta[static_cast<std::size_t>(j)] = coef(rng);
        if (beta[1] == 0 || beta[static_cast<std::size_t>(d)] == 0) continue;
        std::int64_t rho = rho_d(rng);
        IntPoly R(beta);
        IntPoly P = R.compose_affine(BigInt(rho), BigInt(-1));  // P(z) = R(rho - z)
        double w = wdist(rng);
        WTrickContext ctx;
        try {
            ctx = build_w_trick(P, rho, w);
        } catch (const ComputeError& e) {
            CHECK(e.name() == "wd-nonpositive");
            continue;
        }
        ++built;
        CHECK(ctx.p_tilde.coeff(0) == 0);
        CHECK(ctx.p_tilde.coeff(1) == 1);
        CHECK(ctx.W_d > 0);
        // Non-linear coefficients divisible by W (p_tilde == z mod W).
        for (int j = 2; j <= ctx.d; ++j) CHECK(ctx.p_tilde.coeff(j) % ctx.W == 0);
        // W_d formula.
        BigInt expected = ctx.beta_d();
        for (int j = 0; j < ctx.d - 2; ++j) expected *= ctx.beta1();
        for (int j = 0; j < ctx.d - 1; ++j) expected *= ctx.W;
        CHECK(ctx.W_d == expected);
    }
}

TEST_CASE("leading_coeff_vd") {
    WTrickContext ctx = build_w_trick(IntPoly::from_i64({-1, 0, 1}), 1, 4.0);
    CHECK(leading_coeff_vd(ctx, 1, 0) == ctx.W_d);
    CHECK(leading_coeff_vd(ctx, 6, 0) == 36);
    for (std::int64_t V = 1; V <= 36; V += 5)
        for (std::int64_t r = 0; r < V; r += std::max<std::int64_t>(1, V / 3))
            CHECK(v_trick_poly(ctx.p_tilde, r, V).leading() == leading_coeff_vd(ctx, V, r));
}

TEST_CASE("gcd coprimality") {
    WTrickContext ctx = build_w_trick(IntPoly::from_i64({-1, 0, 1}), 1, 4.0);
    CHECK(gcd_coprimality_check(ctx, 6, 0).ok);
    CHECK(gcd_coprimality_check(ctx, 1, 0).ok);  // V_1 = 1
    // beta_1 = -5 while W = 6: prime 5 does not divide W.
    IntPoly bad = IntPoly::from_i64({0, 5, 1}).compose_affine(BigInt(0), BigInt(-1));
    WTrickContext bctx = build_w_trick(bad, 0, 4.0);
    auto rep = gcd_coprimality_check(bctx, 6, 0);
    CHECK_FALSE(rep.ok);
    CHECK(rep.reason == "beta-prime-not-in-W");
}

TEST_CASE("smoothness norm") {
    CHECK(smoothness_norm(RealPoly({0.0, 1.0}), 100.0) == 0.0);
    CHECK(smoothness_norm(RealPoly({0.0, 0.0, 0.5}), 2.0) == doctest::Approx(2.0));
    CHECK(smoothness_norm(RealPoly({0.0, 0.25, 0.5}), 4.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(smoothness_norm(RealPoly({3.7}), 2.0), ComputeError);
    // Constant term ignored.
    CHECK(smoothness_norm(RealPoly({0.37, 1.0}), 10.0) == 0.0);
    // Monotone in T for non-integer coefficients.
    RealPoly p({0.0, 0.3, 0.45});
    double prev = 0.0;
    for (double T = 1.0; T < 40.0; T *= 1.7) {
        double v = smoothness_norm(p, T);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("scale_k exact flooring") {
    CHECK(scale_k(BigInt(6), 2, 96) == 4);
    CHECK(scale_k(BigInt(6), 2, 95) == 3);
    CHECK(scale_k(BigInt(1), 1, 17) == 17);
    CHECK(scale_k(BigInt(1), 2, 16) == 4);
    CHECK(scale_k(BigInt(7), 3, 7 * 27) == 3);
    CHECK(scale_k(BigInt(7), 3, 7 * 27 - 1) == 2);
}

TEST_CASE("polynomial text and json") {
    IntPoly p = IntPoly::parse("0+0*z+1*z^2");
    CHECK(p == IntPoly::from_i64({0, 0, 1}));
    CHECK(IntPoly::parse("-1+0*z+1*z^2") == IntPoly::from_i64({-1, 0, 1}));
    CHECK(IntPoly::parse("3") == IntPoly::from_i64({3}));
    CHECK(IntPoly::parse("z^2") == IntPoly::from_i64({0, 0, 1}));
    CHECK(IntPoly::parse(R"({"coeffs":[0,1,6]})") == IntPoly::from_i64({0, 1, 6}));
    CHECK(IntPoly::parse(p.to_json()) == p);
    CHECK(IntPoly::parse(p.to_string()) == p);
    RealPoly r = RealPoly::parse("0.5*z");
    CHECK(r.coeffs[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(IntPoly::parse("0.5*z"), ArgError);
}
