#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerlab/inverse.hpp"
#include "cornerlab/norms.hpp"

using namespace cornerlab;

namespace {

LineFn pm_line(std::int64_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LineFn f(0, len);
    for (std::int64_t i = 0; i < len; ++i)
        f.values()[static_cast<std::size_t>(i)] = cplx{rng() & 1 ? 1.0 : -1.0, 0.0};
    return f;
}

GridFn pm_grid(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GridFn f(n);
    for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x) f.set(x, y, cplx{rng() & 1 ? 1.0 : -1.0, 0.0});
    f.mark_one_bounded();
    return f;
}

}  // namespace

TEST_CASE("u1 witness") {
    std::int64_t N = 64;
    Witness full = u1_witness_line(LineFn::ones(N), N, 2 * N);
    CHECK(full.correlation == doctest::Approx(static_cast<double>(N)));
    CHECK(full.direction_ok);

    LineFn phase(0, N);
    for (std::int64_t x = 0; x < N; ++x)
        phase.set(x, e_of(static_cast<double>(x) / static_cast<double>(N)));
    Witness vac = u1_witness_line(phase, N, 2 * N);
    CHECK(vac.correlation < 2.0);
    CHECK(vac.implied_delta < 0.05);
    CHECK(vac.direction_ok);

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Witness w = u1_witness_line(pm_line(N, 100 + seed), N, 2 * N);
        CHECK(w.direction_ok);  // exact proof inequality can never fail
    }
}

TEST_CASE("u2 witness recovers pure phases") {
    std::int64_t N = 64, M = 4 * N;
    LineFn f(0, N);
    for (std::int64_t x = 0; x < N; ++x)
        f.set(x, e_of(3.0 * static_cast<double>(x) / 64.0));
    Witness w = u2_witness_line(f, M);
    CHECK(dist_to_z(w.freq - 3.0 / 64.0) <= 1.0 / (2.0 * static_cast<double>(M)) + 1e-8);
    CHECK(w.correlation == doctest::Approx(64.0).epsilon(1e-6));
    CHECK(w.direction_ok);

    Witness d = u2_witness_line(LineFn::delta(0), 16);
    CHECK(d.correlation == doctest::Approx(1.0));
    CHECK(d.norm_pow == doctest::Approx(1.0));
    CHECK(d.direction_ok);

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Witness r = u2_witness_line(pm_line(N, 200 + seed), M);
        CHECK(r.direction_ok);
    }
}

TEST_CASE("u1xu1 witness") {
    std::int64_t N = 32;
    // Rank-one unimodular product: correlation = N^2 exactly.
    GridFn prod(N);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> gx(static_cast<std::size_t>(N)), hy(static_cast<std::size_t>(N));
    for (auto& v : gx) v = u(rng);
    for (auto& v : hy) v = u(rng);
    for (std::int64_t y = 0; y < N; ++y)
        for (std::int64_t x = 0; x < N; ++x)
            prod.set(x, y, e_of(gx[static_cast<std::size_t>(x)]) *
                               e_of(hy[static_cast<std::size_t>(y)]));
    Witness w = u1xu1_witness(prod, Direction::e1(), Direction::e2());
    CHECK(w.correlation == doctest::Approx(static_cast<double>(N * N)).epsilon(1e-9));
    CHECK(w.direction_ok);
    // Payload is 1-bounded.
    for (const cplx& v : w.b1.values()) CHECK(std::abs(v) <= 1.0 + 1e-12);
    for (const cplx& v : w.b2.values()) CHECK(std::abs(v) <= 1.0 + 1e-12);

    // Norm side agrees with the generic unnormalized evaluator.
    GridFn f = pm_grid(24, 9);
    Witness wf = u1xu1_witness(f, Direction::e1(), Direction::e2());
    double via = unnormalized_box_norm(f, {Direction::e1(), Direction::e2()}).value_pow;
    CHECK(wf.norm_pow == doctest::Approx(via).epsilon(1e-8));
    CHECK(wf.direction_ok);

    // Gauss-type phase: everything small, direction vacuously fine.
    GridFn gauss(N);
    for (std::int64_t y = 0; y < N; ++y)
        for (std::int64_t x = 0; x < N; ++x)
            gauss.set(x, y, e_of(static_cast<double>(x * y) / static_cast<double>(N)));
    Witness wg = u1xu1_witness(gauss, Direction::e1(), Direction::e2());
    CHECK(wg.implied_delta < 0.05);
    CHECK(wg.direction_ok);

    // Modulation invariance of |correlation|.
    GridFn mod(24);
    for (std::int64_t y = 0; y < 24; ++y)
        for (std::int64_t x = 0; x < 24; ++x)
            mod.set(x, y, f.at(x, y) * e_of(0.21 * static_cast<double>(x) +
                                            0.685 * static_cast<double>(y)));
    Witness wm = u1xu1_witness(mod, Direction::e1(), Direction::e2());
    CHECK(wm.correlation == doctest::Approx(wf.correlation).epsilon(1e-9));

    // Skew basis works; non-basis rejected.
    Witness ws = u1xu1_witness(f, Direction::e1(), Direction::e2_minus_e1());
    CHECK(ws.direction_ok);
    CHECK_THROWS_AS(u1xu1_witness(f, Direction::e1(), Direction(2, 0)), ComputeError);
}

TEST_CASE("u2xu1 witness") {
    std::int64_t N = 32;
    Witness ones = u2xu1_witness(GridFn::ones(N), N / 4);
    CHECK(ones.correlation == doctest::Approx(static_cast<double>(N * N)).epsilon(1e-9));
    for (std::int64_t y = 0; y < N; ++y) CHECK(dist_to_z(ones.a_of_y.at(y)) <= 1e-6);

    // Row phases from a fixed map into {0, 1/7, 2/7}, mostly zero.
    GridFn f(N);
    auto q = [&](std::int64_t y) {
        if (y == 5) return 1.0 / 7.0;
        if (y == 11) return 2.0 / 7.0;
        return 0.0;
    };
    for (std::int64_t y = 0; y < N; ++y)
        for (std::int64_t x = 0; x < N; ++x)
            f.set(x, y, e_of(q(y) * static_cast<double>(x)));
    Witness w = u2xu1_witness(f, N / 4);
    std::int64_t good = 0;
    const double tol = 1.0 / (2.0 * 4.0 * static_cast<double>(N)) + 1e-8;
    for (std::int64_t y = 0; y < N; ++y)
        if (dist_to_z(w.a_of_y.at(y) - q(y)) <= tol) ++good;
    CHECK(static_cast<double>(good) >= 0.9 * static_cast<double>(N));
    CHECK(w.correlation >= 0.9 * static_cast<double>(N * N));
    for (const cplx& v : w.g_line.values()) CHECK(std::abs(v) <= 1.0 + 1e-12);

    Witness r = u2xu1_witness(pm_grid(N, 77), N / 4);
    CHECK(r.direction_ok);
}

TEST_CASE("popular phase detector") {
    std::int64_t n = 240;
    PhaseFn constant(n, 0.37);
    auto rep = popular_phase_detect(constant, 4, 0.01);
    CHECK(rep.classes.size() == 4);
    for (const auto& c : rep.classes) {
        CHECK(c.hit_fraction == doctest::Approx(1.0));
        CHECK(dist_to_z(c.alpha - frac_mod1(4.0 * 0.37)) <= 1e-12);
    }

    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> noise(-0.0025, 0.0025);
    PhaseFn jitter(n);
    for (std::int64_t y = 0; y < n; ++y) jitter.set(y, 0.37 + noise(rng));
    auto repj = popular_phase_detect(jitter, 1, 0.01);
    CHECK(repj.classes[0].hit_fraction >= 0.95);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    PhaseFn uniform(n);
    for (std::int64_t y = 0; y < n; ++y) uniform.set(y, u(rng));
    auto repu = popular_phase_detect(uniform, 1, 0.01);
    CHECK(repu.classes[0].hit_fraction <= 0.1);
}
