#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cornerlab/grid.hpp"

using namespace cornerlab;

namespace {

GridFn random_grid(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFn f(n);
    for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x) f.set(x, y, cplx{u(rng), u(rng)} / std::sqrt(2.0));
    return f;
}

LineFn random_line(std::int64_t offset, std::int64_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LineFn f(offset, len);
    for (std::int64_t i = 0; i < len; ++i) f.values()[static_cast<std::size_t>(i)] = {u(rng), u(rng)};
    return f;
}

}  // namespace

TEST_CASE("zero extension") {
    GridFn f = random_grid(8, 1);
    CHECK(f.at(-1, 0) == cplx{0.0, 0.0});
    CHECK(f.at(0, -3) == cplx{0.0, 0.0});
    CHECK(f.at(8, 7) == cplx{0.0, 0.0});
    CHECK(f.at(100, 100) == cplx{0.0, 0.0});
    LineFn g = random_line(-3, 7, 2);
    CHECK(g.at(-4) == cplx{0.0, 0.0});
    CHECK(g.at(4) == cplx{0.0, 0.0});
    CHECK(g.at(3) != cplx{0.0, 0.0});
}

TEST_CASE("v_trick_grid basics") {
    GridFn f = GridFn::ones(4);
    GridFn id = v_trick_grid(f, 0, 0, 1);
    for (std::int64_t y = 0; y < 4; ++y)
        for (std::int64_t x = 0; x < 4; ++x) CHECK(id.at(x, y) == f.at(x, y));

    GridFn point(4);
    point.set(2, 3, cplx{1.0, 0.0});
    GridFn g = v_trick_grid(point, 0, 1, 2);
    CHECK(g.n() == 2);
    CHECK(g.at(1, 1) == cplx{1.0, 0.0});
    CHECK(g.at(0, 0) == cplx{0.0, 0.0});
    CHECK(g.at(0, 1) == cplx{0.0, 0.0});

    CHECK_THROWS_AS(v_trick_grid(f, 0, 0, 0), ArgError);
    CHECK_THROWS_AS(v_trick_grid(f, 2, 0, 2), ArgError);
}

TEST_CASE("v_trick composition law, exhaustive V <= 8") {
    GridFn f = random_grid(64, 3);
    for (std::int64_t V1 = 1; V1 <= 8; ++V1)
        for (std::int64_t V2 = 1; V2 <= 8; ++V2)
            for (std::int64_t r1 = 0; r1 < V1; ++r1)
                for (std::int64_t r2 = 0; r2 < V1; ++r2)
                    for (std::int64_t s1 = 0; s1 < V2; ++s1)
                        for (std::int64_t s2 = 0; s2 < V2; ++s2) {
                            GridFn lhs = v_trick_grid(v_trick_grid(f, r1, r2, V1), s1, s2, V2);
                            GridFn rhs =
                                v_trick_grid(f, V1 * s1 + r1, V1 * s2 + r2, V1 * V2);
                            std::int64_t m = std::max(lhs.n(), rhs.n());
                            for (std::int64_t y = 0; y < m; ++y)
                                for (std::int64_t x = 0; x < m; ++x)
                                    REQUIRE(lhs.at(x, y) == rhs.at(x, y));
                        }
}

TEST_CASE("v_trick_line") {
    LineFn f = LineFn::ones(6);
    LineFn id = v_trick_line(f, 0, 1);
    for (std::int64_t x = -2; x < 8; ++x) CHECK(id.at(x) == f.at(x));

    LineFn g = v_trick_line(f, 1, 3);
    CHECK(g.at(0) == cplx{1.0, 0.0});  // maps to index 1
    CHECK(g.at(1) == cplx{1.0, 0.0});  // maps to index 4
    CHECK(g.at(2) == cplx{0.0, 0.0});
    CHECK(g.at(-1) == cplx{0.0, 0.0});

    // Partition identity when V | len.
    LineFn h = random_line(0, 12, 7);
    for (std::int64_t V : {2, 3, 4, 6}) {
        cplx total{0.0, 0.0};
        for (std::int64_t r = 0; r < V; ++r) {
            LineFn part = v_trick_line(h, r, V);
            for (const cplx& v : part.values()) total += v;
        }
        cplx expect{0.0, 0.0};
        for (const cplx& v : h.values()) expect += v;
        CHECK(std::abs(total - expect) < 1e-12);
    }
}

TEST_CASE("shift_grid") {
    GridFn f = random_grid(8, 5);
    GridFn same = shift_grid(f, 0, 0);
    for (std::int64_t y = 0; y < 8; ++y)
        for (std::int64_t x = 0; x < 8; ++x) CHECK(same.at(x, y) == f.at(x, y));

    GridFn fwd = shift_grid(f, 3, -2);
    GridFn back = shift_grid(fwd, -3, 2);
    // Inverse pair on the region that survives both window clips.
    for (std::int64_t y = 0; y < 6; ++y)
        for (std::int64_t x = 3; x < 8; ++x) CHECK(back.at(x, y) == f.at(x, y));
}

TEST_CASE("grid json round trip") {
    GridFn f = random_grid(5, 11);
    GridFn g = grid_from_json(grid_to_json(f));
    CHECK(g.n() == 5);
    for (std::int64_t y = 0; y < 5; ++y)
        for (std::int64_t x = 0; x < 5; ++x) CHECK(g.at(x, y) == f.at(x, y));

    LineFn l = random_line(-4, 9, 12);
    LineFn m = line_from_json(line_to_json(l));
    CHECK(m.offset() == -4);
    CHECK(m.len() == 9);
    for (std::int64_t x = -4; x < 5; ++x) CHECK(m.at(x) == l.at(x));
}

TEST_CASE("set2d format") {
    GridFn g = grid_from_json(R"({"kind":"set2d","n":4,"points":[[0,0],[2,3]]})");
    CHECK(g.at(0, 0) == cplx{1.0, 0.0});
    CHECK(g.at(2, 3) == cplx{1.0, 0.0});
    CHECK(g.at(1, 1) == cplx{0.0, 0.0});
    CHECK(g.one_bounded_flag());
    CHECK_THROWS_AS(grid_from_json(R"({"kind":"set2d","n":4,"points":[[0,0],[0,0]]})"), ArgError);
    CHECK_THROWS_AS(grid_from_json(R"({"kind":"set2d","n":4,"points":[[4,0]]})"), ArgError);
}

TEST_CASE("one-bounded flag") {
    GridFn f(2);
    f.set(0, 0, cplx{1.0, 0.0});
    CHECK_NOTHROW(f.mark_one_bounded());
    f.set(1, 1, cplx{1.5, 0.0});
    CHECK_THROWS_AS(f.mark_one_bounded(), ComputeError);
}

TEST_CASE("phase representative range") {
    PhaseFn a(4);
    a.set(0, 1.25);
    a.set(1, -0.25);
    CHECK(a.at(0) == doctest::Approx(0.25));
    CHECK(a.at(1) == doctest::Approx(0.75));
    CHECK(a.at(100) == 0.0);
    CHECK_THROWS_AS(Direction(0, 0), ArgError);
    CHECK_THROWS_AS(Direction(9, 0), ArgError);
}
