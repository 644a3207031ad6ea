#include "cornerlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace cornerlab {

GridFn::GridFn(std::int64_t n, cplx fill) : n_(n) {
    if (n <= 0) throw ArgError("GridFn: support size must be positive");
    values_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill);
}

void GridFn::mark_one_bounded() {
    for (const cplx& v : values_) {
        if (!(std::abs(v) <= 1.0 + 1e-12))
            throw ComputeError("not-one-bounded", "GridFn: |value| exceeds 1 + 1e-12");
    }
    one_bounded_ = true;
}

GridFn GridFn::ones(std::int64_t n) {
    GridFn g(n, cplx{1.0, 0.0});
    g.one_bounded_ = true;
    return g;
}

LineFn::LineFn(std::int64_t offset, std::int64_t len, cplx fill) : offset_(offset), len_(len) {
    if (len <= 0) throw ArgError("LineFn: length must be positive");
    values_.assign(static_cast<std::size_t>(len), fill);
}

LineFn LineFn::ones(std::int64_t n) { return LineFn(0, n, cplx{1.0, 0.0}); }

LineFn LineFn::delta(std::int64_t x0) {
    LineFn f(x0, 1);
    f.values_[0] = cplx{1.0, 0.0};
    return f;
}

LineFn LineFn::symmetric(std::int64_t n) { return LineFn(-n + 1, 2 * n - 1); }

PhaseFn::PhaseFn(std::int64_t n, double fill) {
    if (n <= 0) throw ArgError("PhaseFn: support size must be positive");
    phases_.assign(static_cast<std::size_t>(n), frac_mod1(fill));
}

Direction::Direction(std::int64_t x, std::int64_t y) : vx(x), vy(y) {
    if (vx == 0 && vy == 0) throw ArgError("Direction: zero vector");
    if (std::llabs(vx) > 8 || std::llabs(vy) > 8)
        throw ArgError("Direction: coordinate magnitude exceeds 8");
}

GridFn v_trick_grid(const GridFn& f, std::int64_t r1, std::int64_t r2, std::int64_t V) {
    if (V <= 0) throw ArgError("v_trick_grid: V must be positive");
    if (r1 < 0 || r1 >= V || r2 < 0 || r2 >= V) throw ArgError("v_trick_grid: residue out of [V]");
    auto extent = [&](std::int64_t r) { return (f.n() - r + V - 1) / V; };
    std::int64_t m = std::max<std::int64_t>(1, std::max(extent(r1), extent(r2)));
    GridFn g(m);
    for (std::int64_t y = 0; y < m; ++y)
        for (std::int64_t x = 0; x < m; ++x) g.set(x, y, f.at(V * x + r1, V * y + r2));
    return g;
}

LineFn v_trick_line(const LineFn& f, std::int64_t r, std::int64_t V) {
    if (V <= 0) throw ArgError("v_trick_line: V must be positive");
    if (r < 0 || r >= V) throw ArgError("v_trick_line: residue out of [V]");
    // First x with Vx + r >= offset, last x with Vx + r <= offset + len - 1.
    std::int64_t lo = f.offset() - r;
    std::int64_t x0 = lo >= 0 ? (lo + V - 1) / V : -((-lo) / V);
    std::int64_t hi = f.offset() + f.len() - 1 - r;
    std::int64_t x1 = hi >= 0 ? hi / V : -((-hi + V - 1) / V);
    if (x1 < x0) return LineFn(0, 1);  // empty overlap, zero function
    LineFn g(x0, x1 - x0 + 1);
    for (std::int64_t x = x0; x <= x1; ++x) g.set(x, f.at(V * x + r));
    return g;
}

GridFn shift_grid(const GridFn& f, std::int64_t dx, std::int64_t dy) {
    GridFn g(f.n());
    for (std::int64_t y = 0; y < f.n(); ++y)
        for (std::int64_t x = 0; x < f.n(); ++x) g.set(x, y, f.at(x + dx, y + dy));
    return g;
}

namespace {

std::vector<cplx> parse_values(const nlohmann::json& j, std::size_t expected) {
    const auto& arr = j.at("values");
    if (!arr.is_array() || arr.size() != expected)
        throw ArgError("JSON values array has wrong length");
    std::vector<cplx> out;
    out.reserve(expected);
    for (const auto& v : arr) {
        if (!v.is_array() || v.size() != 2) throw ArgError("JSON value entry must be [re,im]");
        out.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return out;
}

std::string fmt_cplx(cplx v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", v.real(), v.imag());
    return buf;
}

}  // namespace

GridFn grid_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    std::int64_t n = j.at("n").get<std::int64_t>();
    if (n <= 0) throw ArgError("grid JSON: n must be positive");
    if (kind == "grid") {
        GridFn g(n);
        auto vals = parse_values(j, static_cast<std::size_t>(n) * n);
        g.values() = std::move(vals);
        return g;
    }
    if (kind == "set2d") {
        GridFn g(n);
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw ArgError("set2d point must be [x,y]");
            std::int64_t x = p[0].get<std::int64_t>();
            std::int64_t y = p[1].get<std::int64_t>();
            if (x < 0 || y < 0 || x >= n || y >= n) throw ArgError("set2d point out of range");
            if (!seen.insert({x, y}).second) throw ArgError("set2d duplicate point");
            g.set(x, y, cplx{1.0, 0.0});
        }
        g.mark_one_bounded();
        return g;
    }
    throw ArgError("grid JSON: kind must be grid or set2d");
}

LineFn line_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "line") throw ArgError("line JSON: kind must be line");
    std::int64_t n = j.at("n").get<std::int64_t>();
    std::int64_t offset = j.value("offset", 0);
    if (n <= 0) throw ArgError("line JSON: n must be positive");
    LineFn f(offset, n);
    f.values() = parse_values(j, static_cast<std::size_t>(n));
    return f;
}

std::string grid_to_json(const GridFn& f) {
    std::string out = "{\"kind\":\"grid\",\"n\":" + std::to_string(f.n()) + ",\"values\":[";
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        if (i) out += ',';
        out += fmt_cplx(f.values()[i]);
    }
    out += "]}";
    return out;
}

std::string line_to_json(const LineFn& f) {
    std::string out = "{\"kind\":\"line\",\"n\":" + std::to_string(f.len()) +
                      ",\"offset\":" + std::to_string(f.offset()) + ",\"values\":[";
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        if (i) out += ',';
        out += fmt_cplx(f.values()[i]);
    }
    out += "]}";
    return out;
}

}  // namespace cornerlab
