#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornerlab/common.hpp"

namespace cornerlab {

// Complex-valued function on Z^2 supported on [n]^2 = {0,..,n-1}^2, dense
// storage. Reads outside the support return exactly 0.
class GridFn {
public:
    GridFn() : n_(0) {}
    explicit GridFn(std::int64_t n, cplx fill = cplx{0.0, 0.0});

    std::int64_t n() const { return n_; }

    cplx at(std::int64_t x, std::int64_t y) const {
        if (x < 0 || y < 0 || x >= n_ || y >= n_) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(y * n_ + x)];
    }
    void set(std::int64_t x, std::int64_t y, cplx v) {
        values_[static_cast<std::size_t>(y * n_ + x)] = v;
    }

    // Row y, contiguous in x.
    const cplx* row(std::int64_t y) const { return values_.data() + y * n_; }
    cplx* row(std::int64_t y) { return values_.data() + y * n_; }

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    bool one_bounded_flag() const { return one_bounded_; }
    // Asserts max |value| <= 1 + 1e-12 and records the flag.
    void mark_one_bounded();

    static GridFn ones(std::int64_t n);

private:
    std::int64_t n_;
    std::vector<cplx> values_;
    bool one_bounded_ = false;
};

// Complex-valued function on Z supported on {offset, ..., offset+len-1}.
// The symmetric range [±N] = [-N+1, N-1] is offset = -N+1, len = 2N-1.
class LineFn {
public:
    LineFn() : offset_(0), len_(0) {}
    LineFn(std::int64_t offset, std::int64_t len, cplx fill = cplx{0.0, 0.0});

    std::int64_t offset() const { return offset_; }
    std::int64_t len() const { return len_; }

    cplx at(std::int64_t x) const {
        std::int64_t i = x - offset_;
        if (i < 0 || i >= len_) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(i)];
    }
    void set(std::int64_t x, cplx v) { values_[static_cast<std::size_t>(x - offset_)] = v; }

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    static LineFn ones(std::int64_t n);          // 1 on [n]
    static LineFn delta(std::int64_t x0);        // indicator of {x0}
    static LineFn symmetric(std::int64_t n);     // zero function on [±n]

private:
    std::int64_t offset_;
    std::int64_t len_;
    std::vector<cplx> values_;
};

// Phase function a: [n] -> R/Z, each value stored as its representative in [0,1).
class PhaseFn {
public:
    PhaseFn() = default;
    explicit PhaseFn(std::int64_t n, double fill = 0.0);

    std::int64_t n() const { return static_cast<std::int64_t>(phases_.size()); }
    double at(std::int64_t y) const {
        if (y < 0 || y >= n()) return 0.0;
        return phases_[static_cast<std::size_t>(y)];
    }
    void set(std::int64_t y, double p) { phases_[static_cast<std::size_t>(y)] = frac_mod1(p); }

    const std::vector<double>& phases() const { return phases_; }

private:
    std::vector<double> phases_;
};

// Direction vector in Z^2 with O(1)-size coordinates.
struct Direction {
    std::int64_t vx = 0;
    std::int64_t vy = 0;

    Direction() = default;
    Direction(std::int64_t x, std::int64_t y);

    bool operator==(const Direction&) const = default;

    static Direction e1() { return {1, 0}; }
    static Direction e2() { return {0, 1}; }
    static Direction e2_minus_e1() { return {-1, 1}; }
};

// g(x,y) = f(Vx+r1, Vy+r2); output padded to the square of the larger extent.
GridFn v_trick_grid(const GridFn& f, std::int64_t r1, std::int64_t r2, std::int64_t V);

// g(x) = f(Vx+r); support reparameterized so index 0 maps to the first source
// index >= offset congruent to r mod V.
LineFn v_trick_line(const LineFn& f, std::int64_t r, std::int64_t V);

// g(x,y) = f(x+dx, y+dy) with zero-extension (support window unchanged).
GridFn shift_grid(const GridFn& f, std::int64_t dx, std::int64_t dy);

// JSON I/O:  {"kind":"grid","n":N,"values":[[re,im],...]}  (row-major, y outer)
//            {"kind":"line","n":L,"offset":O,"values":[[re,im],...]}
//            {"kind":"set2d","n":N,"points":[[x,y],...]}   (indicator grid)
GridFn grid_from_json(const std::string& text);
LineFn line_from_json(const std::string& text);
std::string grid_to_json(const GridFn& f);
std::string line_to_json(const LineFn& f);

}  // namespace cornerlab
