#pragma once

#include <cstdint>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/polynomial.hpp"
#include "cornerlab/weights.hpp"

namespace cornerlab {

// Exact fractional part of xi * n in [0,1) for a double xi and big integer n.
double frac_exact(double xi, const BigInt& n);

// S(xi) = sum_{z in [K]} e(xi * Q(z)), direct summation with exact phase
// reduction per term.
cplx weyl_sum(const IntPoly& Q, std::int64_t K, double xi);

// S(k/M) for all k in [M] at once, via the histogram of Q(z) mod M and one FFT.
std::vector<cplx> weyl_sum_grid(const IntPoly& Q, std::int64_t K, std::int64_t M);

// S(a,q) = E_{u in [q]} e(a Q(u) / q); requires gcd(a,q) = 1.
cplx complete_sum(const IntPoly& Q, std::int64_t a, std::int64_t q);

struct ArcLabel {
    bool major = false;
    std::int64_t a = 0;
    std::int64_t q = 1;
    double dist = 0.0;  // |xi - a/q| for the containing arc (major only)
};

// Scans all coprime 0 <= a < q <= K^eps; returns the unique containing major
// arc (|xi - a/q| <= K^{-(d-eps)}) or a minor label. Requires eps < 1/3.
ArcLabel classify_arc(double xi, std::int64_t K, int d, double eps);

struct MomentReport {
    double minor_moment = 0.0;
    double major_moment = 0.0;
    double total_moment = 0.0;
    double bound_ratio = 0.0;  // total / (K^{2s} / (K^d * V_d))
    std::int64_t grid = 0;
};

// Integrates |S(xi)|^{2s} over a uniform grid of >= 64*K^d points (periodic
// trapezoid), split into major/minor contributions by classify_arc.
MomentReport moment_report(const IntPoly& Q, std::int64_t K, int d, double eps, int s,
                           std::int64_t grid_min = 0);

struct UniformityReport {
    double max_abs = 0.0;
    double argmax_theta = 0.0;
    std::int64_t argmax_r = 0;
    double trivial_bound = 0.0;
    std::int64_t grid = 0;
};

// max over r in [V] and theta of |sum_z e(theta z) nu_star(Vz+r)|, theta on a
// grid of grid_mult*(N/V) points refined by golden-section search around the
// grid argmax. V must be a power of W.
UniformityReport uniformity_scan(const WTrickContext& ctx, std::int64_t N, std::int64_t V,
                                 std::int64_t grid_mult);
UniformityReport uniformity_scan_weight(const Weight& nu_star, std::int64_t N, std::int64_t V,
                                        std::int64_t grid_mult);

}  // namespace cornerlab
