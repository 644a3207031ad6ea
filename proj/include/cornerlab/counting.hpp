#pragma once

#include <cstdint>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/grid.hpp"
#include "cornerlab/polynomial.hpp"
#include "cornerlab/weights.hpp"

namespace cornerlab {

struct OperatorResult {
    cplx value{0.0, 0.0};
    double normalization = 1.0;       // the z-average denominator
    double count_equivalent = 0.0;    // normalization * Re(value)
    double path_agreement_error = 0.0;

    void finish(cplx primary, cplx secondary, double norm) {
        value = primary;
        normalization = norm;
        count_equivalent = norm * primary.real();
        double scale = std::max(1.0, std::abs(primary));
        path_agreement_error = std::abs(primary - secondary) / scale;
    }
};

// sum_{x,y} f0(x,y) f1(x+t,y) f2(x,y+t), two evaluation orders.
cplx corner_shift_sum_direct(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                             std::int64_t t);
cplx corner_shift_sum_rows(const GridFn& f0, const GridFn& f1, const GridFn& f2, std::int64_t t);

// sum_{x,y} E_{z in [N]} f0 f1(x+z,y) f2(x,y+z).
OperatorResult lambda_corners(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                              std::int64_t N);

// z in [(N/beta_d)^{1/d}] with side P(z); requires leading coefficient > 0.
OperatorResult lambda_poly(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                           const IntPoly& P, std::int64_t N);

// Corner sum weighted by nu(z), z in [N].
OperatorResult lambda_model(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                            std::int64_t N, int d);

// z in [(N/W_d)^{1/d}] with side p_tilde(z).
OperatorResult lambda_w(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                        const WTrickContext& ctx, std::int64_t N);

// lambda_w - lambda_model; second path via the signed weight nu_star.
OperatorResult lambda_star(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                           const WTrickContext& ctx, std::int64_t N);

// sum_{x,y} E_{z in [K/V]} e(a(y)x) f1(x+T(z),y) f2(x,y+T(z)),
// T = p_tilde_{[r,V]}.
OperatorResult lambda_prime(const PhaseFn& a, const GridFn& f1, const GridFn& f2,
                            const WTrickContext& ctx, std::int64_t V, std::int64_t r,
                            std::int64_t N);

// sum_{y in [N/V]} |E_{z in [K/V]} e(-a(y) T(z)) b1(y + T(z))|.
OperatorResult lambda_double_prime(const PhaseFn& a, const LineFn& b1, const WTrickContext& ctx,
                                   std::int64_t V, std::int64_t r, std::int64_t N);

// Dual functions. D0 lives on [N]^2; D1 extends to the right of [N]^2 and is
// returned on a correspondingly larger square grid.
GridFn dual_d0(const GridFn& f1, const GridFn& f2, const WTrickContext& ctx, std::int64_t N);
GridFn dual_d1(const GridFn& f0, const GridFn& f2, const WTrickContext& ctx, std::int64_t N);
GridFn dual_d0_star(const GridFn& f1, const GridFn& f2, const WTrickContext& ctx,
                    std::int64_t N);

// f~(x,y) = f(2N-1-(x+y), y) on [2N]^2; exchanges the two horizontal points of
// every corner.
GridFn reflect_corner_frame(const GridFn& f, std::int64_t N);

// Configuration profile C(t) = sum_{x,y} f0 f1(x+t,y) f2(x,y+t) for
// t = 0..t_max-1 (row path). Heavy but exact; used by experiments at scale.
std::vector<cplx> corner_profile(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                                 std::int64_t t_max);

}  // namespace cornerlab
