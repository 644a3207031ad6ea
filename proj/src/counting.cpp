#include "cornerlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cornerlab {

namespace {

// Multiset of shift values {P(z) : z in [K]} with multiplicities.
std::map<std::int64_t, std::int64_t> shift_multiset(const IntPoly& P, std::int64_t K) {
    std::map<std::int64_t, std::int64_t> m;
    for (std::int64_t z = 0; z < K; ++z) m[P.eval_i64(z)] += 1;
    return m;
}

std::int64_t poly_scale_k(const IntPoly& P, std::int64_t N) {
    if (P.leading() <= 0) throw ArgError("corner operator: leading coefficient must be positive");
    std::int64_t K = scale_k(P.leading(), P.degree(), N);
    if (K < 1) throw ComputeError("N-too-small", "corner operator: scale K vanishes");
    return K;
}

}  // namespace

cplx corner_shift_sum_direct(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                             std::int64_t t) {
    const std::int64_t n = std::max({f0.n(), f1.n(), f2.n()});
    cplx s{0.0, 0.0};
    for (std::int64_t y = -std::abs(t); y < n; ++y)
        for (std::int64_t x = -std::abs(t); x < n; ++x)
            s += f0.at(x, y) * f1.at(x + t, y) * f2.at(x, y + t);
    return s;
}

cplx corner_shift_sum_rows(const GridFn& f0, const GridFn& f1, const GridFn& f2, std::int64_t t) {
    // x: 0 <= x < n0, 0 <= x+t < n1, 0 <= x < n2
    // y: 0 <= y < n0, 0 <= y < n1, 0 <= y+t < n2
    const std::int64_t xlo = std::max<std::int64_t>(0, -t);
    const std::int64_t xhi = std::min({f0.n(), f1.n() - t, f2.n()});
    const std::int64_t ylo = std::max<std::int64_t>(0, -t);
    const std::int64_t yhi = std::min({f0.n(), f1.n(), f2.n() - t});
    if (xlo >= xhi || ylo >= yhi) return {0.0, 0.0};
    return blocked_sum(yhi - ylo, [&](std::int64_t i) {
        const std::int64_t y = ylo + i;
        const cplx* r0 = f0.row(y);
        const cplx* r1 = f1.row(y) + t;
        const cplx* r2 = f2.row(y + t);
        cplx s{0.0, 0.0};
        for (std::int64_t x = xlo; x < xhi; ++x) s += r0[x] * r1[x] * r2[x];
        return s;
    });
}

std::vector<cplx> corner_profile(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                                 std::int64_t t_max) {
    std::vector<cplx> out(static_cast<std::size_t>(t_max));
    for (std::int64_t t = 0; t < t_max; ++t)
        out[static_cast<std::size_t>(t)] = corner_shift_sum_rows(f0, f1, f2, t);
    return out;
}

namespace {

// Shared skeleton: E_z over a shift multiset (direct z-loop) against the
// grouped row path.
OperatorResult multiset_operator(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                                 const std::map<std::int64_t, std::int64_t>& shifts,
                                 std::int64_t K) {
    cplx direct{0.0, 0.0};
    for (const auto& [t, mult] : shifts)
        direct += static_cast<double>(mult) * corner_shift_sum_direct(f0, f1, f2, t);
    direct /= static_cast<double>(K);

    cplx rows{0.0, 0.0};
    for (const auto& [t, mult] : shifts)
        rows += static_cast<double>(mult) * corner_shift_sum_rows(f0, f1, f2, t);
    rows /= static_cast<double>(K);

    OperatorResult res;
    res.finish(rows, direct, static_cast<double>(K));
    return res;
}

}  // namespace

OperatorResult lambda_corners(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                              std::int64_t N) {
    if (N <= 0) throw ArgError("lambda_corners: N must be positive");
    std::map<std::int64_t, std::int64_t> shifts;
    for (std::int64_t t = 0; t < N; ++t) shifts[t] = 1;
    return multiset_operator(f0, f1, f2, shifts, N);
}

OperatorResult lambda_poly(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                           const IntPoly& P, std::int64_t N) {
    std::int64_t K = poly_scale_k(P, N);
    return multiset_operator(f0, f1, f2, shift_multiset(P, K), K);
}

OperatorResult lambda_model(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                            std::int64_t N, int d) {
    Weight nu = weight_nu(N, d);
    // Direct: z-loop with the pointwise weight.
    cplx direct{0.0, 0.0};
    for (std::int64_t z = 0; z < N; ++z)
        direct += nu.at(z) * corner_shift_sum_direct(f0, f1, f2, z);
    direct /= static_cast<double>(N);
    // Row path, reversed iteration order.
    cplx rows{0.0, 0.0};
    for (std::int64_t z = N - 1; z >= 0; --z)
        rows += nu.at(z) * corner_shift_sum_rows(f0, f1, f2, z);
    rows /= static_cast<double>(N);
    OperatorResult res;
    res.finish(rows, direct, static_cast<double>(N));
    return res;
}

OperatorResult lambda_w(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                        const WTrickContext& ctx, std::int64_t N) {
    std::int64_t K = scale_k(ctx, N);
    if (K < 1) throw ComputeError("N-too-small", "lambda_w: scale K vanishes");
    return multiset_operator(f0, f1, f2, shift_multiset(ctx.p_tilde, K), K);
}

OperatorResult lambda_star(const GridFn& f0, const GridFn& f1, const GridFn& f2,
                           const WTrickContext& ctx, std::int64_t N) {
    OperatorResult w = lambda_w(f0, f1, f2, ctx, N);
    OperatorResult model = lambda_model(f0, f1, f2, N, ctx.d);
    cplx difference = w.value - model.value;

    // Single weighted sum against nu_star over its full support.
    Weight star = weight_nu_star(ctx, N);
    cplx weighted{0.0, 0.0};
    for (std::int64_t z = star.offset(); z < star.offset() + star.len(); ++z) {
        double v = star.at(z);
        if (v == 0.0) continue;
        weighted += v * corner_shift_sum_rows(f0, f1, f2, z);
    }
    weighted /= static_cast<double>(N);

    OperatorResult res;
    res.finish(difference, weighted, static_cast<double>(N));
    return res;
}

OperatorResult lambda_prime(const PhaseFn& a, const GridFn& f1, const GridFn& f2,
                            const WTrickContext& ctx, std::int64_t V, std::int64_t r,
                            std::int64_t N) {
    if (V <= 0 || r < 0 || r >= V) throw ArgError("lambda_prime: need 0 <= r < V");
    std::int64_t Kp = scale_k(ctx, N) / V;
    if (Kp < 1) throw ComputeError("N-too-small", "lambda_prime: scale K/V vanishes");
    IntPoly T = v_trick_poly(ctx.p_tilde, r, V);
    auto shifts = shift_multiset(T, Kp);

    const std::int64_t n = std::max(f1.n(), f2.n());
    // Direct: z-outer, full window with zero-extension reads.
    cplx direct{0.0, 0.0};
    for (const auto& [t, mult] : shifts) {
        cplx s{0.0, 0.0};
        for (std::int64_t y = -std::abs(t); y < n; ++y) {
            // a is zero outside its support, so those rows carry phase e(0) = 1.
            for (std::int64_t x = -std::abs(t); x < n; ++x)
                s += e_of(frac_mod1(a.at(y) * static_cast<double>(x))) * f1.at(x + t, y) *
                     f2.at(x, y + t);
        }
        direct += static_cast<double>(mult) * s;
    }
    direct /= static_cast<double>(Kp);

    // Row path with clipped ranges.
    cplx rows{0.0, 0.0};
    for (const auto& [t, mult] : shifts) {
        const std::int64_t xlo = std::max<std::int64_t>(0, -t);
        const std::int64_t xhi = std::min(f1.n() - t, f2.n());
        const std::int64_t ylo = std::max<std::int64_t>(0, -t);
        const std::int64_t yhi = std::min(f1.n(), f2.n() - t);
        if (xlo >= xhi) continue;
        cplx s{0.0, 0.0};
        for (std::int64_t y = ylo; y < yhi; ++y) {
            const cplx* r1 = f1.row(y) + t;
            const cplx* r2 = f2.row(y + t);
            const double ay = a.at(y);
            cplx inner{0.0, 0.0};
            for (std::int64_t x = xlo; x < xhi; ++x)
                inner += e_of(frac_mod1(ay * static_cast<double>(x))) * r1[x] * r2[x];
            s += inner;
        }
        rows += static_cast<double>(mult) * s;
    }
    rows /= static_cast<double>(Kp);

    OperatorResult res;
    res.finish(rows, direct, static_cast<double>(Kp));
    return res;
}

OperatorResult lambda_double_prime(const PhaseFn& a, const LineFn& b1, const WTrickContext& ctx,
                                   std::int64_t V, std::int64_t r, std::int64_t N) {
    if (V <= 0 || r < 0 || r >= V) throw ArgError("lambda_double_prime: need 0 <= r < V");
    std::int64_t Kp = scale_k(ctx, N) / V;
    if (Kp < 1) throw ComputeError("N-too-small", "lambda_double_prime: scale K/V vanishes");
    IntPoly T = v_trick_poly(ctx.p_tilde, r, V);
    const std::int64_t NV = N / V;

    // Direct: z-inner per y.
    std::vector<std::int64_t> shifts(static_cast<std::size_t>(Kp));
    for (std::int64_t z = 0; z < Kp; ++z) shifts[static_cast<std::size_t>(z)] = T.eval_i64(z);
    double direct = 0.0;
    for (std::int64_t y = 0; y < NV; ++y) {
        cplx inner{0.0, 0.0};
        for (std::int64_t z = 0; z < Kp; ++z) {
            std::int64_t t = shifts[static_cast<std::size_t>(z)];
            inner += e_of(frac_mod1(-a.at(y) * static_cast<double>(t))) * b1.at(y + t);
        }
        direct += std::abs(inner) / static_cast<double>(Kp);
    }

    // Multiset-grouped path.
    auto grouped = shift_multiset(T, Kp);
    double rows = 0.0;
    for (std::int64_t y = 0; y < NV; ++y) {
        cplx inner{0.0, 0.0};
        for (const auto& [t, mult] : grouped)
            inner += static_cast<double>(mult) *
                     e_of(frac_mod1(-a.at(y) * static_cast<double>(t))) * b1.at(y + t);
        rows += std::abs(inner) / static_cast<double>(Kp);
    }

    OperatorResult res;
    res.finish(cplx{rows, 0.0}, cplx{direct, 0.0}, static_cast<double>(Kp));
    return res;
}

GridFn dual_d0(const GridFn& f1, const GridFn& f2, const WTrickContext& ctx, std::int64_t N) {
    std::int64_t K = scale_k(ctx, N);
    if (K < 1) throw ComputeError("N-too-small", "dual_d0: scale K vanishes");
    auto shifts = shift_multiset(ctx.p_tilde, K);
    const std::int64_t n = std::max(f1.n(), f2.n());
    GridFn out(n);
    for (const auto& [t, mult] : shifts) {
        const double wgt = static_cast<double>(mult) / static_cast<double>(K);
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x) {
                cplx v = f1.at(x + t, y) * f2.at(x, y + t);
                if (v != cplx{0.0, 0.0}) out.set(x, y, out.at(x, y) + wgt * v);
            }
    }
    return out;
}

GridFn dual_d1(const GridFn& f0, const GridFn& f2, const WTrickContext& ctx, std::int64_t N) {
    std::int64_t K = scale_k(ctx, N);
    if (K < 1) throw ComputeError("N-too-small", "dual_d1: scale K vanishes");
    auto shifts = shift_multiset(ctx.p_tilde, K);
    std::int64_t t_max = 0;
    for (const auto& [t, mult] : shifts) t_max = std::max(t_max, t);
    const std::int64_t n = std::max(f0.n(), f2.n()) + t_max;
    GridFn out(n);
    for (const auto& [t, mult] : shifts) {
        const double wgt = static_cast<double>(mult) / static_cast<double>(K);
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x) {
                cplx v = f0.at(x - t, y) * f2.at(x - t, y + t);
                if (v != cplx{0.0, 0.0}) out.set(x, y, out.at(x, y) + wgt * v);
            }
    }
    return out;
}

GridFn dual_d0_star(const GridFn& f1, const GridFn& f2, const WTrickContext& ctx,
                    std::int64_t N) {
    GridFn head = dual_d0(f1, f2, ctx, N);
    Weight nu = weight_nu(N, ctx.d);
    const std::int64_t n = head.n();
    GridFn out(n);
    for (std::int64_t z = 0; z < N; ++z) {
        const double wgt = nu.at(z) / static_cast<double>(N);
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x) {
                cplx v = f1.at(x + z, y) * f2.at(x, y + z);
                if (v != cplx{0.0, 0.0}) out.set(x, y, out.at(x, y) + wgt * v);
            }
    }
    for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x) out.set(x, y, head.at(x, y) - out.at(x, y));
    return out;
}

GridFn reflect_corner_frame(const GridFn& f, std::int64_t N) {
    GridFn out(2 * N);
    for (std::int64_t y = 0; y < 2 * N; ++y)
        for (std::int64_t x = 0; x < 2 * N; ++x) out.set(x, y, f.at(2 * N - 1 - (x + y), y));
    return out;
}

}  // namespace cornerlab
