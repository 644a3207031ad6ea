#include "cornerlab/weights.hpp"

#include <algorithm>
#include <cmath>

namespace cornerlab {

double Weight::mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

double Weight::abs_mass() const {
    double s = 0.0;
    for (double v : values_) s += std::abs(v);
    return s;
}

std::int64_t scale_k(const BigInt& W_d, int d, std::int64_t N) {
    if (W_d <= 0 || d < 1 || N < 0) throw ArgError("scale_k: invalid parameters");
    // Start from the floating-point estimate and correct exactly.
    double est = std::pow(static_cast<double>(N) / static_cast<double>(W_d), 1.0 / d);
    std::int64_t k = std::max<std::int64_t>(0, static_cast<std::int64_t>(est) - 2);
    auto fits = [&](std::int64_t c) {
        BigInt v = W_d;
        for (int j = 0; j < d; ++j) v *= c;
        return v <= N;
    };
    while (fits(k + 1)) ++k;
    return k;
}

std::int64_t scale_k(const WTrickContext& ctx, std::int64_t N) {
    return scale_k(ctx.W_d, ctx.d, N);
}

Weight weight_nu(std::int64_t N, int d) {
    if (N <= 0) throw ArgError("weight_nu: N must be positive");
    if (d < 2) throw ArgError("weight_nu: d must be at least 2");
    Weight w(N, 0, N);
    const double expo = static_cast<double>(d - 1) / static_cast<double>(d);
    for (std::int64_t z = 0; z < N; ++z)
        w.set(z, std::pow(static_cast<double>(N) / static_cast<double>(z + 1), expo) / d);
    return w;
}

Weight weight_nu_tilde(const WTrickContext& ctx, std::int64_t N) {
    std::int64_t K = scale_k(ctx, N);
    if (K < 1) throw ComputeError("N-too-small", "weight_nu_tilde: scale K vanishes");
    std::vector<std::int64_t> image(static_cast<std::size_t>(K));
    for (std::int64_t z = 0; z < K; ++z)
        image[static_cast<std::size_t>(z)] = ctx.p_tilde.eval_i64(z);
    auto [lo_it, hi_it] = std::minmax_element(image.begin(), image.end());
    std::int64_t lo = std::min<std::int64_t>(0, *lo_it);
    std::int64_t hi = std::max<std::int64_t>(N - 1, *hi_it);
    Weight w(N, lo, hi - lo + 1);
    const double share = static_cast<double>(N) / static_cast<double>(K);
    for (std::int64_t v : image) w.add(v, share);
    return w;
}

Weight weight_nu_star(const WTrickContext& ctx, std::int64_t N) {
    Weight tilde = weight_nu_tilde(ctx, N);
    Weight nu = weight_nu(N, ctx.d);
    std::int64_t lo = std::min(tilde.offset(), nu.offset());
    std::int64_t hi = std::max(tilde.offset() + tilde.len(), nu.offset() + nu.len());
    Weight w(N, lo, hi - lo);
    for (std::int64_t z = lo; z < hi; ++z) w.set(z, tilde.at(z) - nu.at(z));
    return w;
}

}  // namespace cornerlab
