#include "cornerlab/circle.hpp"

#include <cmath>
#include <numeric>

#include "cornerlab/fourier.hpp"

namespace cornerlab {

double frac_exact(double xi, const BigInt& n) {
    if (xi < 0.0 || xi >= 1.0) xi = frac_mod1(xi);
    if (xi == 0.0 || n == 0) return 0.0;
    int expo = 0;
    double mant = std::frexp(xi, &expo);              // xi = mant * 2^expo, mant in [0.5, 1)
    std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));  // exact 53-bit integer
    int e = expo - 53;                                // xi = m * 2^e, e < 0 since xi < 1
    if (e >= 0) return 0.0;
    BigInt prod = m * n;
    BigInt mod = BigInt(1) << (-e);
    BigInt r = prod % mod;
    if (r < 0) r += mod;
    return std::ldexp(r.convert_to<double>(), e);
}

cplx weyl_sum(const IntPoly& Q, std::int64_t K, double xi) {
    if (K <= 0) throw ArgError("weyl_sum: K must be positive");
    xi = frac_mod1(xi);
    return blocked_sum(K, [&](std::int64_t z) { return e_of(frac_exact(xi, Q.eval(BigInt(z)))); });
}

std::vector<cplx> weyl_sum_grid(const IntPoly& Q, std::int64_t K, std::int64_t M) {
    if (K <= 0 || M <= 0) throw ArgError("weyl_sum_grid: K and M must be positive");
    // S(k/M) = sum_t h(t) e(kt/M) where h is the histogram of Q(z) mod M.
    std::vector<cplx> hist(static_cast<std::size_t>(M), cplx{0.0, 0.0});
    const BigInt Mbig(M);
    for (std::int64_t z = 0; z < K; ++z) {
        BigInt v = Q.eval(BigInt(z)) % Mbig;
        if (v < 0) v += Mbig;
        hist[static_cast<std::size_t>(v.convert_to<std::int64_t>())] += 1.0;
    }
    return fft(hist, +1);
}

cplx complete_sum(const IntPoly& Q, std::int64_t a, std::int64_t q) {
    if (q <= 0) throw ArgError("complete_sum: q must be positive");
    std::int64_t aa = ((a % q) + q) % q;
    if (std::gcd(aa == 0 ? q : aa, q) != 1 && !(aa == 0 && q == 1))
        throw ArgError("complete_sum: a and q must be coprime");
    cplx s{0.0, 0.0};
    for (std::int64_t u = 0; u < q; ++u) {
        BigInt v = Q.eval(BigInt(u)) % q;
        if (v < 0) v += q;
        double phase = static_cast<double>(aa) * v.convert_to<double>() / static_cast<double>(q);
        s += e_of(frac_mod1(phase));
    }
    return s / static_cast<double>(q);
}

ArcLabel classify_arc(double xi, std::int64_t K, int d, double eps) {
    if (!(eps > 0.0 && eps < 1.0 / 3.0))
        throw ArgError("classify_arc: eps must lie in (0, 1/3) for disjoint arcs");
    if (K <= 0 || d < 1) throw ArgError("classify_arc: invalid K or d");
    xi = frac_mod1(xi);
    const std::int64_t q_max =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::pow(static_cast<double>(K), eps)));
    const double radius = std::pow(static_cast<double>(K), -(static_cast<double>(d) - eps));
    for (std::int64_t q = 1; q <= q_max; ++q) {
        std::int64_t a0 = std::llround(xi * static_cast<double>(q));
        double dist = std::abs(xi - static_cast<double>(a0) / static_cast<double>(q));
        if (dist > radius) continue;
        std::int64_t a = a0 % q;  // a0 == q means the arc around 1 == 0
        if (a != 0 && std::gcd(a, q) != 1) continue;
        if (a == 0 && q != 1) continue;  // 0/q reduces to 0/1
        ArcLabel lab;
        lab.major = true;
        lab.a = a;
        lab.q = q;
        lab.dist = dist;
        return lab;
    }
    return ArcLabel{};
}

MomentReport moment_report(const IntPoly& Q, std::int64_t K, int d, double eps, int s,
                           std::int64_t grid_min) {
    if (Q.degree() < 2) throw ArgError("moment_report: polynomial degree must be at least 2");
    if (d != Q.degree()) throw ArgError("moment_report: d must equal the polynomial degree");
    if (s < d + 1) throw ArgError("moment_report: s must be at least d+1");
    double kd = std::pow(static_cast<double>(K), d);
    std::int64_t M = static_cast<std::int64_t>(64.0 * kd);
    if (grid_min > M) M = grid_min;
    check_budget(static_cast<double>(M) * 32.0, "moment_report");

    const double arc_width = 2.0 * std::pow(static_cast<double>(K),
                                            -(static_cast<double>(d) - eps));
    if (static_cast<double>(M) * arc_width < 8.0)
        throw ComputeError("grid-resolution",
                           "moment_report: fewer than 8 grid points per major arc");

    std::vector<cplx> S = weyl_sum_grid(Q, K, M);
    double minor = 0.0, major = 0.0;
    for (std::int64_t k = 0; k < M; ++k) {
        double xi = static_cast<double>(k) / static_cast<double>(M);
        double a2 = std::norm(S[static_cast<std::size_t>(k)]);
        double pw = std::pow(a2, s);  // |S|^{2s}
        if (classify_arc(xi, K, d, eps).major)
            major += pw;
        else
            minor += pw;
    }
    MomentReport rep;
    rep.grid = M;
    rep.minor_moment = minor / static_cast<double>(M);
    rep.major_moment = major / static_cast<double>(M);
    rep.total_moment = rep.minor_moment + rep.major_moment;
    double vd = std::abs(Q.leading().convert_to<double>());
    double denom = std::pow(static_cast<double>(K), 2 * s) / (kd * vd);
    rep.bound_ratio = rep.total_moment / denom;
    return rep;
}

namespace {

struct ScanBest {
    double abs = -1.0;
    double theta = 0.0;
    std::int64_t r = 0;
};

// |sum over the r-progression slice of nu_star|, slice indexed by z.
struct Slice {
    std::vector<double> vals;  // s(z) for z = z0..z0+len-1
    std::int64_t z0 = 0;
    cplx eval(double theta) const {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i] == 0.0) continue;
            acc += vals[i] * e_of(frac_mod1(theta * static_cast<double>(
                                                        z0 + static_cast<std::int64_t>(i))));
        }
        return acc;
    }
};

double golden_refine(const Slice& s, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = std::abs(s.eval(c)), fd = std::abs(s.eval(d));
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = std::abs(s.eval(d));
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = std::abs(s.eval(c));
        }
    }
    return (a + b) / 2.0;
}

}  // namespace

UniformityReport uniformity_scan_weight(const Weight& nu_star, std::int64_t N, std::int64_t V,
                                        std::int64_t grid_mult) {
    if (V <= 0 || grid_mult <= 0) throw ArgError("uniformity_scan: V and grid_mult positive");
    const std::int64_t G = std::max<std::int64_t>(8, grid_mult * (N / V));
    UniformityReport rep;
    rep.grid = G;
    ScanBest best;
    double trivial_at_best = 0.0;
    for (std::int64_t r = 0; r < V; ++r) {
        // Slice s(z) = nu_star(Vz + r) over the stored support.
        std::int64_t lo = nu_star.offset(), hi = nu_star.offset() + nu_star.len() - 1;
        std::int64_t zlo = lo - r >= 0 ? (lo - r + V - 1) / V : -((r - lo) / V);
        std::int64_t zhi = hi - r >= 0 ? (hi - r) / V : -((r - hi + V - 1) / V);
        if (zhi < zlo) continue;
        Slice s;
        s.z0 = zlo;
        s.vals.resize(static_cast<std::size_t>(zhi - zlo + 1));
        double trivial = 0.0;
        for (std::int64_t z = zlo; z <= zhi; ++z) {
            double v = nu_star.at(V * z + r);
            s.vals[static_cast<std::size_t>(z - zlo)] = v;
            trivial += std::abs(v);
        }
        // Grid scan with deterministic blockwise max (ties -> smaller theta).
        std::vector<ScanBest> partial(static_cast<std::size_t>((G + 4095) / 4096));
        parallel_blocks(G, 4096, [&](std::int64_t b, std::int64_t klo, std::int64_t khi) {
            ScanBest local;
            for (std::int64_t k = klo; k < khi; ++k) {
                double theta = static_cast<double>(k) / static_cast<double>(G);
                double a = std::abs(s.eval(theta));
                if (a > local.abs) {
                    local.abs = a;
                    local.theta = theta;
                }
            }
            partial[static_cast<std::size_t>(b)] = local;
        });
        ScanBest grid_best;
        for (const auto& p : partial)
            if (p.abs > grid_best.abs || (p.abs == grid_best.abs && p.theta < grid_best.theta))
                grid_best = p;
        double step = 1.0 / static_cast<double>(G);
        double theta_ref = golden_refine(s, grid_best.theta - step, grid_best.theta + step);
        double abs_ref = std::abs(s.eval(theta_ref));
        if (abs_ref < grid_best.abs) {
            abs_ref = grid_best.abs;
            theta_ref = grid_best.theta;
        }
        if (abs_ref > best.abs) {
            best.abs = abs_ref;
            best.theta = theta_ref;
            best.r = r;
            trivial_at_best = trivial;
        }
    }
    rep.max_abs = std::max(0.0, best.abs);
    rep.argmax_theta = frac_mod1(best.theta);
    rep.argmax_r = best.r;
    rep.trivial_bound = trivial_at_best;
    return rep;
}

UniformityReport uniformity_scan(const WTrickContext& ctx, std::int64_t N, std::int64_t V,
                                 std::int64_t grid_mult) {
    // V must be a nonnegative integer power of W.
    BigInt v(V), W = ctx.W;
    if (W == 1) {
        if (V != 1) throw ArgError("uniformity_scan: V must be a power of W");
    } else {
        while (v > 1 && v % W == 0) v /= W;
        if (v != 1) throw ArgError("uniformity_scan: V must be a power of W");
    }
    Weight star = weight_nu_star(ctx, N);
    return uniformity_scan_weight(star, N, V, grid_mult);
}

}  // namespace cornerlab
