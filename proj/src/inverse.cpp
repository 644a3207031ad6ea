#include "cornerlab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cornerlab/fourier.hpp"
#include "cornerlab/norms.hpp"

namespace cornerlab {

namespace {

// |sum_x f(x) e(-theta x)| with the line's true indices.
double corr_at(const LineFn& f, double theta) {
    cplx s{0.0, 0.0};
    for (std::int64_t i = 0; i < f.len(); ++i) {
        const cplx& v = f.values()[static_cast<std::size_t>(i)];
        if (v == cplx{0.0, 0.0}) continue;
        s += v * e_of(-frac_mod1(theta * static_cast<double>(f.offset() + i)));
    }
    return std::abs(s);
}

double golden_max(const std::function<double(double)>& fn, double lo, double hi, int iters = 60) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = fn(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = fn(c);
        }
    }
    return (a + b) / 2.0;
}

}  // namespace

Witness u1_witness_line(const LineFn& f, std::int64_t N, std::int64_t N_prime) {
    if (N <= 0 || N_prime <= 0) throw ArgError("u1_witness_line: N, N' must be positive");
    Witness w;
    w.kind = "u1";
    BoxSpec spec;
    spec.factors.push_back(BoxFactor{Direction::e1(), 1, N_prime});
    w.norm_pow = box_norm_line(f, spec).value_pow;  // ||f||^2_{[±N']}

    cplx total{0.0, 0.0};
    for (const cplx& v : f.values()) total += v;
    w.correlation = std::abs(total);
    w.implied_delta = w.norm_pow / static_cast<double>(N);

    // Exact consequence of 1-boundedness and support in [N]:
    // |corr|^2 >= (2N'-1)*norm_pow - N(N^2-1)/3 / (2N'-1).
    const double m = static_cast<double>(2 * N_prime - 1);
    const double spread = static_cast<double>(N) *
                          (static_cast<double>(N) * static_cast<double>(N) - 1.0) / 3.0;
    double lower = m * w.norm_pow - spread / m;
    w.direction_ok = w.correlation * w.correlation >= lower - 1e-6 * std::max(1.0, std::abs(lower));
    if (w.implied_delta > 0.0)
        w.realized_constant = w.correlation /
                              (std::pow(w.implied_delta, 0.25) * static_cast<double>(N));
    return w;
}

Witness u2_witness_line(const LineFn& f, std::int64_t M) {
    Witness w;
    w.kind = "u2";
    std::vector<cplx> spectrum = dft_line(f, M);  // F(k) = sum f(x) e(kx/M)
    // |sum f(x) e(-theta x)| at theta = k/M equals |F(M-k mod M)|.
    std::int64_t best_k = 0;
    double best = -1.0;
    for (std::int64_t k = 0; k < M; ++k) {
        double a = std::abs(spectrum[static_cast<std::size_t>((M - k) % M)]);
        if (a > best) {
            best = a;
            best_k = k;
        }
    }
    double step = 1.0 / static_cast<double>(M);
    double theta0 = static_cast<double>(best_k) * step;
    double theta = golden_max([&](double t) { return corr_at(f, t); }, theta0 - step,
                              theta0 + step);
    if (corr_at(f, theta) < best) theta = theta0;
    w.freq = frac_mod1(theta);
    w.correlation = corr_at(f, w.freq);
    // Offset making the correlation real positive: arg of sum f(x) e(-ax).
    cplx s{0.0, 0.0};
    for (std::int64_t i = 0; i < f.len(); ++i)
        s += f.values()[static_cast<std::size_t>(i)] *
             e_of(-frac_mod1(w.freq * static_cast<double>(f.offset() + i)));
    w.phase_offset = frac_mod1(std::arg(s) / (2.0 * kPi));

    w.norm_pow = unnormalized_box_norm_line(f, 2).value_pow;  // ||f||_{U^2}^4
    double l2 = 0.0;
    for (const cplx& v : f.values()) l2 += std::norm(v);
    w.implied_delta = l2 > 0.0 ? w.norm_pow / (l2 * l2) : 0.0;
    // ||f||_{U^2}^4 <= ||f||_2^2 ||f_hat||_inf^2; correlation approximates the sup.
    w.direction_ok = w.norm_pow <= l2 * w.correlation * w.correlation *
                                       (1.0 + 1e-6) + 1e-9;
    if (l2 > 0.0 && w.norm_pow > 0.0)
        w.realized_constant = w.correlation / std::sqrt(w.norm_pow / l2);
    return w;
}

Witness u1xu1_witness(const GridFn& f, const Direction& v1, const Direction& v2) {
    const std::int64_t det = v1.vx * v2.vy - v2.vx * v1.vy;
    if (det != 1 && det != -1)
        throw ComputeError("not-a-basis", "u1xu1_witness: (v1,v2) must be unimodular");
    const std::int64_t N = f.n();
    // Integer inverse of the column matrix [v1 v2]: (m,n) = inv * (x,y).
    const std::int64_t i11 = det * v2.vy, i12 = -det * v2.vx;
    const std::int64_t i21 = -det * v1.vy, i22 = det * v1.vx;
    std::int64_t mlo = 0, mhi = 0, nlo = 0, nhi = 0;
    bool first = true;
    for (std::int64_t cx : {std::int64_t(0), N - 1})
        for (std::int64_t cy : {std::int64_t(0), N - 1}) {
            std::int64_t m = i11 * cx + i12 * cy;
            std::int64_t n = i21 * cx + i22 * cy;
            if (first) {
                mlo = mhi = m;
                nlo = nhi = n;
                first = false;
            }
            mlo = std::min(mlo, m);
            mhi = std::max(mhi, m);
            nlo = std::min(nlo, n);
            nhi = std::max(nhi, n);
        }
    const std::int64_t Ms = mhi - mlo + 1, Ns = nhi - nlo + 1;
    check_budget(static_cast<double>(Ms) * Ns * Ns, "u1xu1_witness");

    auto g = [&](std::int64_t m, std::int64_t n) {
        return f.at(v1.vx * m + v2.vx * n, v1.vy * m + v2.vy * n);
    };
    // dot(n, n') = sum_m g(m,n) conj g(m,n').
    std::vector<std::vector<cplx>> gcols(static_cast<std::size_t>(Ns),
                                         std::vector<cplx>(static_cast<std::size_t>(Ms)));
    for (std::int64_t n = 0; n < Ns; ++n)
        for (std::int64_t m = 0; m < Ms; ++m)
            gcols[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] =
                g(m + mlo, n + nlo);
    auto dot = [&](std::int64_t n, std::int64_t np) {
        cplx s{0.0, 0.0};
        const auto& a = gcols[static_cast<std::size_t>(n)];
        const auto& b = gcols[static_cast<std::size_t>(np)];
        for (std::int64_t m = 0; m < Ms; ++m)
            s += a[static_cast<std::size_t>(m)] * std::conj(b[static_cast<std::size_t>(m)]);
        return s;
    };

    double norm4 = 0.0;
    std::vector<double> T(static_cast<std::size_t>(Ns), 0.0);
    for (std::int64_t np = 0; np < Ns; ++np) {
        double t = 0.0;
        for (std::int64_t n = 0; n < Ns; ++n) t += std::norm(dot(n, np));
        T[static_cast<std::size_t>(np)] = t;
        norm4 += t;
    }
    std::int64_t np_best = 0;
    for (std::int64_t np = 1; np < Ns; ++np)
        if (T[static_cast<std::size_t>(np)] > T[static_cast<std::size_t>(np_best)]) np_best = np;

    // |S| = #{m : v1 m + v2 n' lands in [N]^2}.
    std::int64_t S = 0;
    for (std::int64_t m = 0; m < Ms; ++m) {
        std::int64_t x = v1.vx * (m + mlo) + v2.vx * (np_best + nlo);
        std::int64_t y = v1.vy * (m + mlo) + v2.vy * (np_best + nlo);
        if (x >= 0 && x < N && y >= 0 && y < N) ++S;
    }
    if (S == 0) S = 1;

    Witness w;
    w.kind = "u1xu1";
    w.norm_pow = norm4;
    w.pigeonhole_row = np_best + nlo;
    w.b1 = LineFn(mlo, Ms);
    for (std::int64_t m = 0; m < Ms; ++m)
        w.b1.set(m + mlo, std::conj(gcols[static_cast<std::size_t>(np_best)]
                                         [static_cast<std::size_t>(m)]));
    w.b2 = LineFn(nlo, Ns);
    for (std::int64_t n = 0; n < Ns; ++n)
        w.b2.set(n + nlo, std::conj(dot(n, np_best)) / static_cast<double>(S));
    w.correlation = T[static_cast<std::size_t>(np_best)] / static_cast<double>(S);

    const double n2 = static_cast<double>(N) * static_cast<double>(N);
    w.implied_delta = norm4 / (n2 * n2);
    // Exact: norm4 = sum_{n'} T(n') <= Ns * max T = Ns * |S| * correlation.
    double upper = static_cast<double>(Ns) * static_cast<double>(S) * w.correlation;
    w.direction_ok = norm4 <= upper * (1.0 + 1e-9) + 1e-9;
    w.realized_constant = w.correlation > 0.0 ? norm4 / (n2 * w.correlation) : 0.0;
    return w;
}

Witness u2xu1_witness(const GridFn& f, std::int64_t H) {
    const std::int64_t N = f.n();
    const std::int64_t M = 4 * N;
    check_budget(static_cast<double>(N) * N * M * 8.0, "u2xu1_witness");

    Witness w;
    w.kind = "u2xu1";
    BoxSpec spec;
    spec.factors = {BoxFactor{Direction::e1(), 1, H}, BoxFactor{Direction::e1(), 1, H},
                    BoxFactor{Direction::e2(), 1, H}};
    w.norm_pow = box_norm(f, spec).value_pow;

    // Per pair (y,z): detected frequency and magnitude of the row product
    // r(x) = f(x,y) conj f(x,z).
    std::vector<double> rho(static_cast<std::size_t>(N) * N, 0.0);
    std::vector<double> alpha(static_cast<std::size_t>(N) * N, 0.0);
    for (std::int64_t z = 0; z < N; ++z) {
        for (std::int64_t y = 0; y < N; ++y) {
            LineFn r(0, N);
            bool nonzero = false;
            for (std::int64_t x = 0; x < N; ++x) {
                cplx v = f.at(x, y) * std::conj(f.at(x, z));
                r.set(x, v);
                nonzero = nonzero || v != cplx{0.0, 0.0};
            }
            if (!nonzero) continue;
            Witness row = u2_witness_line(r, M);
            rho[static_cast<std::size_t>(z * N + y)] = row.correlation;
            alpha[static_cast<std::size_t>(z * N + y)] = row.freq;
        }
    }
    std::int64_t z0 = 0;
    double best = -1.0;
    for (std::int64_t z = 0; z < N; ++z) {
        double s = 0.0;
        for (std::int64_t y = 0; y < N; ++y) s += rho[static_cast<std::size_t>(z * N + y)];
        if (s > best) {
            best = s;
            z0 = z;
        }
    }
    w.pigeonhole_row = z0;
    w.correlation = best;
    w.g_line = LineFn(0, N);
    for (std::int64_t x = 0; x < N; ++x) w.g_line.set(x, std::conj(f.at(x, z0)));
    w.a_of_y = PhaseFn(N);
    w.b_of_y = PhaseFn(N);
    for (std::int64_t y = 0; y < N; ++y) {
        double a = alpha[static_cast<std::size_t>(z0 * N + y)];
        w.a_of_y.set(y, a);
        cplx s{0.0, 0.0};
        for (std::int64_t x = 0; x < N; ++x)
            s += f.at(x, y) * std::conj(f.at(x, z0)) * e_of(-frac_mod1(a * static_cast<double>(x)));
        w.b_of_y.set(y, std::arg(s) / (2.0 * kPi));
    }
    const double n2 = static_cast<double>(N) * static_cast<double>(N);
    w.implied_delta = w.norm_pow / n2;
    w.realized_constant = w.implied_delta > 0.0 ? (w.correlation / n2) / w.implied_delta : 0.0;
    w.direction_ok = w.implied_delta <= 1e-9 || w.correlation > 0.0;
    return w;
}

PopularPhaseReport popular_phase_detect(const PhaseFn& a, std::int64_t V_prime, double tol) {
    if (V_prime < 1) throw ArgError("popular_phase_detect: V' must be positive");
    PopularPhaseReport rep;
    for (std::int64_t j = 0; j < V_prime; ++j) {
        std::vector<double> vals;
        for (std::int64_t y = j; y < a.n(); y += V_prime)
            vals.push_back(frac_mod1(static_cast<double>(V_prime) * a.at(y)));
        if (vals.empty()) continue;
        // Circular median by candidate scan.
        double best_cost = -1.0, best_c = 0.0;
        for (double c : vals) {
            double cost = 0.0;
            for (double v : vals) cost += dist_to_z(v - c);
            if (best_cost < 0.0 || cost < best_cost) {
                best_cost = cost;
                best_c = c;
            }
        }
        std::int64_t hits = 0;
        for (double v : vals)
            if (dist_to_z(v - best_c) <= tol) ++hits;
        PhaseClass cls;
        cls.j = j;
        cls.alpha = best_c;
        cls.hit_fraction = static_cast<double>(hits) / static_cast<double>(vals.size());
        rep.classes.push_back(cls);
    }
    return rep;
}

}  // namespace cornerlab
