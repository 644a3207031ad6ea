#include "cornerlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>

#include "cornerlab/fourier.hpp"

namespace cornerlab {

FejerKernel::FejerKernel(std::int64_t H) : H_(H) {
    if (H <= 0) throw ArgError("FejerKernel: H must be positive");
    // Exact normalization: sum_{|h|<=2H-2} (2H-1-|h|) = (2H-1)^2.
    std::int64_t m = 2 * H - 1;
    std::int64_t acc = m;  // h = 0 term
    for (std::int64_t h = 1; h <= 2 * H - 2; ++h) acc += 2 * (m - h);
    if (acc != m * m)
        throw ComputeError("internal-invariant", "FejerKernel: normalization identity failed");
}

BoxSpec BoxSpec::parse(const std::string& text) {
    BoxSpec spec;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string tok = text.substr(pos, semi == std::string::npos ? std::string::npos
                                                                     : semi - pos);
        if (tok.empty()) throw ArgError("BoxSpec: empty factor");
        BoxFactor f;
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos) throw ArgError("BoxSpec: missing ':halflen'");
        std::string head = tok.substr(0, colon);
        f.half_len = std::stoll(tok.substr(colon + 1));
        if (f.half_len <= 0) throw ArgError("BoxSpec: halflen must be positive");
        std::size_t star = head.find('*');
        std::string dir = star == std::string::npos ? head : head.substr(0, star);
        if (star != std::string::npos) {
            f.step = std::stoll(head.substr(star + 1));
            if (f.step <= 0) throw ArgError("BoxSpec: step must be positive");
        }
        if (dir == "e1")
            f.dir = Direction::e1();
        else if (dir == "e2")
            f.dir = Direction::e2();
        else if (dir == "e2-e1")
            f.dir = Direction::e2_minus_e1();
        else
            throw ArgError("BoxSpec: direction must be e1, e2 or e2-e1");
        spec.factors.push_back(f);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (spec.factors.empty()) throw ArgError("BoxSpec: no factors");
    return spec;
}

std::string BoxSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ';';
        const BoxFactor& f = factors[i];
        if (f.dir == Direction::e1())
            out += "e1";
        else if (f.dir == Direction::e2())
            out += "e2";
        else
            out += "e2-e1";
        if (f.step != 1) out += "*" + std::to_string(f.step);
        out += ":" + std::to_string(f.half_len);
    }
    return out;
}

NormResult NormResult::from_pow(cplx pow, int s) {
    NormResult r;
    r.s = s;
    r.imag_residue = std::abs(pow.imag());
    double re = pow.real();
    if (re < 0.0) {
        r.clamped_residue = -re;
        if (r.clamped_residue > 1e-12)
            std::fprintf(stderr, "box_norm: clamped negative residue %.3e\n", r.clamped_residue);
        re = 0.0;
    }
    r.value_pow = re;
    r.value = re > 0.0 ? std::pow(re, 1.0 / std::ldexp(1.0, s)) : 0.0;
    return r;
}

namespace {

// Dense window over Z (D=1) or Z^2 (D=2); reads outside return 0.
struct DenseFn {
    int D = 2;
    std::int64_t nx = 0, ny = 1;
    std::int64_t ox = 0, oy = 0;
    std::vector<cplx> v;

    cplx at(std::int64_t x, std::int64_t y) const {
        std::int64_t ix = x - ox, iy = y - oy;
        if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) return {0.0, 0.0};
        return v[static_cast<std::size_t>(iy * nx + ix)];
    }

    static DenseFn from_grid(const GridFn& f) {
        DenseFn d;
        d.D = 2;
        d.nx = d.ny = f.n();
        d.v = f.values();
        return d;
    }
    static DenseFn from_line(const LineFn& f) {
        DenseFn d;
        d.D = 1;
        d.nx = f.len();
        d.ny = 1;
        d.ox = f.offset();
        d.v = f.values();
        return d;
    }
};

// g(x) = f(x) * conj f(x + a); same window.
DenseFn delta_shift(const DenseFn& f, std::int64_t ax, std::int64_t ay) {
    DenseFn g = f;
    for (std::int64_t iy = 0; iy < f.ny; ++iy)
        for (std::int64_t ix = 0; ix < f.nx; ++ix) {
            cplx base = f.v[static_cast<std::size_t>(iy * f.nx + ix)];
            g.v[static_cast<std::size_t>(iy * f.nx + ix)] =
                base == cplx{0.0, 0.0}
                    ? cplx{0.0, 0.0}
                    : base * std::conj(f.at(f.ox + ix + ax, f.oy + iy + ay));
        }
    return g;
}

cplx dense_sum(const DenseFn& f) {
    cplx s{0.0, 0.0};
    for (const cplx& x : f.v) s += x;
    return s;
}

cplx box_pow_recursive(const DenseFn& f, const BoxFactor* factors, int count) {
    if (count == 0) return dense_sum(f);
    const BoxFactor& e = factors[0];
    FejerKernel mu(e.half_len);
    cplx acc{0.0, 0.0};
    for (std::int64_t h = -mu.support(); h <= mu.support(); ++h) {
        double w = mu.at(h);
        if (w == 0.0) continue;
        DenseFn g = delta_shift(f, e.step * e.dir.vx * h, e.step * e.dir.vy * h);
        acc += w * box_pow_recursive(g, factors + 1, count - 1);
    }
    return acc;
}

double direct_work_estimate(const DenseFn& f, const BoxSpec& spec) {
    double work = static_cast<double>(f.nx) * static_cast<double>(f.ny);
    for (const BoxFactor& e : spec.factors) work *= static_cast<double>(4 * e.half_len - 3);
    return work;
}

bool axes_only(const BoxSpec& spec) {
    for (const BoxFactor& e : spec.factors)
        if (!(e.dir == Direction::e1() || e.dir == Direction::e2())) return false;
    return true;
}

// FFT path for s=2 with axis directions: A(u,v) through nested correlations.
cplx box_pow_fft_s2(const DenseFn& f, BoxFactor e1, BoxFactor e2) {
    // Normalize so the first factor differences along x.
    bool f1x = e1.dir == Direction::e1();
    bool f2x = e2.dir == Direction::e1();
    if (!f1x && f2x) std::swap(e1, e2);
    f1x = e1.dir == Direction::e1();
    f2x = e2.dir == Direction::e1();

    FejerKernel mu1(e1.half_len), mu2(e2.half_len);

    // Case (e2,e2): transpose to (e1,e1).
    DenseFn base = f;
    if (!f1x && !f2x) {
        DenseFn t;
        t.D = 2;
        t.nx = f.ny;
        t.ny = f.nx;
        t.v.resize(f.v.size());
        for (std::int64_t y = 0; y < t.ny; ++y)
            for (std::int64_t x = 0; x < t.nx; ++x)
                t.v[static_cast<std::size_t>(y * t.nx + x)] =
                    f.v[static_cast<std::size_t>(x * f.nx + y)];
        base = t;
        e1.dir = Direction::e1();
        e2.dir = Direction::e1();
        f1x = f2x = true;
    }

    auto row_vec = [&](std::int64_t y) {
        std::vector<cplx> r(static_cast<std::size_t>(base.nx));
        for (std::int64_t x = 0; x < base.nx; ++x)
            r[static_cast<std::size_t>(x)] = base.v[static_cast<std::size_t>(y * base.nx + x)];
        return r;
    };

    cplx acc{0.0, 0.0};
    if (f1x && !f2x) {
        // (e1, e2): A(u,v) = sum_x autocorrelation in y of g_u(x,.) at lag v,
        // where g_u(x,y) = f(x,y) conj f(x+u,y). The columns are concatenated
        // with >= ny zeros of padding so one correlation covers all of them
        // (cross-column products only appear at lags >= ny+1).
        const std::int64_t stride = 2 * base.ny;
        for (std::int64_t h1 = -mu1.support(); h1 <= mu1.support(); ++h1) {
            double w1 = mu1.at(h1);
            if (w1 == 0.0) continue;
            std::int64_t u = e1.step * h1;
            if (u <= -base.nx || u >= base.nx) continue;
            std::vector<cplx> batch(static_cast<std::size_t>(base.nx * stride), cplx{0.0, 0.0});
            for (std::int64_t x = 0; x < base.nx; ++x) {
                std::int64_t xx = x + u;
                if (xx < 0 || xx >= base.nx) continue;
                for (std::int64_t y = 0; y < base.ny; ++y) {
                    cplx v = base.v[static_cast<std::size_t>(y * base.nx + x)] *
                             std::conj(base.v[static_cast<std::size_t>(y * base.nx + xx)]);
                    batch[static_cast<std::size_t>(x * stride + y)] = v;
                }
            }
            Lags c = correlation_all_lags(batch, batch);
            for (std::int64_t h2 = -mu2.support(); h2 <= mu2.support(); ++h2) {
                double w2 = mu2.at(h2);
                if (w2 == 0.0) continue;
                std::int64_t vv = e2.step * h2;
                if (vv <= -base.ny || vv >= base.ny) continue;
                acc += w1 * w2 * c.at(vv);
            }
        }
        return acc;
    }
    // (e1, e1): per-row s=2 with lags, summed over rows.
    for (std::int64_t h1 = -mu1.support(); h1 <= mu1.support(); ++h1) {
        double w1 = mu1.at(h1);
        if (w1 == 0.0) continue;
        std::int64_t u = e1.step * h1;
        // For each row, g_u = row .* conj(shifted row); A_y(u,v) = corr(g,g)(v).
        std::vector<cplx> Av(static_cast<std::size_t>(2 * base.nx + 1), cplx{0.0, 0.0});
        const std::int64_t v_off = base.nx;
        for (std::int64_t y = 0; y < base.ny; ++y) {
            auto r = row_vec(y);
            std::vector<cplx> g(r.size(), cplx{0.0, 0.0});
            for (std::int64_t x = 0; x < base.nx; ++x) {
                std::int64_t xx = x + u;
                if (xx >= 0 && xx < base.nx)
                    g[static_cast<std::size_t>(x)] =
                        r[static_cast<std::size_t>(x)] *
                        std::conj(r[static_cast<std::size_t>(xx)]);
            }
            Lags c = correlation_all_lags(g, g);
            for (std::int64_t vv = -base.nx; vv <= base.nx; ++vv)
                Av[static_cast<std::size_t>(vv + v_off)] += c.at(vv);
        }
        for (std::int64_t h2 = -mu2.support(); h2 <= mu2.support(); ++h2) {
            double w2 = mu2.at(h2);
            if (w2 == 0.0) continue;
            std::int64_t vv = e2.step * h2;
            if (vv >= -base.nx && vv <= base.nx)
                acc += w1 * w2 * Av[static_cast<std::size_t>(vv + v_off)];
        }
    }
    return acc;
}

// FFT path for D=1, s=2.
cplx box_pow_fft_line_s2(const DenseFn& f, const BoxFactor& e1, const BoxFactor& e2) {
    FejerKernel mu1(e1.half_len), mu2(e2.half_len);
    cplx acc{0.0, 0.0};
    std::vector<cplx> base = f.v;
    for (std::int64_t h1 = -mu1.support(); h1 <= mu1.support(); ++h1) {
        double w1 = mu1.at(h1);
        if (w1 == 0.0) continue;
        std::int64_t u = e1.step * h1;
        std::vector<cplx> g(base.size(), cplx{0.0, 0.0});
        for (std::int64_t x = 0; x < f.nx; ++x) {
            std::int64_t xx = x + u;
            if (xx >= 0 && xx < f.nx)
                g[static_cast<std::size_t>(x)] =
                    base[static_cast<std::size_t>(x)] * std::conj(base[static_cast<std::size_t>(xx)]);
        }
        Lags c = correlation_all_lags(g, g);
        for (std::int64_t h2 = -mu2.support(); h2 <= mu2.support(); ++h2) {
            double w2 = mu2.at(h2);
            if (w2 == 0.0) continue;
            acc += w1 * w2 * c.at(e2.step * h2);
        }
    }
    return acc;
}

NormResult box_norm_dense(const DenseFn& f, const BoxSpec& spec, BoxPath path) {
    if (spec.factors.empty()) throw ArgError("box_norm: empty spec");
    bool fft_ok = spec.s() == 2 && (f.D == 1 || axes_only(spec));
    if (path == BoxPath::kFft && !fft_ok)
        throw ArgError("box_norm: FFT path requires s=2 with axis directions");
    bool use_fft = path == BoxPath::kFft ||
                   (path == BoxPath::kAuto && fft_ok &&
                    direct_work_estimate(f, spec) > 4.0e6);
    cplx pow;
    if (use_fft) {
        pow = f.D == 1 ? box_pow_fft_line_s2(f, spec.factors[0], spec.factors[1])
                       : box_pow_fft_s2(f, spec.factors[0], spec.factors[1]);
    } else {
        check_budget(direct_work_estimate(f, spec), "box_norm");
        pow = box_pow_recursive(f, spec.factors.data(), spec.s());
    }
    return NormResult::from_pow(pow, spec.s());
}

}  // namespace

NormResult box_norm(const GridFn& f, const BoxSpec& spec, BoxPath path) {
    return box_norm_dense(DenseFn::from_grid(f), spec, path);
}

NormResult box_norm_line(const LineFn& f, const BoxSpec& spec, BoxPath path) {
    return box_norm_dense(DenseFn::from_line(f), spec, path);
}

namespace {

cplx unnorm_pow_recursive(const DenseFn& f, const Direction* dirs, int count) {
    if (count == 0) return dense_sum(f);
    const Direction& v = dirs[0];
    std::int64_t hmax = std::numeric_limits<std::int64_t>::max();
    if (v.vx != 0) hmax = std::min<std::int64_t>(hmax, (f.nx - 1) / std::llabs(v.vx));
    if (v.vy != 0) hmax = std::min<std::int64_t>(hmax, (f.ny - 1) / std::llabs(v.vy));
    cplx acc{0.0, 0.0};
    for (std::int64_t h = -hmax; h <= hmax; ++h) {
        DenseFn g = delta_shift(f, v.vx * h, v.vy * h);
        acc += unnorm_pow_recursive(g, dirs + 1, count - 1);
    }
    return acc;
}

double unnorm_work(const DenseFn& f, const std::vector<Direction>& dirs) {
    double work = static_cast<double>(f.nx) * static_cast<double>(f.ny);
    for (const Direction& v : dirs) {
        std::int64_t hmax = std::numeric_limits<std::int64_t>::max();
        if (v.vx != 0) hmax = std::min<std::int64_t>(hmax, (f.nx - 1) / std::llabs(v.vx));
        if (v.vy != 0) hmax = std::min<std::int64_t>(hmax, (f.ny - 1) / std::llabs(v.vy));
        work *= static_cast<double>(2 * hmax + 1);
    }
    return work;
}

}  // namespace

NormResult unnormalized_box_norm(const GridFn& f, const std::vector<Direction>& dirs) {
    if (dirs.empty()) throw ArgError("unnormalized_box_norm: no directions");
    DenseFn d = DenseFn::from_grid(f);
    check_budget(unnorm_work(d, dirs), "unnormalized_box_norm");
    return NormResult::from_pow(unnorm_pow_recursive(d, dirs.data(), static_cast<int>(dirs.size())),
                                static_cast<int>(dirs.size()));
}

NormResult unnormalized_box_norm_line(const LineFn& f, int s) {
    if (s < 1) throw ArgError("unnormalized_box_norm_line: s must be positive");
    if (s == 2) {
        // ||f||_{U^2}^4 = sum_h |c(h)|^2 with c the autocorrelation.
        Lags c = correlation_all_lags(f.values(), f.values());
        double acc = 0.0;
        for (const cplx& v : c.values) acc += std::norm(v);
        return NormResult::from_pow(cplx{acc, 0.0}, 2);
    }
    DenseFn d = DenseFn::from_line(f);
    std::vector<Direction> dirs(static_cast<std::size_t>(s), Direction::e1());
    check_budget(unnorm_work(d, dirs), "unnormalized_box_norm_line");
    return NormResult::from_pow(unnorm_pow_recursive(d, dirs.data(), s), s);
}

NormResult gowers_norm_line(const LineFn& f, int s, std::int64_t q, std::int64_t H) {
    if (s < 1) throw ArgError("gowers_norm_line: s must be positive");
    BoxSpec spec;
    spec.factors.assign(static_cast<std::size_t>(s), BoxFactor{Direction::e1(), q, H});
    return box_norm_line(f, spec);
}

BoxPropertyReport check_box_properties(const GridFn& f, const BoxSpec& spec, BoxProperty variant,
                                       std::int64_t factor) {
    if (factor < 2) throw ArgError("check_box_properties: factor must be >= 2");
    BoxPropertyReport rep;
    rep.variant = variant;
    const double nd = static_cast<double>(f.n()) * static_cast<double>(f.n());
    const int s = spec.s();

    switch (variant) {
        case BoxProperty::kInductiveFormula: {
            rep.lhs = box_norm(f, spec, BoxPath::kDirect).value_pow;
            // Prime form over the first factor: E_{h,h' in E_1} || D'_{(h,h')} f ||^{2^{s-1}}.
            const BoxFactor& e = spec.factors[0];
            BoxSpec rest;
            rest.factors.assign(spec.factors.begin() + 1, spec.factors.end());
            DenseFn d = DenseFn::from_grid(f);
            cplx acc{0.0, 0.0};
            const std::int64_t m = 2 * e.half_len - 1;
            // D' f can live outside the original window; evaluate on a frame
            // enlarged by the maximal shift.
            const std::int64_t S = e.step * std::max(std::llabs(e.dir.vx), std::llabs(e.dir.vy)) *
                                   (e.half_len - 1);
            for (std::int64_t h = -(e.half_len - 1); h <= e.half_len - 1; ++h)
                for (std::int64_t hp = -(e.half_len - 1); hp <= e.half_len - 1; ++hp) {
                    // D'_{(a,a')} f(x) = f(x+a) conj f(x+a').
                    DenseFn g;
                    g.D = 2;
                    g.nx = g.ny = d.nx + 2 * S;
                    g.ox = g.oy = -S;
                    g.v.assign(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny),
                               cplx{0.0, 0.0});
                    std::int64_t ax = e.step * e.dir.vx * h, ay = e.step * e.dir.vy * h;
                    std::int64_t bx = e.step * e.dir.vx * hp, by = e.step * e.dir.vy * hp;
                    for (std::int64_t iy = 0; iy < g.ny; ++iy)
                        for (std::int64_t ix = 0; ix < g.nx; ++ix) {
                            std::int64_t X = g.ox + ix, Y = g.oy + iy;
                            g.v[static_cast<std::size_t>(iy * g.nx + ix)] =
                                d.at(X + ax, Y + ay) * std::conj(d.at(X + bx, Y + by));
                        }
                    cplx pw = rest.factors.empty()
                                  ? dense_sum(g)
                                  : box_pow_recursive(g, rest.factors.data(), rest.s());
                    acc += pw;
                }
            rep.rhs = (acc / static_cast<double>(m * m)).real();
            rep.realized = rep.rhs == 0.0 ? 1.0 : rep.lhs / rep.rhs;
            rep.holds = std::abs(rep.lhs - rep.rhs) <= 1e-8 * std::max(1.0, std::abs(rep.lhs));
            return rep;
        }
        case BoxProperty::kPermutation: {
            rep.lhs = box_norm(f, spec, BoxPath::kDirect).value_pow;
            BoxSpec rev = spec;
            std::reverse(rev.factors.begin(), rev.factors.end());
            rep.rhs = box_norm(f, rev, BoxPath::kDirect).value_pow;
            rep.holds = std::abs(rep.lhs - rep.rhs) <= 1e-8 * std::max(1.0, std::abs(rep.lhs));
            return rep;
        }
        case BoxProperty::kMonotonicity: {
            if (s < 2) throw ArgError("monotonicity check needs s >= 2");
            BoxSpec head = spec;
            head.factors.pop_back();
            rep.lhs = box_norm(f, head, BoxPath::kDirect).value_pow;
            rep.rhs = box_norm(f, spec, BoxPath::kDirect).value_pow;
            // Sumset constant |[N]^D - E_s| / N^D, reading the set difference
            // as the sumset [N]^D + (-E_s).
            const BoxFactor& e = spec.factors.back();
            std::set<std::pair<std::int64_t, std::int64_t>> sumset;
            for (std::int64_t y = 0; y < f.n(); ++y)
                for (std::int64_t x = 0; x < f.n(); ++x)
                    for (std::int64_t h = -(e.half_len - 1); h <= e.half_len - 1; ++h)
                        sumset.insert({x - e.step * e.dir.vx * h, y - e.step * e.dir.vy * h});
            rep.bound = static_cast<double>(sumset.size()) / nd;
            double delta = rep.lhs / nd;
            rep.realized = rep.rhs > 0.0 ? delta * delta * nd / rep.rhs : 0.0;
            rep.holds = rep.lhs <= 0.0 || rep.rhs > 0.0;
            return rep;
        }
        case BoxProperty::kEnlarging: {
            if (s < 2) throw ArgError("enlarging check needs s >= 2");
            BoxSpec big = spec;
            double ratio = 1.0;
            for (BoxFactor& e : big.factors) {
                double small_sz = static_cast<double>(2 * e.half_len - 1);
                e.half_len *= factor;
                ratio *= static_cast<double>(2 * e.half_len - 1) / small_sz;
            }
            rep.lhs = box_norm(f, spec, BoxPath::kDirect).value;
            rep.rhs = box_norm(f, big, BoxPath::kDirect).value;
            rep.bound = std::pow(ratio, 1.0 / std::ldexp(1.0, s - 1));
            rep.realized = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
            rep.holds = rep.lhs <= rep.bound * rep.rhs + 1e-9;
            return rep;
        }
        case BoxProperty::kTrimming: {
            BoxSpec trimmed = spec;
            for (BoxFactor& e : trimmed.factors) e.half_len = std::max<std::int64_t>(1, e.half_len / factor);
            rep.lhs = box_norm(f, spec, BoxPath::kDirect).value_pow;
            rep.rhs = box_norm(f, trimmed, BoxPath::kDirect).value_pow;
            double delta = rep.lhs / nd;
            double kappa = 1.0 / static_cast<double>(factor);
            double shape = std::pow(delta, std::ldexp(1.0, s)) *
                           std::pow(std::min(1.0, std::pow(delta, std::ldexp(1.0, s)) / kappa),
                                    2.0 * s) * nd;
            rep.realized = shape > 0.0 ? rep.rhs / shape : 0.0;
            rep.holds = rep.lhs <= 0.0 || rep.rhs > 0.0;
            return rep;
        }
        case BoxProperty::kSubProgression: {
            BoxSpec sub = spec;
            for (BoxFactor& e : sub.factors) {
                e.step *= factor;
                e.half_len = std::max<std::int64_t>(1, e.half_len / factor);
            }
            rep.lhs = box_norm(f, spec, BoxPath::kDirect).value_pow;
            rep.rhs = box_norm(f, sub, BoxPath::kDirect).value_pow;
            double delta = rep.lhs / nd;
            rep.realized = delta > 0.0 ? rep.rhs / (delta * nd) : 0.0;
            rep.holds = rep.lhs <= 0.0 || rep.rhs > 0.0;
            return rep;
        }
    }
    throw ArgError("check_box_properties: unknown variant");
}

VdcReport van_der_corput_check(const LineFn& f, std::int64_t N, std::int64_t H, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw ArgError("van_der_corput_check: delta in (0,1]");
    if (!(static_cast<double>(H) <= delta * delta * static_cast<double>(N) / 4.0))
        throw ArgError("van_der_corput_check: requires H <= delta^2 N / 4");
    VdcReport rep;
    cplx mean{0.0, 0.0};
    for (std::int64_t x = 0; x < N; ++x) mean += f.at(x);
    mean /= static_cast<double>(N);
    rep.lhs = std::abs(mean);
    rep.hypothesis_met = rep.lhs >= delta;

    // rhs1 = E_x |E_{h in [±H]} f(x+h)|^2.
    const std::int64_t m = 2 * H - 1;
    double acc1 = 0.0;
    for (std::int64_t x = 0; x < N; ++x) {
        cplx inner{0.0, 0.0};
        for (std::int64_t h = -H + 1; h <= H - 1; ++h) inner += f.at(x + h);
        acc1 += std::norm(inner / static_cast<double>(m));
    }
    rep.rhs1 = acc1 / static_cast<double>(N);

    // rhs2 = sum_h mu_H(h) E_x f(x) conj f(x+h).
    FejerKernel mu(H);
    cplx acc2{0.0, 0.0};
    for (std::int64_t h = -mu.support(); h <= mu.support(); ++h) {
        double w = mu.at(h);
        if (w == 0.0) continue;
        cplx s{0.0, 0.0};
        for (std::int64_t x = 0; x < N; ++x) s += f.at(x) * std::conj(f.at(x + h));
        acc2 += w * s / static_cast<double>(N);
    }
    rep.rhs2 = acc2.real();

    double bar = delta * delta / 4.0 - 1e-12;
    rep.holds = !rep.hypothesis_met || (rep.rhs1 >= bar && rep.rhs2 >= bar);
    return rep;
}

DualDifferenceReport dual_difference_check(const std::vector<GridFn>& slices, const BoxSpec& spec,
                                           int r) {
    if (slices.empty()) throw ArgError("dual_difference_check: no slices");
    if (r < 1 || r > spec.s()) throw ArgError("dual_difference_check: need 1 <= r <= s");
    const std::int64_t n = slices.front().n();
    for (const GridFn& g : slices)
        if (g.n() != n) throw ArgError("dual_difference_check: slice sizes differ");

    DenseFn F;
    F.D = 2;
    F.nx = F.ny = n;
    F.v.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
    const double zinv = 1.0 / static_cast<double>(slices.size());
    for (const GridFn& g : slices)
        for (std::size_t i = 0; i < F.v.size(); ++i) F.v[i] += zinv * g.values()[i];

    DualDifferenceReport rep;
    rep.lhs_pow = box_norm_dense(F, spec, BoxPath::kDirect).value_pow;

    BoxSpec rest;
    rest.factors.assign(spec.factors.begin() + r, spec.factors.end());

    // Enumerate (h_1..h_r) over the kernel supports.
    std::vector<FejerKernel> mus;
    for (int i = 0; i < r; ++i) mus.emplace_back(spec.factors[static_cast<std::size_t>(i)].half_len);
    std::vector<std::int64_t> h(static_cast<std::size_t>(r), 0);
    double rhs = 0.0;

    std::function<void(int, double)> rec = [&](int i, double w) {
        if (i == r) {
            // F^{h}(x) = E_z Delta_{(h_1,0)..(h_r,0)} f_z(x).
            DenseFn acc;
            acc.D = 2;
            acc.nx = acc.ny = n;
            acc.v.assign(F.v.size(), cplx{0.0, 0.0});
            for (const GridFn& gz : slices) {
                DenseFn g = DenseFn::from_grid(gz);
                for (int j = 0; j < r; ++j) {
                    const BoxFactor& e = spec.factors[static_cast<std::size_t>(j)];
                    g = delta_shift(g, e.step * e.dir.vx * h[static_cast<std::size_t>(j)],
                                    e.step * e.dir.vy * h[static_cast<std::size_t>(j)]);
                }
                for (std::size_t k = 0; k < acc.v.size(); ++k) acc.v[k] += zinv * g.v[k];
            }
            cplx pw = rest.factors.empty()
                          ? dense_sum(acc)
                          : box_pow_recursive(acc, rest.factors.data(), rest.s());
            rhs += w * pw.real();
            return;
        }
        for (std::int64_t hh = -mus[static_cast<std::size_t>(i)].support();
             hh <= mus[static_cast<std::size_t>(i)].support(); ++hh) {
            double wi = mus[static_cast<std::size_t>(i)].at(hh);
            if (wi == 0.0) continue;
            h[static_cast<std::size_t>(i)] = hh;
            rec(i + 1, w * wi);
        }
    };
    rec(0, 1.0);

    rep.rhs = rhs;
    const double nd = static_cast<double>(n) * static_cast<double>(n);
    double shape = std::pow(rep.lhs_pow / nd, std::ldexp(1.0, r)) * nd;
    rep.realized_c = shape > 0.0 ? rep.rhs / shape : 0.0;
    rep.holds = rep.lhs_pow <= 0.0 || rep.rhs > 0.0;
    return rep;
}

}  // namespace cornerlab
