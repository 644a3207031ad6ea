#include "cornerlab/fourier.hpp"

#include <map>
#include <mutex>

#include <fftw3.h>

namespace cornerlab {

namespace {

std::mutex g_fft_mutex;
std::map<std::pair<std::int64_t, int>, fftw_plan> g_plans;

fftw_plan plan_for(std::int64_t n, int sign) {
    auto key = std::make_pair(n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    std::vector<cplx> tmp(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(tmp.data()),
                                   reinterpret_cast<fftw_complex*>(tmp.data()),
                                   sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_plans.emplace(key, p);
    return p;
}

// Smooth (2^a 3^b 5^c) length >= n, to keep FFTW away from large-prime plans.
std::int64_t smooth_length(std::int64_t n) {
    if (n <= 1) return 1;
    std::int64_t best = -1;
    for (std::int64_t p2 = 1; p2 < 4 * n; p2 *= 2) {
        for (std::int64_t p23 = p2; p23 < 4 * n; p23 *= 3) {
            for (std::int64_t v = p23; v < 4 * n; v *= 5) {
                if (v >= n && (best < 0 || v < best)) best = v;
            }
        }
    }
    return best;
}

}  // namespace

std::vector<cplx> fft(const std::vector<cplx>& in, int sign) {
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    std::vector<cplx> out(in.size());
    std::vector<cplx> buf = in;
    fftw_plan p = plan_for(static_cast<std::int64_t>(in.size()), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<cplx> dft_line(const LineFn& f, std::int64_t M) {
    if (M < 3 * f.len())
        throw ArgError("dft_line: M must be at least 3*len (no-wraparound margin)");
    std::vector<cplx> buf(static_cast<std::size_t>(M), cplx{0.0, 0.0});
    // Indices shifted so the FFT sees positions 0..len-1; the offset becomes a
    // twiddle factor e(k*offset/M) applied after the transform.
    for (std::int64_t i = 0; i < f.len(); ++i) buf[static_cast<std::size_t>(i)] = f.values()[i];
    std::vector<cplx> out = fft(buf, +1);
    if (f.offset() != 0) {
        for (std::int64_t k = 0; k < M; ++k)
            out[static_cast<std::size_t>(k)] *=
                e_of(frac_mod1(static_cast<double>(k) * static_cast<double>(f.offset()) /
                               static_cast<double>(M)));
    }
    return out;
}

Lags correlation_all_lags(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::int64_t na = static_cast<std::int64_t>(a.size());
    const std::int64_t nb = static_cast<std::int64_t>(b.size());
    Lags out;
    out.offset = -(nb - 1);
    if (na == 0 || nb == 0) return out;
    const std::int64_t L = smooth_length(na + nb);
    std::vector<cplx> pa(static_cast<std::size_t>(L), cplx{0.0, 0.0});
    std::vector<cplx> pb(static_cast<std::size_t>(L), cplx{0.0, 0.0});
    std::copy(a.begin(), a.end(), pa.begin());
    std::copy(b.begin(), b.end(), pb.begin());
    std::vector<cplx> fa = fft(pa, -1);
    std::vector<cplx> fb = fft(pb, -1);
    for (std::int64_t k = 0; k < L; ++k)
        fa[static_cast<std::size_t>(k)] *= std::conj(fb[static_cast<std::size_t>(k)]);
    std::vector<cplx> r = fft(fa, +1);
    // r(t)/L = sum_y a(y+t) conj b(y), so c(h) = r(-h mod L)/L.
    out.values.resize(static_cast<std::size_t>(na + nb - 1));
    for (std::int64_t h = -(nb - 1); h <= na - 1; ++h) {
        std::int64_t t = (-h % L + L) % L;
        out.values[static_cast<std::size_t>(h + nb - 1)] =
            r[static_cast<std::size_t>(t)] / static_cast<double>(L);
    }
    return out;
}

}  // namespace cornerlab
