#pragma once

#include <cstdint>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/grid.hpp"

namespace cornerlab {

// Unnormalized DFTs of a complex buffer, length n kept.
//   sign = +1:  out[k] = sum_j in[j] e(+jk/n)
//   sign = -1:  out[k] = sum_j in[j] e(-jk/n)
std::vector<cplx> fft(const std::vector<cplx>& in, int sign);

// f_hat(k/M) = sum_x f(x) e(kx/M) for k in [M]; requires M >= 3*len.
std::vector<cplx> dft_line(const LineFn& f, std::int64_t M);

// All-lag correlation c(h) = sum_x a(x) * conj(b(x+h)) for
// h in [-(nb-1), na-1], computed by FFT. Returned as {offset, values} with
// values[i] = c(offset + i).
struct Lags {
    std::int64_t offset = 0;
    std::vector<cplx> values;
    cplx at(std::int64_t h) const {
        std::int64_t i = h - offset;
        if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return {0.0, 0.0};
        return values[static_cast<std::size_t>(i)];
    }
};
Lags correlation_all_lags(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace cornerlab
