#pragma once

#include <cstdint>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/polynomial.hpp"

namespace cornerlab {

// Real-valued weight on an integer range; values may be negative (the
// difference weight). n records the nominal scale the weight was built at.
class Weight {
public:
    Weight() : n_(0), offset_(0) {}
    Weight(std::int64_t n, std::int64_t offset, std::int64_t len, double fill = 0.0)
        : n_(n), offset_(offset), values_(static_cast<std::size_t>(len), fill) {}

    std::int64_t n() const { return n_; }
    std::int64_t offset() const { return offset_; }
    std::int64_t len() const { return static_cast<std::int64_t>(values_.size()); }

    double at(std::int64_t z) const {
        std::int64_t i = z - offset_;
        if (i < 0 || i >= len()) return 0.0;
        return values_[static_cast<std::size_t>(i)];
    }
    void add(std::int64_t z, double v) { values_[static_cast<std::size_t>(z - offset_)] += v; }
    void set(std::int64_t z, double v) { values_[static_cast<std::size_t>(z - offset_)] = v; }

    double mass() const;      // sum of all values
    double abs_mass() const;  // sum of |values|

    const std::vector<double>& values() const { return values_; }

private:
    std::int64_t n_;
    std::int64_t offset_;
    std::vector<double> values_;
};

// Largest K >= 0 with W_d * K^d <= N (exact integer arithmetic).
std::int64_t scale_k(const BigInt& W_d, int d, std::int64_t N);
std::int64_t scale_k(const WTrickContext& ctx, std::int64_t N);

// nu(z) = d^{-1} (N/(z+1))^{(d-1)/d} on [N].
Weight weight_nu(std::int64_t N, int d);

// nu_tilde(z) = (N/K) * #{z' in [K] : p_tilde(z') = z}, K = scale_k(ctx, N).
Weight weight_nu_tilde(const WTrickContext& ctx, std::int64_t N);

// nu_star = nu_tilde - nu on the union of supports.
Weight weight_nu_star(const WTrickContext& ctx, std::int64_t N);

}  // namespace cornerlab
