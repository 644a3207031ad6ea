#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/grid.hpp"
#include "cornerlab/polynomial.hpp"
#include "cornerlab/weights.hpp"

namespace cornerlab {

// Point set in [n]^2 with packed-row storage for fast corner counting.
class PointSet2D {
public:
    PointSet2D() : n_(0) {}
    explicit PointSet2D(std::int64_t n);

    std::int64_t n() const { return n_; }
    std::int64_t size() const { return count_; }
    double density() const {
        return static_cast<double>(count_) / (static_cast<double>(n_) * static_cast<double>(n_));
    }

    bool has(std::int64_t x, std::int64_t y) const {
        if (x < 0 || y < 0 || x >= n_ || y >= n_) return false;
        return (rows_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x >> 6)] >>
                (x & 63)) & 1;
    }
    void insert(std::int64_t x, std::int64_t y);

    std::vector<std::pair<std::int64_t, std::int64_t>> points() const;
    GridFn to_grid() const;

    // sum_y popcount(row_y & (row_y >> t) & row_{y+t}) for one shift t >= 0;
    // general t handled by the caller via symmetry.
    std::int64_t corners_at_shift(std::int64_t t) const;

private:
    std::int64_t n_ = 0;
    std::int64_t count_ = 0;
    std::int64_t words_ = 0;
    std::vector<std::vector<std::uint64_t>> rows_;
};

enum class SetKind { kRandom, kDiagonalFree, kFile };

// random: Bernoulli(density) per cell, seeded. diagonal-free: {(x,y): x+2y in S}
// for a greedily built 3-AP-free S (corner-free by the projection x+2y).
PointSet2D generate_set(SetKind kind, std::int64_t n, double density, std::uint64_t seed,
                        const std::string& path = "");

// Exact count of (x,y,z) with the three corner points in A and z in the
// admissible range ([N] for linear P, [(N/lead)^{1/deg}] otherwise).
std::int64_t count_corners(const PointSet2D& A, const IntPoly& P, bool nontrivial_only);

struct VarnavidesReport {
    std::int64_t good_pairs = 0;
    bool coverage_check = false;  // sum_u |lambda(d,u)| == M^2 |A| for every d
    std::int64_t corner_lower_bound = 0;
    std::vector<std::int64_t> good_per_d;  // X(d) for d = 1..d_max
    std::int64_t d_max = 0;
};

VarnavidesReport varnavides_subsample(const PointSet2D& A, std::int64_t M);

struct CompareRow {
    double density = 0.0;
    std::uint64_t seed = 0;
    std::string context_label;
    double lambda_w = 0.0;
    double lambda_model = 0.0;
    double lambda_star = 0.0;
    double star_two_path_error = 0.0;
    double star_over_n2 = 0.0;
    // Same difference with the trivial diagonal dropped: z with p_tilde(z)=0
    // on the sieved side, the z=0 term on the model side.
    double lambda_star_nontrivial = 0.0;
    double star_over_n2_nontrivial = 0.0;
};

struct CompareStudy {
    std::vector<CompareRow> rows;
    double uniformity_max_abs = 0.0;
    double uniformity_trivial = 0.0;
};

// Random sets at the given densities/seeds; all operators evaluated from one
// exact configuration profile per set.
CompareStudy compare_study(const WTrickContext& ctx, std::int64_t N,
                           const std::vector<double>& densities,
                           const std::vector<std::uint64_t>& seeds,
                           bool with_uniformity_scan = false, std::int64_t grid_mult = 4);

struct SmoothedWeightReport {
    Weight nu_eps;
    double l1_distance = 0.0;       // sum |nu_eps - nu|
    double l1_ratio = 0.0;          // l1 / (eps^{1/d} N)
    double lipschitz = 0.0;         // max |nu_eps(z+1) - nu_eps(z)|
    double lipschitz_ratio = 0.0;   // lipschitz * eps^3 * N
    std::int64_t equal_from = 0;    // nu_eps == nu exactly on [equal_from, equal_to]
    std::int64_t equal_to = 0;
};

// Cut-off weight: the ramped version of nu that vanishes near the endpoints
// of [N] (up-ramp on [eps N, 2 eps N], down-ramp on [(1-eps)N-1, N-1]).
SmoothedWeightReport smoothed_weight(std::int64_t N, int d, double eps);

struct SarkozyReport {
    double poly_correlation = 0.0;     // |sum_x E_{z in [K]} f0(x) f1(x + Q(z))|
    std::int64_t best_q = 1;
    double best_linear_correlation = 0.0;  // max_q sum_x |E_{z in [N']} f1(x + q z)|
    std::int64_t n_prime = 0;
    std::vector<double> per_q;         // scan values for q = 1..q_max
};

SarkozyReport sarkozy_check(const LineFn& f0, const LineFn& f1, const IntPoly& Q, std::int64_t N,
                            std::int64_t q_max = 8, std::int64_t n_prime = 0);

struct FractionComparisonReport {
    double composed_norm = 0.0;  // ||R o p_tilde_{[r,V]}||_{C^inf[(T/V_d)^{1/d}]}
    double direct_norm = 0.0;    // ||R||_{C^inf[T]}
    double ratio = 0.0;          // direct / composed (the realized constant)
    bool both_zero = false;
    bool hypothesis_ok = false;  // every prime of beta_1 beta_d divides W
};

FractionComparisonReport fraction_comparison_report(const RealPoly& R, const WTrickContext& ctx,
                                                    std::int64_t V, std::int64_t r, double T);

}  // namespace cornerlab
