#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/grid.hpp"

namespace cornerlab {

// Triangle weight mu_H(h) = (1/(2H-1)) (1 - |h|/(2H-1))_+ ; normalization
// sum_h mu_H(h) = 1 is verified exactly in integer arithmetic at construction.
class FejerKernel {
public:
    explicit FejerKernel(std::int64_t H);
    std::int64_t H() const { return H_; }
    std::int64_t support() const { return 2 * H_ - 2; }  // mu vanishes for |h| > this
    double at(std::int64_t h) const {
        std::int64_t a = std::llabs(h);
        if (a >= 2 * H_ - 1) return 0.0;
        return (1.0 - static_cast<double>(a) / static_cast<double>(2 * H_ - 1)) /
               static_cast<double>(2 * H_ - 1);
    }

private:
    std::int64_t H_;
};

inline double fejer(std::int64_t H, std::int64_t h) { return FejerKernel(H).at(h); }

// One differencing set E = step * dir * [±half_len].
struct BoxFactor {
    Direction dir = Direction::e1();
    std::int64_t step = 1;
    std::int64_t half_len = 1;
};

struct BoxSpec {
    std::vector<BoxFactor> factors;

    int s() const { return static_cast<int>(factors.size()); }
    // Grammar: ";"-separated factors, each "(e1|e2|e2-e1)[*step]:halflen".
    static BoxSpec parse(const std::string& text);
    std::string to_string() const;
};

struct NormResult {
    double value_pow = 0.0;   // the 2^s-th power
    int s = 0;
    double value = 0.0;       // the 2^s-th root
    double imag_residue = 0.0;
    double clamped_residue = 0.0;  // |negative part| removed by the clamp

    static NormResult from_pow(cplx pow, int s);
};

enum class BoxPath { kAuto, kDirect, kFft };

// Fejér-form box norm; the FFT path is available for s = 2 with axis
// directions and must agree with the direct path.
NormResult box_norm(const GridFn& f, const BoxSpec& spec, BoxPath path = BoxPath::kAuto);
NormResult box_norm_line(const LineFn& f, const BoxSpec& spec, BoxPath path = BoxPath::kAuto);

// Unnormalized box norm: differencing parameters range over all of Z
// (truncated to the support, which is exact for compactly supported f).
NormResult unnormalized_box_norm(const GridFn& f, const std::vector<Direction>& dirs);
NormResult unnormalized_box_norm_line(const LineFn& f, int s);

// U^s(E) with E = q*[±H] on the line: s identical factors.
NormResult gowers_norm_line(const LineFn& f, int s, std::int64_t q, std::int64_t H);

// Lemma-style property checks on desk-scale instances.
enum class BoxProperty {
    kInductiveFormula,   // exact
    kPermutation,        // exact
    kMonotonicity,       // direction + realized constant
    kEnlarging,          // explicit constant inequality
    kTrimming,           // direction + realized constant
    kSubProgression,     // direction + realized constant
};

struct BoxPropertyReport {
    BoxProperty variant;
    double lhs = 0.0;       // value_pow or norm, see notes per variant
    double rhs = 0.0;
    double bound = 0.0;     // explicit bound when the inequality carries one
    double realized = 0.0;  // realized constant / ratio
    bool holds = false;
};

// `factor` scales the transformed spec (enlarging/trimming half-lengths,
// sub-progression step).
BoxPropertyReport check_box_properties(const GridFn& f, const BoxSpec& spec, BoxProperty variant,
                                       std::int64_t factor = 2);

struct VdcReport {
    double lhs = 0.0;   // |E_{x in [N]} f|
    double rhs1 = 0.0;  // doubled-h average
    double rhs2 = 0.0;  // Fejér form
    bool hypothesis_met = false;
    bool holds = false;
};

// Both van der Corput conclusions at level delta^2/4; requires H <= delta^2 N/4.
VdcReport van_der_corput_check(const LineFn& f, std::int64_t N, std::int64_t H, double delta);

struct DualDifferenceReport {
    double lhs_pow = 0.0;   // ||F||^{2^s}
    double rhs = 0.0;       // interchanged kernel-weighted sum
    double realized_c = 0.0;
    bool holds = false;
};

// F(x) = E_{z} slices[z](x); moves the first r differencings inside the
// z-average and evaluates the kernel-weighted sum of the remaining norm
// powers of F^{h_1..h_r}.
DualDifferenceReport dual_difference_check(const std::vector<GridFn>& slices,
                                           const BoxSpec& spec, int r);

}  // namespace cornerlab
