#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornerlab/common.hpp"
#include "cornerlab/grid.hpp"

namespace cornerlab {

// Constructive witness for an inverse theorem. The phase payloads describe
// the detected structure of f itself (for a pure phase e(theta x) the
// recovered frequency is theta); the correlation is the inner product of f
// against the conjugate structured object, rotated to be real nonnegative.
struct Witness {
    std::string kind;  // "u1" | "u2" | "u1xu1" | "u2xu1"
    double correlation = 0.0;
    double norm_pow = 0.0;
    double implied_delta = 0.0;
    double realized_constant = 0.0;
    bool direction_ok = false;

    // u2: recovered frequency/offset.
    double freq = 0.0;
    double phase_offset = 0.0;
    // u1xu1: the two structured line factors.
    LineFn b1, b2;
    // u2xu1: g(x), a(y), b(y), and the pigeonholed row.
    LineFn g_line;
    PhaseFn a_of_y, b_of_y;
    std::int64_t pigeonhole_row = 0;
};

// |sum_x f| against ||f||^2_{[±N']}; the proof's crude comparison
// |(2N'-1)||f||^2 - |sum f|^2| <= sum_{x,x' in [N]} |x-x'| / (2N'-1) is
// checked as an exact inequality.
Witness u1_witness_line(const LineFn& f, std::int64_t N, std::int64_t N_prime);

// argmax_theta |sum_x f(x) e(-theta x)| on a grid of M points, refined by
// golden-section search; checked against ||f||_{U^2}^4 <= ||f||_2^2 * corr^2.
Witness u2_witness_line(const LineFn& f, std::int64_t M);

// Pigeonhole witness for the unnormalized norm along a unimodular pair
// (v1, v2): b1(m) = conj f(v1 m + v2 n'), b2(n) the row-average factor.
Witness u1xu1_witness(const GridFn& f, const Direction& v1, const Direction& v2);

// Per-row frequency extraction on f(x,y) conj f(x,z0) followed by the
// pigeonhole in z0; norm side is ||f||^8 along (e1 [±H])^2, e2 [±H].
Witness u2xu1_witness(const GridFn& f, std::int64_t H);

struct PhaseClass {
    std::int64_t j = 0;
    double alpha = 0.0;    // circular median of V' * a_{(j,V')}
    double hit_fraction = 0.0;
};

struct PopularPhaseReport {
    std::vector<PhaseClass> classes;
};

// Detector for near-constant behaviour of V' a_{(j,V')} on each residue class.
PopularPhaseReport popular_phase_detect(const PhaseFn& a, std::int64_t V_prime, double tol);

}  // namespace cornerlab
