#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cornerlab/common.hpp"

namespace cornerlab {

using BigInt = boost::multiprecision::cpp_int;

// Integer-coefficient polynomial with arbitrary-precision coefficients;
// coeffs[j] holds the coefficient of z^j.
class IntPoly {
public:
    IntPoly() : coeffs_{0} {}
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly from_i64(std::initializer_list<std::int64_t> coeffs);

    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return degree() < 0; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt coeff(int j) const {
        return j >= 0 && j < static_cast<int>(coeffs_.size()) ? coeffs_[j] : BigInt(0);
    }
    BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

    BigInt eval(const BigInt& z) const;
    std::int64_t eval_i64(std::int64_t z) const;  // throws on overflow

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly negate() const;
    bool operator==(const IntPoly& o) const;

    // Composition with a + b*z.
    IntPoly compose_affine(const BigInt& a, const BigInt& b) const;

    // Text form "c0+c1*z+c2*z^2"; JSON form {"coeffs":[c0,c1,...]}.
    static IntPoly parse(const std::string& text);
    std::string to_string() const;
    std::string to_json() const;

private:
    std::vector<BigInt> coeffs_;
    void trim();
};

// Real-coefficient polynomial, coeffs[j] holds the coefficient of x^j.
struct RealPoly {
    std::vector<double> coeffs;

    RealPoly() : coeffs{0.0} {}
    explicit RealPoly(std::vector<double> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(0.0);
    }
    int degree() const;
    double eval(double x) const;
    static RealPoly parse(const std::string& text);
};

// Q_{[r,V]}(z) = (Q(Vz+r) - Q(r)) / V, exact integer coefficients with zero
// constant term.
IntPoly v_trick_poly(const IntPoly& Q, std::int64_t r, std::int64_t V);

// Product of the primes p < w (strict).
BigInt primorial_below(double w);

// Sieving state around an integer root rho of P: the expansion
// P(rho - t) = beta_d t^d + ... + beta_1 t, the primorial W, and the
// auxiliary polynomial with coefficients beta_j beta_1^{j-2} W^{j-1}
// (zero constant term, linear coefficient exactly 1).
struct WTrickContext {
    IntPoly p;                    // input polynomial (after any sign normalization)
    std::int64_t rho = 0;         // the root, P(rho) = 0
    double w = 0.0;               // sieve threshold
    BigInt W;                     // primorial of primes < w
    std::vector<BigInt> beta;     // beta[j] = beta_{j+1}, j = 0..d-1
    IntPoly p_tilde;              // the auxiliary polynomial
    BigInt W_d;                   // leading coefficient of p_tilde
    int d = 0;                    // degree
    bool sign_flipped = false;    // true if P was replaced by -P to get beta_d > 0

    BigInt beta1() const { return beta.at(0); }
    BigInt beta_d() const { return beta.at(static_cast<std::size_t>(d - 1)); }
};

WTrickContext build_w_trick(const IntPoly& P, std::int64_t rho, double w);

// Leading coefficient of p_tilde_{[r,V]}; equals W_d * V^{d-1}.
BigInt leading_coeff_vd(const WTrickContext& ctx, std::int64_t V, std::int64_t r);

// gcd(V_d, V_1) == 1 for the coefficients of p_tilde_{[r,V]}. Returns false
// with reason "beta-prime-not-in-W" if some prime factor of beta_1*beta_d
// does not divide W.
struct CoprimalityReport {
    bool ok = false;
    std::string reason;  // empty when ok
    BigInt v_d;
    BigInt v_1;
};
CoprimalityReport gcd_coprimality_check(const WTrickContext& ctx, std::int64_t V, std::int64_t r);

// max_{1<=j<=D} T^j * dist(alpha_j, Z); the constant term is ignored.
double smoothness_norm(const RealPoly& p, double T);

}  // namespace cornerlab
