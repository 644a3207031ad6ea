#include "cornerlab/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace cornerlab {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0);
    trim();
}

IntPoly IntPoly::from_i64(std::initializer_list<std::int64_t> coeffs) {
    std::vector<BigInt> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.emplace_back(v);
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

int IntPoly::degree() const {
    for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
        if (coeffs_[static_cast<std::size_t>(j)] != 0) return j;
    return -1;
}

BigInt IntPoly::eval(const BigInt& z) const {
    BigInt acc = 0;
    for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
        acc = acc * z + coeffs_[static_cast<std::size_t>(j)];
    return acc;
}

std::int64_t IntPoly::eval_i64(std::int64_t z) const {
    BigInt v = eval(BigInt(z));
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw ComputeError("int-overflow", "polynomial value exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = coeff(static_cast<int>(j)) + o.coeff(static_cast<int>(j));
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + o.negate(); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPoly(std::move(c));
}

IntPoly IntPoly::negate() const {
    std::vector<BigInt> c = coeffs_;
    for (auto& v : c) v = -v;
    return IntPoly(std::move(c));
}

bool IntPoly::operator==(const IntPoly& o) const {
    int d = std::max(degree(), o.degree());
    for (int j = 0; j <= d; ++j)
        if (coeff(j) != o.coeff(j)) return false;
    return true;
}

IntPoly IntPoly::compose_affine(const BigInt& a, const BigInt& b) const {
    // Horner: result = ((c_d * L + c_{d-1}) * L + ...) with L = a + b*z.
    IntPoly L(std::vector<BigInt>{a, b});
    IntPoly acc(std::vector<BigInt>{coeffs_.back()});
    for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j) {
        acc = acc * L;
        acc = acc + IntPoly(std::vector<BigInt>{coeffs_[static_cast<std::size_t>(j)]});
    }
    return acc;
}

namespace {

// Parses one coefficient token like "-12", "3.5" (real mode only) followed by
// an optional "*z^k" / "*z" / "z" part. Shared by IntPoly/RealPoly parsers.
struct Term {
    std::string coeff_text;
    int power = 0;
};

std::vector<Term> split_terms(const std::string& text) {
    std::vector<Term> terms;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    bool first = true;
    while (i < n) {
        int sign = 1;
        if (!first || text[i] == '+' || text[i] == '-') {
            if (i >= n || (text[i] != '+' && text[i] != '-'))
                throw ArgError("polynomial parse: expected + or - between terms");
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        }
        first = false;
        std::string num;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
            num += text[i];
            ++i;
        }
        skip_ws();
        int power = 0;
        bool has_z = false;
        if (i < n && text[i] == '*') {
            ++i;
            skip_ws();
        }
        if (i < n && text[i] == 'z') {
            has_z = true;
            power = 1;
            ++i;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                std::string p;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    p += text[i];
                    ++i;
                }
                if (p.empty()) throw ArgError("polynomial parse: missing exponent");
                power = std::stoi(p);
                skip_ws();
            }
        }
        if (num.empty() && !has_z) throw ArgError("polynomial parse: empty term");
        if (num.empty()) num = "1";
        if (sign < 0) num = "-" + num;
        terms.push_back(Term{num, power});
    }
    if (terms.empty()) throw ArgError("polynomial parse: empty input");
    return terms;
}

}  // namespace

IntPoly IntPoly::parse(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        nlohmann::json j = nlohmann::json::parse(text);
        std::vector<BigInt> c;
        for (const auto& v : j.at("coeffs")) {
            if (v.is_number_integer())
                c.emplace_back(v.get<std::int64_t>());
            else
                c.emplace_back(BigInt(v.get<std::string>()));
        }
        return IntPoly(std::move(c));
    }
    auto terms = split_terms(text);
    int maxp = 0;
    for (const auto& t : terms) maxp = std::max(maxp, t.power);
    std::vector<BigInt> c(static_cast<std::size_t>(maxp) + 1, BigInt(0));
    for (const auto& t : terms) {
        if (t.coeff_text.find('.') != std::string::npos)
            throw ArgError("integer polynomial parse: decimal coefficient");
        c[static_cast<std::size_t>(t.power)] += BigInt(t.coeff_text);
    }
    return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
    std::string out;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (j) out += coeffs_[j] >= 0 ? "+" : "";
        out += coeffs_[j].str();
        if (j == 1) out += "*z";
        if (j >= 2) out += "*z^" + std::to_string(j);
    }
    return out;
}

std::string IntPoly::to_json() const {
    std::string out = "{\"coeffs\":[";
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (j) out += ',';
        out += coeffs_[j].str();
    }
    out += "]}";
    return out;
}

int RealPoly::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (coeffs[static_cast<std::size_t>(j)] != 0.0) return j;
    return -1;
}

double RealPoly::eval(double x) const {
    double acc = 0.0;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        acc = acc * x + coeffs[static_cast<std::size_t>(j)];
    return acc;
}

RealPoly RealPoly::parse(const std::string& text) {
    auto terms = split_terms(text);
    int maxp = 0;
    for (const auto& t : terms) maxp = std::max(maxp, t.power);
    std::vector<double> c(static_cast<std::size_t>(maxp) + 1, 0.0);
    for (const auto& t : terms) c[static_cast<std::size_t>(t.power)] += std::stod(t.coeff_text);
    return RealPoly(std::move(c));
}

IntPoly v_trick_poly(const IntPoly& Q, std::int64_t r, std::int64_t V) {
    if (V <= 0) throw ArgError("v_trick_poly: V must be positive");
    if (r < 0 || r >= V) throw ArgError("v_trick_poly: residue out of [V]");
    IntPoly shifted = Q.compose_affine(BigInt(r), BigInt(V));
    BigInt q_r = Q.eval(BigInt(r));
    std::vector<BigInt> c = shifted.coeffs();
    c[0] -= q_r;
    for (auto& v : c) {
        BigInt quot = v / V;
        if (quot * V != v)
            throw ComputeError("integrality", "v_trick_poly: coefficient not divisible by V");
        v = quot;
    }
    return IntPoly(std::move(c));
}

BigInt primorial_below(double w) {
    BigInt W = 1;
    if (w <= 2.0) return W;
    std::int64_t limit = static_cast<std::int64_t>(std::ceil(w)) + 1;
    std::vector<bool> comp(static_cast<std::size_t>(limit), false);
    for (std::int64_t p = 2; p < limit; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        if (static_cast<double>(p) < w) W *= p;
        for (std::int64_t q = p * p; q < limit; q += p) comp[static_cast<std::size_t>(q)] = true;
    }
    return W;
}

WTrickContext build_w_trick(const IntPoly& P_in, std::int64_t rho, double w) {
    if (P_in.degree() < 2) throw ArgError("build_w_trick: degree must be at least 2");

    IntPoly P = P_in;
    // Expansion around the root with the reflected parameterization:
    //   R(t) = P(rho - t) = beta_d t^d + ... + beta_1 t.
    IntPoly R = P.compose_affine(BigInt(rho), BigInt(-1));
    if (R.coeff(0) != 0) throw ComputeError("not-a-root", "build_w_trick: P(rho) != 0");
    if (R.coeff(1) == 0)
        throw ComputeError("root-multiplicity", "build_w_trick: root has multiplicity >= 2");

    int d = R.degree();
    if (R.leading() < 0) {
        P = P.negate();
        R = R.negate();
    }

    WTrickContext ctx;
    ctx.p = P;
    ctx.sign_flipped = (P_in.coeff(P_in.degree()) != P.coeff(P.degree()));
    ctx.rho = rho;
    ctx.w = w;
    ctx.d = d;
    ctx.W = primorial_below(w);
    ctx.beta.resize(static_cast<std::size_t>(d));
    for (int j = 1; j <= d; ++j) ctx.beta[static_cast<std::size_t>(j - 1)] = R.coeff(j);

    const BigInt b1 = ctx.beta1();
    const BigInt denom = b1 * b1 * ctx.W;
    // p_tilde = R(b1*W*z) / (b1^2*W); divisibility is structural, a nonzero
    // remainder indicates a bug.
    IntPoly dilated = R.compose_affine(BigInt(0), b1 * ctx.W);
    std::vector<BigInt> c = dilated.coeffs();
    for (auto& v : c) {
        BigInt quot = v / denom;
        if (quot * denom != v)
            throw ComputeError("internal-divisibility",
                               "build_w_trick: auxiliary polynomial coefficient not integral");
        v = quot;
    }
    ctx.p_tilde = IntPoly(std::move(c));

    if (ctx.p_tilde.coeff(0) != 0)
        throw ComputeError("internal-invariant", "build_w_trick: nonzero constant term");
    if (ctx.p_tilde.coeff(1) != 1)
        throw ComputeError("internal-invariant", "build_w_trick: linear coefficient != 1");
    ctx.W_d = ctx.p_tilde.coeff(d);
    BigInt expected = ctx.beta_d();
    for (int j = 0; j < d - 2; ++j) expected *= b1;
    for (int j = 0; j < d - 1; ++j) expected *= ctx.W;
    if (ctx.W_d != expected)
        throw ComputeError("internal-invariant", "build_w_trick: leading coefficient mismatch");
    if (ctx.W_d <= 0)
        throw ComputeError("wd-nonpositive",
                           "build_w_trick: leading coefficient of the auxiliary polynomial is "
                           "not positive for this root; pick a different root");
    return ctx;
}

BigInt leading_coeff_vd(const WTrickContext& ctx, std::int64_t V, std::int64_t r) {
    if (V <= 0) throw ArgError("leading_coeff_vd: V must be positive");
    (void)r;  // the leading coefficient of p_tilde_{[r,V]} does not depend on r
    BigInt out = ctx.W_d;
    for (int j = 0; j < ctx.d - 1; ++j) out *= V;
    return out;
}

CoprimalityReport gcd_coprimality_check(const WTrickContext& ctx, std::int64_t V, std::int64_t r) {
    CoprimalityReport rep;
    // Hypothesis: every prime factor of beta_1*beta_d divides W.
    BigInt prod = ctx.beta1() * ctx.beta_d();
    if (prod < 0) prod = -prod;
    BigInt g = boost::multiprecision::gcd(prod, ctx.W);
    while (g > 1) {
        while (prod % g == 0) prod /= g;
        g = boost::multiprecision::gcd(prod, ctx.W);
    }
    if (prod != 1) {
        rep.ok = false;
        rep.reason = "beta-prime-not-in-W";
        return rep;
    }
    IntPoly q = v_trick_poly(ctx.p_tilde, r, V);
    rep.v_d = q.leading();
    rep.v_1 = q.coeff(1);
    BigInt vd = rep.v_d < 0 ? BigInt(-rep.v_d) : rep.v_d;
    BigInt v1 = rep.v_1 < 0 ? BigInt(-rep.v_1) : rep.v_1;
    rep.ok = boost::multiprecision::gcd(vd, v1) == 1;
    return rep;
}

double smoothness_norm(const RealPoly& p, double T) {
    if (T <= 0.0) throw ArgError("smoothness_norm: scale must be positive");
    int D = p.degree();
    if (D < 1) throw ComputeError("degree-zero", "smoothness_norm: degree must be at least 1");
    double best = 0.0;
    double tj = 1.0;
    for (int j = 1; j <= D; ++j) {
        tj *= T;
        best = std::max(best, tj * dist_to_z(p.coeffs[static_cast<std::size_t>(j)]));
    }
    return best;
}

}  // namespace cornerlab
