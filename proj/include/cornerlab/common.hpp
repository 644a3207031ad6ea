#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cornerlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// e(t) = exp(2*pi*i*t)
inline cplx e_of(double t) {
    double a = 2.0 * kPi * t;
    return {std::cos(a), std::sin(a)};
}

// Distance to the nearest integer, ||t||_{R/Z}.
inline double dist_to_z(double t) {
    double f = t - std::floor(t);
    return std::min(f, 1.0 - f);
}

// Representative of t in [0, 1).
inline double frac_mod1(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f = 0.0;  // guard against floor rounding at negative epsilons
    return f;
}

// Computation error carrying a stable machine-readable name, e.g. "N-too-small",
// "work-budget", "not-a-root". Maps to CLI exit code 1.
class ComputeError : public std::runtime_error {
public:
    ComputeError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Argument/precondition violation. Maps to CLI exit code 2.
class ArgError : public std::invalid_argument {
public:
    explicit ArgError(const std::string& what) : std::invalid_argument(what) {}
};

// ---------------------------------------------------------------------------
// Work budget (fused multiply-add count) for the norm loops.
// ---------------------------------------------------------------------------

std::int64_t work_budget();
void set_work_budget(std::int64_t b);
void check_budget(double estimated_ops, const char* where);

// ---------------------------------------------------------------------------
// Deterministic parallelism.
//
// Ranges are cut into fixed-size blocks; worker threads claim blocks
// dynamically but every block's partial result is stored by block index and
// combined in index order, so the result is independent of the thread count.
// ---------------------------------------------------------------------------

int max_threads();
void set_max_threads(int t);

void parallel_blocks(std::int64_t n_items, std::int64_t block_size,
                     const std::function<void(std::int64_t block_index, std::int64_t begin,
                                              std::int64_t end)>& body);

// Blocked deterministic sum of term(i) for i in [0, n).
cplx blocked_sum(std::int64_t n, const std::function<cplx(std::int64_t)>& term);

}  // namespace cornerlab
