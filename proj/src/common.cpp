#include "cornerlab/common.hpp"

#include <cstdlib>
#include <mutex>

namespace cornerlab {

namespace {
std::atomic<std::int64_t> g_budget{[] {
    if (const char* env = std::getenv("CORNERLAB_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::int64_t>(v);
    }
    return static_cast<std::int64_t>(2'000'000'000LL);
}()};

std::atomic<int> g_threads{0};  // 0 = hardware concurrency
}  // namespace

std::int64_t work_budget() { return g_budget.load(); }
void set_work_budget(std::int64_t b) { g_budget.store(b); }

void check_budget(double estimated_ops, const char* where) {
    if (estimated_ops > static_cast<double>(work_budget())) {
        throw ComputeError("work-budget",
                           std::string(where) + ": estimated work " +
                               std::to_string(estimated_ops) + " exceeds budget " +
                               std::to_string(work_budget()));
    }
}

int max_threads() {
    int t = g_threads.load();
    if (t > 0) return t;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_max_threads(int t) { g_threads.store(t); }

void parallel_blocks(std::int64_t n_items, std::int64_t block_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body) {
    if (n_items <= 0) return;
    if (block_size <= 0) block_size = 1;
    const std::int64_t n_blocks = (n_items + block_size - 1) / block_size;
    const int nt = std::min<std::int64_t>(max_threads(), n_blocks);
    if (nt <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b)
            body(b, b * block_size, std::min(n_items, (b + 1) * block_size));
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::int64_t b = next.fetch_add(1);
            if (b >= n_blocks) break;
            body(b, b * block_size, std::min(n_items, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int i = 0; i + 1 < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

cplx blocked_sum(std::int64_t n, const std::function<cplx(std::int64_t)>& term) {
    constexpr std::int64_t kBlock = 1024;
    const std::int64_t n_blocks = n <= 0 ? 0 : (n + kBlock - 1) / kBlock;
    std::vector<cplx> partial(static_cast<std::size_t>(n_blocks), cplx{0.0, 0.0});
    parallel_blocks(n, kBlock, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
        cplx s{0.0, 0.0};
        for (std::int64_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    });
    cplx total{0.0, 0.0};
    for (const cplx& p : partial) total += p;
    return total;
}

}  // namespace cornerlab
