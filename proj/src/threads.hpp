#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace normesh {

/// Worker count from NORMESH_THREADS (0 or unset picks hardware, capped at 8).
inline int worker_threads() {
    const char* env = std::getenv("NORMESH_THREADS");
    long requested = 0;
    if (env && *env) requested = std::strtol(env, nullptr, 10);
    if (requested > 0) return static_cast<int>(std::min<long>(requested, 64));
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
}

/// Run f(block) for block = 0..nblocks-1 on a fixed worker pool. Block
/// results must not depend on the executing thread, so outputs are identical
/// for any worker count.
template <class F>
void parallel_blocks(size_t nblocks, F&& f) {
    const int nthreads = std::min<size_t>(static_cast<size_t>(worker_threads()), nblocks);
    if (nthreads <= 1) {
        for (size_t b = 0; b < nblocks; ++b) f(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t b = static_cast<size_t>(t); b < nblocks; b += static_cast<size_t>(nthreads)) f(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace normesh
