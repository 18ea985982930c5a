#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "rsg/rng.hpp"

namespace rsg {

// Share of `total` assigned to worker w out of `workers`.
inline long long worker_share(long long total, int workers, int w) {
    long long base = total / workers;
    return base + (w < total % workers ? 1 : 0);
}

// Runs body(rng, count, acc) on each worker with its own substream and returns
// the per-worker accumulators in worker order.
template <class Acc, class Body>
std::vector<Acc> run_workers(int workers, long long total, std::uint64_t seed, Purpose purpose,
                             Body body) {
    if (workers < 1) workers = 1;
    std::vector<Acc> accs(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
    auto task = [&](int w) {
        try {
            Rng rng = substream(seed, static_cast<std::uint64_t>(w), purpose);
            body(rng, worker_share(total, workers, w), accs[static_cast<std::size_t>(w)]);
        } catch (...) {
            errs[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (workers == 1) {
        task(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(task, w);
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return accs;
}

}  // namespace rsg
