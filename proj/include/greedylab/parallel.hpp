#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace greedylab {

/// Worker-count policy: an explicit request wins, then GREEDYLAB_THREADS,
/// then single-threaded. Results never depend on the answer; this only
/// trades wall time.
inline unsigned resolve_threads(unsigned requested = 0) {
    auto clamp = [](long v) -> unsigned {
        return static_cast<unsigned>(std::min(v, 64l));
    };
    if (requested > 0) return clamp(static_cast<long>(requested));
    if (const char* env = std::getenv("GREEDYLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return clamp(v);
    }
    return 1;
}

/// Runs fn(t) for t in [0, count) striped across the workers. fn must write
/// only into its own trial's slot; with that discipline the outcome is
/// identical for every worker count. The lowest-trial exception wins, so
/// even failure order is schedule-independent.
template <class Fn>
void parallel_trials(std::uint64_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, threads);
    if (count < 2 || threads == 1) {
        for (std::uint64_t t = 0; t < count; ++t) fn(t);
        return;
    }
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, count));
    std::vector<std::pair<std::uint64_t, std::exception_ptr>> errors(
        threads, {~std::uint64_t{0}, nullptr});
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) {
        pool.emplace_back([&, tid] {
            for (std::uint64_t t = tid; t < count; t += threads) {
                try {
                    fn(t);
                } catch (...) {
                    errors[tid] = {t, std::current_exception()};
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    const std::pair<std::uint64_t, std::exception_ptr>* first = nullptr;
    for (const auto& e : errors)
        if (e.second && (!first || e.first < first->first)) first = &e;
    if (first) std::rethrow_exception(first->second);
}

}  // namespace greedylab
