#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hypquot {

/// Worker count from HYPQUOT_THREADS, falling back to the hardware count.
int default_worker_count();

namespace detail {
// Chunk size is a function of n only, never of the worker count, so that
// per-chunk partial results (and hence any ordered reduction over them)
// are identical no matter how many threads ran.
inline std::size_t chunk_size_for(std::size_t n) {
    constexpr std::size_t kChunk = 1024;
    return n < kChunk ? (n == 0 ? 1 : n) : kChunk;
}
} // namespace detail

/// Runs body(begin, end) over fixed-size chunks of [0, n) on `workers` threads.
/// Chunk boundaries depend only on n; workers pull chunks from a shared queue.
template <typename Body>
void parallel_chunks(std::size_t n, int workers, Body&& body) {
    if (n == 0) return;
    const std::size_t chunk = detail::chunk_size_for(n);
    const std::size_t chunk_count = (n + chunk - 1) / chunk;
    if (workers <= 1 || chunk_count == 1) {
        for (std::size_t ci = 0; ci < chunk_count; ++ci)
            body(ci * chunk, std::min(n, (ci + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t ci = next.fetch_add(1);
            if (ci >= chunk_count) return;
            body(ci * chunk, std::min(n, (ci + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, chunk_count);
    pool.reserve(spawn - 1);
    for (int t = 1; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

/// Deterministic map/reduce: per-chunk accumulators are combined in chunk
/// order, so the result is bit-identical for any worker count. `map` is
/// map(acc, index); `combine` is combine(acc, acc).
template <typename Acc, typename Map, typename Combine>
Acc parallel_reduce(std::size_t n, int workers, Acc init, Map&& map, Combine&& combine) {
    if (n == 0) return init;
    const std::size_t chunk = detail::chunk_size_for(n);
    const std::size_t chunk_count = (n + chunk - 1) / chunk;
    std::vector<Acc> partial(chunk_count, init);
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
        const std::size_t ci = begin / chunk;
        Acc acc = init;
        for (std::size_t i = begin; i < end; ++i) map(acc, i);
        partial[ci] = acc;
    });
    Acc out = init;
    for (const Acc& acc : partial) combine(out, acc);
    return out;
}

/// Per-worker context variant: ctx = make() once per worker thread, then
/// body(ctx, begin, end) per chunk. Used when a worker needs scratch state
/// that is expensive to build (e.g. a factorized Laplacian).
template <typename Make, typename Body>
void parallel_chunks_ctx(std::size_t n, int workers, Make&& make, Body&& body) {
    if (n == 0) return;
    const std::size_t chunk = detail::chunk_size_for(n);
    const std::size_t chunk_count = (n + chunk - 1) / chunk;
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        auto ctx = make();
        for (;;) {
            const std::size_t ci = next.fetch_add(1);
            if (ci >= chunk_count) return;
            body(ctx, ci * chunk, std::min(n, (ci + 1) * chunk));
        }
    };
    if (workers <= 1 || chunk_count == 1) {
        run();
        return;
    }
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, chunk_count);
    pool.reserve(spawn - 1);
    for (int t = 1; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace hypquot
