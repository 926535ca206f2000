#pragma once
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace rscc {

// run fn(begin, end) over fixed-size chunks of [0, n). chunk boundaries depend only
// on n and chunk, never on the worker count, and workers write to disjoint output,
// so results are identical for any number of workers. workers <= 0 means one per core.
inline void parallel_chunks(std::int64_t n, int workers, std::int64_t chunk,
                            const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (chunk <= 0) chunk = 1;
    const std::int64_t nChunks = (n + chunk - 1) / chunk;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || nChunks == 1) {
        for (std::int64_t c = 0; c < nChunks; ++c)
            fn(c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::int64_t> nextChunk{0};
    auto body = [&] {
        for (;;) {
            const std::int64_t c = nextChunk.fetch_add(1);
            if (c >= nChunks) return;
            fn(c * chunk, std::min(n, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(std::min<std::int64_t>(workers, nChunks));
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

// worker count from the RSCC_THREADS environment variable; fallback when unset
int env_workers(int fallback = 1);

} // namespace rscc
