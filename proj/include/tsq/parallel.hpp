#ifndef TSQ_PARALLEL_HPP
#define TSQ_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace tsq {

inline unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Split [lo, hi) into one contiguous chunk per worker and merge the partial
// results in chunk order, so the output is identical for any worker count.
template <typename Partial, typename Work, typename Merge>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned threads,
                     Work work, Merge merge) {
    unsigned t = effective_threads(threads);
    std::uint64_t span = hi > lo ? hi - lo : 0;
    if (t > span) t = span ? (unsigned)span : 1;
    if (t <= 1) {
        Partial part{};
        work(lo, hi, part);
        merge(part);
        return;
    }
    std::vector<Partial> parts(t);
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::uint64_t chunk = span / t, rem = span % t, start = lo;
    for (unsigned i = 0; i < t; ++i) {
        std::uint64_t len = chunk + (i < rem ? 1 : 0);
        std::uint64_t a = start, b = start + len;
        start = b;
        pool.emplace_back([&, i, a, b] { work(a, b, parts[i]); });
    }
    for (auto& th : pool) th.join();
    for (auto& p : parts) merge(p);
}

} // namespace tsq

#endif
