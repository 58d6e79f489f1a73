#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace zplot {

inline unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Static range split; results must be merged by the caller in index order so
// output stays identical for every job count.
inline void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned jobs,
                         const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
    if (jobs <= 1 || end - begin < 2) {
        body(begin, end, 0);
        return;
    }
    std::uint64_t span = end - begin;
    if (jobs > span) jobs = static_cast<unsigned>(span);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        std::uint64_t lo = begin + span * w / jobs;
        std::uint64_t hi = begin + span * (w + 1) / jobs;
        pool.emplace_back([&, lo, hi, w] { body(lo, hi, w); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace zplot
