#ifndef GDN_PARALLEL_HPP
#define GDN_PARALLEL_HPP

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace gdn {

// Static block partition of [0, n) over at most `threads` workers. Each
// iteration must write only to its own slot; reductions happen afterwards in
// index order, so results do not depend on the schedule.
inline void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (n <= 0) return;
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    const int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

} // namespace gdn

#endif
