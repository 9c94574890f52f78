#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace g17 {

// G17_THREADS overrides the hardware count
inline unsigned worker_count()
{
    if (char const * e = std::getenv("G17_THREADS")) {
        int n = std::atoi(e);
        if (n > 0) return (unsigned)n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// runs fn(i) for i in [0, n); the first exception is rethrown
template <class F>
void parallel_for(int n, F && fn)
{
    unsigned w = std::min<unsigned>(worker_count(), (unsigned)std::max(n, 1));
    if (w <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex m;
    auto work = [&] {
        for (int i; (i = next++) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> ts;
    for (unsigned t = 1; t < w; ++t) ts.emplace_back(work);
    work();
    for (auto & t : ts) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace g17
