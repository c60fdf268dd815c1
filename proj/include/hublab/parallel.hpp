#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hublab {

/// HUBLAB_THREADS if set, otherwise the hardware concurrency.
inline unsigned default_threads() {
    if (const char* env = std::getenv("HUBLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i, worker) for i in [0, count) on up to `threads` workers. Indices are
/// handed out in small chunks; the first exception thrown is rethrown.
template <class Fn>
void parallel_for(size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(1, count))));
    if (threads == 1) {
        for (size_t i = 0; i < count; ++i) fn(i, 0u);
        return;
    }
    constexpr size_t kChunk = 16;
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&](unsigned worker) {
        try {
            while (true) {
                const size_t begin = next.fetch_add(kChunk);
                if (begin >= count) return;
                const size_t end = std::min(count, begin + kChunk);
                for (size_t i = begin; i < end; ++i) fn(i, worker);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hublab
