#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace mordell {

/// Splits [0, count) into `threads` contiguous chunks and runs
/// body(begin, end) on each. Callers write only to disjoint per-index
/// outputs, so results do not depend on the thread count.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t step = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = std::min(count, t * step), e = std::min(count, b + step);
        pool.emplace_back([&, t, b, e] {
            try {
                body(b, e);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

/// Runs body(i) for every i in [0, count), handing out indices dynamically.
/// Each body writes only its own slot, so scheduling cannot change results.
template <typename Body>
void parallel_for_dynamic(std::size_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    parallel_chunks(threads, threads, [&](std::size_t, std::size_t) {
        for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

} // namespace mordell
