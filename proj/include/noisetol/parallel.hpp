// Copyright 2026 The noisetol Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Minimal fork-join helper for embarrassingly parallel index ranges.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noisetol {

/// Resolves a requested worker count; 0 means hardware concurrency.
[[nodiscard]] inline std::size_t resolve_workers(std::size_t requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/**
 * Calls body(begin, end) over contiguous chunks covering [0, count). Chunks
 * are handed out dynamically to up to `workers` threads. The body must only
 * write to per-index storage; callers reduce afterwards in index order so the
 * result does not depend on the schedule. The first exception thrown by any
 * chunk is rethrown on the calling thread.
 */
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body &&body,
                  std::size_t chunks_per_worker = 4) {
    if (count == 0) {
        return;
    }
    workers = std::min(resolve_workers(workers), count);
    if (workers == 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t n_chunks = std::min(count, workers * chunks_per_worker);
    const std::size_t chunk = (count + n_chunks - 1) / n_chunks;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) {
                return;
            }
            try {
                body(begin, std::min(count, begin + chunk));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace noisetol
