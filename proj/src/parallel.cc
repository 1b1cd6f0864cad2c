#include "bellcorr/parallel.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bellcorr {

int worker_count() {
    if (const char *env = std::getenv("BELLCORR_THREADS")) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec == std::errc() && *ptr == '\0' && value > 0) {
            return value;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(size_t count, const std::function<void(size_t)> &body) {
    size_t workers = std::min<size_t>(static_cast<size_t>(worker_count()), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run_block = [&](size_t begin, size_t end) {
        try {
            for (size_t i = begin; i < end; i++) {
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    size_t block = (count + workers - 1) / workers;
    for (size_t w = 1; w < workers; w++) {
        size_t begin = std::min(count, w * block);
        size_t end = std::min(count, begin + block);
        threads.emplace_back(run_block, begin, end);
    }
    run_block(0, std::min(count, block));
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bellcorr
