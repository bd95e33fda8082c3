// SPDX-License-Identifier: Apache-2.0
#include "tiht/parallel.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tiht {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

unsigned worker_count() {
    if (const char* env = std::getenv("TIHT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

// Single-producer queue of task indices; closed once all are enqueued.
class TaskChannel {
public:
    void push(std::size_t i) {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(i);
        }
        ready_.notify_one();
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        ready_.notify_all();
    }

    std::optional<std::size_t> pop() {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [&] { return !queue_.empty() || closed_; });
        if (queue_.empty()) return std::nullopt;
        const std::size_t i = queue_.front();
        queue_.pop_front();
        return i;
    }

    void drain() {
        std::lock_guard lock(mutex_);
        queue_.clear();
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<std::size_t> queue_;
    bool closed_ = false;
};

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task, unsigned workers) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    TaskChannel channel;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (auto i = channel.pop()) {
                try {
                    task(*i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    channel.drain();
                }
            }
        });
    }
    for (std::size_t i = 0; i < n; ++i) channel.push(i);
    channel.close();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace tiht
