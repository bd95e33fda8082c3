// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>

namespace tiht {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Counter-based seed for a path of indices below a master seed. Distinct
// paths give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Worker count: TIHT_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Runs task(i) for i in [0, n) on a pool of worker threads. Tasks are handed
// out through a locked queue; the first exception thrown by a task is
// rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task, unsigned workers = worker_count());

}  // namespace tiht
