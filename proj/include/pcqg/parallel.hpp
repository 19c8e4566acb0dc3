#pragma once

#include <cstddef>
#include <functional>

namespace pcqg {

// Worker count from PCQG_THREADS, else hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n); each index is handled exactly once.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pcqg
