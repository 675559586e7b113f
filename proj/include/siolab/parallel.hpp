#pragma once

#include <cstddef>
#include <functional>

namespace siolab {

// Worker count: SIOLAB_THREADS if set, else hardware concurrency.
int thread_count();

// Calls body(i) for i in [0, n), split into contiguous blocks across threads.
// Each index is handled by exactly one thread, so per-index results do not
// depend on the thread layout.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace siolab
