#pragma once

#include <cstddef>
#include <functional>

namespace eqlab {

// Worker count: EQLAB_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads, indices interleaved.
// The first exception thrown by any task is rethrown on the caller's thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eqlab
