#pragma once

#include <cstddef>
#include <functional>

namespace distkit {

/// Worker count used by parallel_for. 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n). Iterations run concurrently on up to
/// thread_count() workers; calls nested inside a worker run serially on that
/// worker. The first exception thrown by any iteration is rethrown after all
/// workers have stopped.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace distkit
