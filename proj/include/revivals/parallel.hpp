#pragma once

#include <cstddef>
#include <functional>

namespace revivals {

/// Number of worker threads used by parallel_for. 0 means hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, count) split into contiguous blocks. body must be
/// safe to call concurrently for distinct i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace revivals
