#pragma once

#include <cstddef>
#include <functional>

namespace swiftnorm {

/// Number of hardware threads, at least 1.
std::size_t default_thread_count();

/// Runs `body(block)` for every block in [0, n_blocks) on up to `threads`
/// workers. Blocks are claimed dynamically, so `body` must only write state
/// owned by its block. Exceptions are rethrown on the calling thread.
void parallel_for_blocks(std::size_t n_blocks, std::size_t threads,
                         const std::function<void(std::size_t)>& body);

/// Splits [0, n) into contiguous chunks of `grain` and calls `body(begin, end)`.
void parallel_for_range(std::size_t n, std::size_t grain, std::size_t threads,
                        const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace swiftnorm
