#include "swiftnorm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace swiftnorm {

std::size_t default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for_blocks(std::size_t n_blocks, std::size_t threads,
                         const std::function<void(std::size_t)>& body) {
  if (n_blocks == 0) return;
  threads = std::clamp<std::size_t>(threads, 1, n_blocks);
  if (threads == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) body(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_blocks);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void parallel_for_range(std::size_t n, std::size_t grain, std::size_t threads,
                        const std::function<void(std::size_t, std::size_t)>& body) {
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t n_blocks = (n + grain - 1) / grain;
  parallel_for_blocks(n_blocks, threads, [&](std::size_t b) {
    const std::size_t begin = b * grain;
    body(begin, std::min(n, begin + grain));
  });
}

}  // namespace swiftnorm
