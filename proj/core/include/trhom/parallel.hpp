#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace trhom {

// Runs fn(begin, end) over disjoint contiguous chunks of [0, count) on up to
// `workers` threads (0 = hardware concurrency). Chunk boundaries depend only
// on count and the worker count actually spawned, and every index is computed
// by exactly one invocation, so results written per-index are identical for
// any worker count. The first exception thrown by a chunk is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (count == 0) return;
  unsigned w = workers == 0 ? std::thread::hardware_concurrency() : workers;
  if (w == 0) w = 1;
  if (w > count) w = static_cast<unsigned>(count);
  if (w == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(w);
  const std::size_t chunk = (count + w - 1) / w;
  for (unsigned t = 0; t < w; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, &errors, t, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace trhom
