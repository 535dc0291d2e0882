#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fh {

// Thread cap: FHSPEC_THREADS if set, else hardware concurrency.
int max_threads();

// Index-parallel map; results must be written to preallocated slots so the
// outcome is independent of scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int nthreads = std::min<std::size_t>(max_threads(), count);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fh
