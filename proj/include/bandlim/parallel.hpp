#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace bandlim {

// Worker cap: BANDLIM_THREADS, where 0 or unset means hardware concurrency.
inline int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("BANDLIM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v) < hw ? static_cast<int>(v) : hw;
  }
  return hw;
}

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks so callers
// can keep determinism by writing results into per-index slots and reducing
// sequentially afterwards.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
  if (n <= 0) return;
  int workers = thread_count();
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int base = n / workers, extra = n % workers, start = 0;
  for (int w = 0; w < workers; ++w) {
    int len = base + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, start, len] {
      for (int i = start; i < start + len; ++i) fn(i);
    });
    start += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace bandlim
