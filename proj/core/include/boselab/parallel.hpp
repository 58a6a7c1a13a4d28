#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace boselab {

// Worker count policy: the BOSELAB_WORKERS environment variable, clamped to
// [1, hardware_concurrency]. Unset or unparsable means 1 (serial), which
// keeps default runs trivially deterministic in their work order.
inline int worker_count() {
  const char* env = std::getenv("BOSELAB_WORKERS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  const long hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::min(v, hw));
}

// Static block partition of [0, n) across worker_count() threads. body(i) must
// be safe to run concurrently for distinct i; results must be written to
// per-index slots so the output is independent of scheduling.
inline void parallel_for(long n, const std::function<void(long)>& body) {
  const int workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = w * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace boselab
