#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace ppk {

/// Worker cap for parallel scans: the PPK_THREADS environment variable,
/// clamped to the hardware concurrency. Defaults to 1.
inline unsigned effective_threads() {
  unsigned want = 1;
  if (const char* env = std::getenv("PPK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) want = static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return want < hw ? want : hw;
}

/// Run fn(chunk) for chunk = 0..n_chunks-1 on up to effective_threads()
/// workers. Chunks are assigned round-robin so callers that collect
/// per-chunk results and concatenate them in chunk order stay deterministic
/// regardless of the worker count.
template <class Fn>
void parallel_chunks(std::size_t n_chunks, Fn&& fn) {
  unsigned workers = effective_threads();
  if (workers <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&fn, w, workers, n_chunks] {
      for (std::size_t c = w; c < n_chunks; c += workers) fn(c);
    });
  for (auto& t : pool) t.join();
}

}  // namespace ppk
