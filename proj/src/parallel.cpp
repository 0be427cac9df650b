#include "gevrey/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace gevrey {

namespace {
std::atomic<unsigned> g_workers{0};

unsigned default_workers() {
  if (const char* env = std::getenv("GEVREYKIT_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}
}  // namespace

void set_worker_count(unsigned n) { g_workers = n; }

unsigned worker_count() {
  unsigned w = g_workers.load();
  return w == 0 ? default_workers() : w;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  unsigned w = std::min<std::size_t>(worker_count(), n);
  if (w <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(w - 1);
  for (unsigned t = 1; t < w; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gevrey
