#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gevrey {

// Worker count used by every parallel map. Zero means "not set": the value
// then comes from GEVREYKIT_WORKERS or std::thread::hardware_concurrency.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so results written per index are independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-tree pairwise reduction; the tree depends only on the length.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T acc = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) acc += v[i];
    return acc;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

}  // namespace gevrey
