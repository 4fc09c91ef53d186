#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cstgeo {

// Upper bound on worker threads used by parallel_for. Results never depend on
// it: work is split by output index and every reduction is a fixed tree.
void set_thread_count(unsigned n);
unsigned thread_count();

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += workers) fn(k);
    });
  }
}

}  // namespace cstgeo
