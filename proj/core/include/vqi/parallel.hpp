#ifndef VQI_PARALLEL_HPP
#define VQI_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace vqi {

// Apply fn(index) for index in [0, count) across `jobs` threads. Results
// must be written into pre-sized slots by index, which keeps output
// independent of the degree of parallelism.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = std::min<std::size_t>(jobs, count);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace vqi

#endif  // VQI_PARALLEL_HPP
